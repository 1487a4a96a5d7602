// Copyright 2026 The ppsq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ppsq/demod.hpp"

namespace ppsq {

/// One irreducible block: a connected component of the bipartite row/column
/// incidence graph over nonzero quantized entries.  Rows and columns are kept
/// ascending by original index.
struct Block {
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;

    std::size_t size() const { return rows.size(); }
};

/// Blocks ordered by smallest row index.  Concatenating the blocks' rows and
/// columns gives the permutations that bring the matrix to block-diagonal
/// form.
struct BlockDecomposition {
    std::vector<Block> blocks;

    std::vector<std::size_t> row_permutation() const;
    std::vector<std::size_t> column_permutation() const;
};

/// Throws NonReconstructible when a component pairs unequal numbers of fields
/// and sequences.
BlockDecomposition decompose_blocks(const ModeStatusMatrix& matrix);

/// The l cyclic rotations of a block's column order.  rotations[r][i] is the
/// local column position assigned to local row i under rotation r; rotation r
/// is the column list rotated left by r.
struct PermutationSchedule {
    std::size_t l = 0;
    std::vector<std::vector<std::size_t>> rotations;
};

/// base_rotation rotates the starting column order; the schedule is the full
/// cyclic orbit, so any base produces the same set of assignments.
PermutationSchedule schedule_permutations(const Block& block, std::size_t base_rotation = 0);

/// Dense 2^n amplitude vector, basis ordered with the first field as the most
/// significant bit.
struct StateVector {
    std::size_t n = 0;
    std::vector<Complex> amplitudes;
    std::vector<std::string> qubit_order;
};

enum class ReconstructionMode { binary, amplitude };

ReconstructionMode parse_mode(const std::string& name);
std::string mode_name(ReconstructionMode mode);

struct BlockReconstruction {
    StateVector state;                       // over the block's fields only
    std::vector<bool> rotation_contributed;  // one flag per cyclic rotation
};

/// Sums one product term per cyclic rotation: the i-th factor is the mode
/// status of block row i under the column that rotation assigns to it.
/// Binary mode multiplies the 0/1 indicators; amplitude mode multiplies the
/// raw coefficients.  Rotations containing an all-zero status contribute
/// nothing; the result is L2-normalized at the end.  Throws when every
/// rotation vanishes.
BlockReconstruction reconstruct_block(const Block& block, const ModeStatusMatrix& matrix,
                                      ReconstructionMode mode, std::size_t base_rotation = 0);

/// Tensor product of the per-block states with the qubit order restored to
/// the original field order.
StateVector reconstruct(const ModeStatusMatrix& matrix, ReconstructionMode mode);

struct MeasurementHistogram {
    std::map<std::string, std::uint64_t> counts;
    std::size_t shots = 0;
    std::uint64_t seed = 0;
};

/// Per shot and per block: pick one viable rotation uniformly, then for each
/// field pick uniformly among the modes its status marks present.  Each shot
/// draws from its own RNG substream, so results are deterministic in the
/// seed and independent of evaluation order.
MeasurementHistogram sample_measurement(const ModeStatusMatrix& matrix, std::uint64_t seed,
                                        std::size_t shots);

}  // namespace ppsq
