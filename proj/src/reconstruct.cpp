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

#include "ppsq/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ppsq/errors.hpp"

namespace ppsq {

namespace {

// Reconstruction materializes 2^n amplitudes; preparation and demodulation
// have no such limit.
constexpr std::size_t kMaxReconstructQubits = 24;

double l2_norm(const std::vector<Complex>& v) {
    double sum = 0.0;
    for (const Complex& c : v) sum += std::norm(c);
    return std::sqrt(sum);
}

}  // namespace

std::vector<std::size_t> BlockDecomposition::row_permutation() const {
    std::vector<std::size_t> out;
    for (const Block& b : blocks) out.insert(out.end(), b.rows.begin(), b.rows.end());
    return out;
}

std::vector<std::size_t> BlockDecomposition::column_permutation() const {
    std::vector<std::size_t> out;
    for (const Block& b : blocks) out.insert(out.end(), b.cols.begin(), b.cols.end());
    return out;
}

BlockDecomposition decompose_blocks(const ModeStatusMatrix& matrix) {
    const std::size_t rows = matrix.rows();
    const std::size_t cols = matrix.cols();
    // union-find over rows [0, rows) and columns [rows, rows+cols)
    std::vector<std::size_t> parent(rows + cols);
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    const auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    const auto unite = [&](std::size_t a, std::size_t b) { parent[find(a)] = find(b); };

    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            if (!matrix.at(i, j).is_zero()) unite(i, rows + j);
        }
    }

    std::map<std::size_t, Block> components;  // keyed by representative
    for (std::size_t i = 0; i < rows; ++i) components[find(i)].rows.push_back(i);
    for (std::size_t j = 0; j < cols; ++j) components[find(rows + j)].cols.push_back(j);

    BlockDecomposition out;
    for (auto& [root, block] : components) {
        if (block.rows.size() != block.cols.size()) {
            throw NonReconstructible(
                "component pairs " + std::to_string(block.rows.size()) + " fields with " +
                std::to_string(block.cols.size()) + " sequences; the ensemble is malformed");
        }
        out.blocks.push_back(std::move(block));
    }
    std::sort(out.blocks.begin(), out.blocks.end(),
              [](const Block& a, const Block& b) { return a.rows.front() < b.rows.front(); });
    return out;
}

PermutationSchedule schedule_permutations(const Block& block, std::size_t base_rotation) {
    const std::size_t l = block.size();
    if (l == 0) throw NonReconstructible("empty block");
    PermutationSchedule schedule;
    schedule.l = l;
    schedule.rotations.resize(l);
    for (std::size_t r = 0; r < l; ++r) {
        schedule.rotations[r].resize(l);
        for (std::size_t i = 0; i < l; ++i) {
            schedule.rotations[r][i] = (i + r + base_rotation) % l;
        }
    }
    return schedule;
}

ReconstructionMode parse_mode(const std::string& name) {
    if (name == "binary") return ReconstructionMode::binary;
    if (name == "amplitude") return ReconstructionMode::amplitude;
    throw MalformedInput("unknown reconstruction mode: " + name);
}

std::string mode_name(ReconstructionMode mode) {
    return mode == ReconstructionMode::binary ? "binary" : "amplitude";
}

BlockReconstruction reconstruct_block(const Block& block, const ModeStatusMatrix& matrix,
                                      ReconstructionMode mode, std::size_t base_rotation) {
    const std::size_t l = block.size();
    if (l > kMaxReconstructQubits) {
        throw MalformedInput("block of " + std::to_string(l) + " fields exceeds the dense limit");
    }
    const PermutationSchedule schedule = schedule_permutations(block, base_rotation);

    BlockReconstruction out;
    out.state.n = l;
    out.state.amplitudes.assign(std::size_t{1} << l, Complex(0.0));
    out.rotation_contributed.assign(l, false);
    for (std::size_t i : block.rows) {
        out.state.qubit_order.push_back(i < matrix.row_labels.size() ? matrix.row_labels[i] : "");
    }

    for (std::size_t r = 0; r < l; ++r) {
        // per-field single-qubit factors under this rotation
        std::vector<std::array<Complex, 2>> factors(l);
        bool vanished = false;
        for (std::size_t i = 0; i < l && !vanished; ++i) {
            const std::size_t row = block.rows[i];
            const std::size_t col = block.cols[schedule.rotations[r][i]];
            const ModeStatus& st = matrix.at(row, col);
            if (st.is_zero()) {
                vanished = true;
                break;
            }
            if (mode == ReconstructionMode::binary) {
                factors[i] = {Complex(st.quantized[0]), Complex(st.quantized[1])};
            } else {
                factors[i] = {st.quantized[0] ? st.raw0 : Complex(0.0),
                              st.quantized[1] ? st.raw1 : Complex(0.0)};
            }
        }
        if (vanished) continue;
        out.rotation_contributed[r] = true;
        for (std::size_t basis = 0; basis < out.state.amplitudes.size(); ++basis) {
            Complex term = 1.0;
            for (std::size_t i = 0; i < l; ++i) {
                term *= factors[i][(basis >> (l - 1 - i)) & 1u];
            }
            out.state.amplitudes[basis] += term;
        }
    }

    const double norm = l2_norm(out.state.amplitudes);
    if (norm < 1e-12) {
        throw NonReconstructible("every permutation term vanished for a block");
    }
    for (Complex& a : out.state.amplitudes) a /= norm;
    return out;
}

StateVector reconstruct(const ModeStatusMatrix& matrix, ReconstructionMode mode) {
    const BlockDecomposition decomposition = decompose_blocks(matrix);
    const std::size_t n = matrix.rows();
    if (n > kMaxReconstructQubits) {
        throw MalformedInput("reconstruction of " + std::to_string(n) +
                             " fields exceeds the dense limit of " +
                             std::to_string(kMaxReconstructQubits));
    }

    std::vector<BlockReconstruction> parts;
    parts.reserve(decomposition.blocks.size());
    for (const Block& block : decomposition.blocks) {
        parts.push_back(reconstruct_block(block, matrix, mode));
    }

    StateVector state;
    state.n = n;
    state.qubit_order.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        state.qubit_order[i] = i < matrix.row_labels.size() ? matrix.row_labels[i] : "";
    }
    state.amplitudes.assign(std::size_t{1} << n, Complex(1.0));
    // amplitude of a global basis index is the product over blocks of the
    // block amplitude at the bits extracted from the block's row positions
    for (std::size_t basis = 0; basis < state.amplitudes.size(); ++basis) {
        Complex amp = 1.0;
        for (std::size_t b = 0; b < parts.size(); ++b) {
            const Block& block = decomposition.blocks[b];
            std::size_t local = 0;
            for (std::size_t i = 0; i < block.rows.size(); ++i) {
                const std::size_t bit = (basis >> (n - 1 - block.rows[i])) & 1u;
                local = (local << 1) | bit;
            }
            amp *= parts[b].state.amplitudes[local];
        }
        state.amplitudes[basis] = amp;
    }
    return state;
}

MeasurementHistogram sample_measurement(const ModeStatusMatrix& matrix, std::uint64_t seed,
                                        std::size_t shots) {
    const BlockDecomposition decomposition = decompose_blocks(matrix);
    const std::size_t n = matrix.rows();

    // viable rotations per block: at least one product term survives
    struct BlockChoices {
        const Block* block;
        std::vector<std::vector<std::size_t>> rotations;  // viable assignments only
    };
    std::vector<BlockChoices> choices;
    for (const Block& block : decomposition.blocks) {
        const PermutationSchedule schedule = schedule_permutations(block);
        BlockChoices bc{&block, {}};
        for (const auto& rotation : schedule.rotations) {
            bool viable = true;
            for (std::size_t i = 0; i < block.size() && viable; ++i) {
                viable = !matrix.at(block.rows[i], block.cols[rotation[i]]).is_zero();
            }
            if (viable) bc.rotations.push_back(rotation);
        }
        if (bc.rotations.empty()) {
            throw NonReconstructible("no viable rotation for a block; nothing to sample");
        }
        choices.push_back(std::move(bc));
    }

    MeasurementHistogram histogram;
    histogram.shots = shots;
    histogram.seed = seed;
    for (std::size_t shot = 0; shot < shots; ++shot) {
        // one substream per shot index; seed_seq keeps 32 bits per word
        std::seed_seq stream{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                             static_cast<std::uint32_t>(shot), static_cast<std::uint32_t>(shot >> 32)};
        std::mt19937_64 rng(stream);
        std::string outcome(n, '0');
        for (const BlockChoices& bc : choices) {
            std::uniform_int_distribution<std::size_t> pick(0, bc.rotations.size() - 1);
            const auto& rotation = bc.rotations[pick(rng)];
            for (std::size_t i = 0; i < bc.block->size(); ++i) {
                const ModeStatus& st = matrix.at(bc.block->rows[i], bc.block->cols[rotation[i]]);
                int bit;
                if (st.quantized[0] != 0 && st.quantized[1] != 0) {
                    std::uniform_int_distribution<int> mode_pick(0, 1);
                    bit = mode_pick(rng);
                } else {
                    bit = st.quantized[1] != 0 ? 1 : 0;
                }
                outcome[bc.block->rows[i]] = static_cast<char>('0' + bit);
            }
        }
        histogram.counts[outcome]++;
    }
    return histogram;
}

}  // namespace ppsq
