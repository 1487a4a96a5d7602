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

#include <array>
#include <string>
#include <vector>

#include "ppsq/field.hpp"
#include "ppsq/sequences.hpp"

namespace ppsq {

inline constexpr double kDefaultTau = 1e-9;

/// Demodulation outcome of one field against one reference sequence: the
/// complex per-mode coefficients plus their presence indicators.  Quantized
/// value (0,0) is rendered as the status "0".
struct ModeStatus {
    Complex raw0{0.0};
    Complex raw1{0.0};
    std::array<int, 2> quantized{0, 0};

    bool is_zero() const { return quantized[0] == 0 && quantized[1] == 0; }
};

/// Row i = field i, column j = reference sequence col_sequences[j].  Raw
/// entries are the exact coefficients of e^{i lambda^(j)} on each mode, so
/// the grid determines the ensemble for fields supported on the references.
struct ModeStatusMatrix {
    std::size_t n_rows = 0;
    std::vector<int> col_sequences;
    std::vector<std::string> row_labels;
    std::vector<ModeStatus> entries;  // row-major
    double tau = kDefaultTau;

    std::size_t rows() const { return n_rows; }
    std::size_t cols() const { return col_sequences.size(); }
    const ModeStatus& at(std::size_t i, std::size_t j) const { return entries[i * cols() + j]; }
    ModeStatus& at(std::size_t i, std::size_t j) { return entries[i * cols() + j]; }
};

/// (1/N) sum_k cos(phase_k^(in) - phase_k^(ref)); 1 for identical sequences
/// and 0 for any two distinct members of a sequence set.  Evaluated by exact
/// integer counting.
double demodulate_phase(const PhaseSequence& input, const PhaseSequence& reference);

/// Plain quadrature correlation of one field against one reference:
/// raw_m = (1/N) sum_k mode_m[k] exp(-i phase_k^(ref)).
ModeStatus demodulate_field(const ClassicalField& f, const PhaseSequence& reference,
                            double tau = kDefaultTau);

struct DemodOptions {
    double tau = kDefaultTau;
    bool parallel = true;
};

/// Correlates every field against every reference and, when the references
/// are not pairwise complex-orthogonal (shift offsets that are multiples of
/// (4^s-1)/3 correlate to +-i/2), solves the reference Gram system so each
/// raw entry is the exact modulated coefficient rather than the crosstalked
/// correlation.  Duplicate reference indices are rejected.
ModeStatusMatrix build_matrix(const FieldEnsemble& ensemble,
                              const std::vector<int>& reference_indices,
                              const DemodOptions& options = {});

/// Uses the ensemble's declared sequence indices as references.
ModeStatusMatrix build_matrix(const FieldEnsemble& ensemble, const DemodOptions& options = {});

/// Per-mode root-mean-square amplitudes (|alpha|, |beta|).
std::pair<double, double> measure_amplitudes(const ClassicalField& f);

/// Inverse of build_matrix for fields supported on the reference set:
/// field i = sum_j raw0(i,j) e^{i lambda^(j)} |0) + raw1(i,j) e^{i lambda^(j)} |1).
std::vector<ClassicalField> rebuild_fields(const ModeStatusMatrix& matrix, const SequenceSet& set);

namespace detail {

/// Raw correlation grid, one complex pair per (field, reference).  The serial
/// and parallel variants perform the identical per-entry reduction and return
/// bit-identical results; both are kept so tests and the benchmark can
/// compare them.
void correlation_grid_serial(const std::vector<ClassicalField>& fields,
                             const std::vector<const PhaseSequence*>& references,
                             std::vector<Complex>& raw0, std::vector<Complex>& raw1);
void correlation_grid_parallel(const std::vector<ClassicalField>& fields,
                               const std::vector<const PhaseSequence*>& references,
                               std::vector<Complex>& raw0, std::vector<Complex>& raw1);

/// Row-major m x m Gram matrix of the references under the complex
/// correlation.
std::vector<Complex> reference_gram(const std::vector<const PhaseSequence*>& references);

bool is_identity(const std::vector<Complex>& gram, std::size_t m);

/// Solves gram * x = rhs in place of rhs (LU with partial pivoting).
void solve_hermitian_system(std::vector<Complex> gram, std::size_t m, std::vector<Complex>& rhs);

}  // namespace detail

}  // namespace ppsq
