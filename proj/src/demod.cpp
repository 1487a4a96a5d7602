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

#include "ppsq/demod.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ppsq/errors.hpp"

namespace ppsq {

namespace {

std::array<int, 2> quantize(Complex raw0, Complex raw1, double tau) {
    return {std::abs(raw0) > tau ? 1 : 0, std::abs(raw1) > tau ? 1 : 0};
}

// correlation of one mode vector against one reference, exact phasor lookup
Complex correlate_mode(const std::vector<Complex>& mode, const PhaseSequence& ref) {
    Complex sum = 0.0;
    for (std::size_t k = 0; k < mode.size(); ++k) {
        sum += mode[k] * std::conj(ref.phasor(k));
    }
    return sum / static_cast<double>(mode.size());
}

}  // namespace

double demodulate_phase(const PhaseSequence& input, const PhaseSequence& reference) {
    if (input.size() != reference.size()) {
        throw MalformedInput("demodulate_phase requires equal lengths");
    }
    // cos of a quarter-turn difference is exactly one of {1, 0, -1, 0}
    long counts[4] = {0, 0, 0, 0};
    for (std::size_t k = 0; k < input.size(); ++k) {
        counts[(input.phases[k] - reference.phases[k] + 4) & 3]++;
    }
    return static_cast<double>(counts[0] - counts[2]) / static_cast<double>(input.size());
}

ModeStatus demodulate_field(const ClassicalField& f, const PhaseSequence& reference, double tau) {
    if (f.slots() != reference.size()) {
        throw MalformedInput("field and reference sequence lengths differ");
    }
    ModeStatus status;
    status.raw0 = correlate_mode(f.mode0, reference);
    status.raw1 = correlate_mode(f.mode1, reference);
    status.quantized = quantize(status.raw0, status.raw1, tau);
    return status;
}

namespace detail {

void correlation_grid_serial(const std::vector<ClassicalField>& fields,
                             const std::vector<const PhaseSequence*>& references,
                             std::vector<Complex>& raw0, std::vector<Complex>& raw1) {
    const std::size_t m = references.size();
    raw0.assign(fields.size() * m, Complex(0.0));
    raw1.assign(fields.size() * m, Complex(0.0));
    for (std::size_t i = 0; i < fields.size(); ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            raw0[i * m + j] = correlate_mode(fields[i].mode0, *references[j]);
            raw1[i * m + j] = correlate_mode(fields[i].mode1, *references[j]);
        }
    }
}

void correlation_grid_parallel(const std::vector<ClassicalField>& fields,
                               const std::vector<const PhaseSequence*>& references,
                               std::vector<Complex>& raw0, std::vector<Complex>& raw1) {
    const std::size_t m = references.size();
    raw0.assign(fields.size() * m, Complex(0.0));
    raw1.assign(fields.size() * m, Complex(0.0));
    const long long total = static_cast<long long>(fields.size() * m);
#pragma omp parallel for schedule(static)
    for (long long idx = 0; idx < total; ++idx) {
        const std::size_t i = static_cast<std::size_t>(idx) / m;
        const std::size_t j = static_cast<std::size_t>(idx) % m;
        raw0[static_cast<std::size_t>(idx)] = correlate_mode(fields[i].mode0, *references[j]);
        raw1[static_cast<std::size_t>(idx)] = correlate_mode(fields[i].mode1, *references[j]);
    }
}

std::vector<Complex> reference_gram(const std::vector<const PhaseSequence*>& references) {
    const std::size_t m = references.size();
    std::vector<Complex> gram(m * m);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            gram[a * m + b] = correlation(*references[a], *references[b]);
        }
    }
    return gram;
}

bool is_identity(const std::vector<Complex>& gram, std::size_t m) {
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            const Complex want = a == b ? Complex(1.0) : Complex(0.0);
            if (std::abs(gram[a * m + b] - want) > 1e-12) return false;
        }
    }
    return true;
}

void solve_hermitian_system(std::vector<Complex> gram, std::size_t m, std::vector<Complex>& rhs) {
    // LU with partial pivoting; m is tiny (at most the reference count)
    std::vector<std::size_t> perm(m);
    for (std::size_t i = 0; i < m; ++i) perm[i] = i;
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t pivot = col;
        double best = std::abs(gram[perm[col] * m + col]);
        for (std::size_t r = col + 1; r < m; ++r) {
            const double v = std::abs(gram[perm[r] * m + col]);
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (best < 1e-14) throw NonReconstructible("reference Gram matrix is singular");
        std::swap(perm[col], perm[pivot]);
        const Complex diag = gram[perm[col] * m + col];
        for (std::size_t r = col + 1; r < m; ++r) {
            const Complex factor = gram[perm[r] * m + col] / diag;
            gram[perm[r] * m + col] = factor;
            for (std::size_t c = col + 1; c < m; ++c) {
                gram[perm[r] * m + c] -= factor * gram[perm[col] * m + c];
            }
        }
    }
    // forward substitution on the permuted rhs, then back substitution
    std::vector<Complex> y(m);
    for (std::size_t r = 0; r < m; ++r) {
        Complex v = rhs[perm[r]];
        for (std::size_t c = 0; c < r; ++c) v -= gram[perm[r] * m + c] * y[c];
        y[r] = v;
    }
    for (std::size_t ri = m; ri-- > 0;) {
        Complex v = y[ri];
        for (std::size_t c = ri + 1; c < m; ++c) v -= gram[perm[ri] * m + c] * rhs[c];
        rhs[ri] = v / gram[perm[ri] * m + ri];
    }
}

}  // namespace detail

ModeStatusMatrix build_matrix(const FieldEnsemble& ensemble,
                              const std::vector<int>& reference_indices,
                              const DemodOptions& options) {
    if (ensemble.fields.empty()) throw MalformedInput("ensemble has no fields");
    {
        std::set<int> unique(reference_indices.begin(), reference_indices.end());
        if (unique.size() != reference_indices.size()) {
            throw MalformedInput("duplicate reference sequences");
        }
    }
    std::vector<const PhaseSequence*> references;
    references.reserve(reference_indices.size());
    for (int idx : reference_indices) {
        if (idx <= 0 || static_cast<std::size_t>(idx) >= ensemble.set.size()) {
            throw MalformedInput("reference index outside the usable sequence range");
        }
        references.push_back(&ensemble.set.at(static_cast<std::size_t>(idx)));
    }
    for (const auto& f : ensemble.fields) {
        if (f.slots() != ensemble.set.slots()) {
            throw MalformedInput("field slot count does not match the sequence set");
        }
    }

    const std::size_t m = references.size();
    std::vector<Complex> raw0, raw1;
    if (options.parallel) {
        detail::correlation_grid_parallel(ensemble.fields, references, raw0, raw1);
    } else {
        detail::correlation_grid_serial(ensemble.fields, references, raw0, raw1);
    }

    // Correlations equal the modulated coefficients only when the references
    // are pairwise orthogonal.  Otherwise invert the known Gram system so the
    // matrix still satisfies its contract: raw entry (i,j) is the coefficient
    // of e^{i lambda^(j)} on the respective mode of field i.  A coefficient
    // vector c produces correlations raw_j = sum_{j'} c_{j'} E(j', j), so the
    // system to solve is G^T c = raw.
    const auto gram = detail::reference_gram(references);
    if (!detail::is_identity(gram, m)) {
        std::vector<Complex> gram_t(m * m);
        for (std::size_t a = 0; a < m; ++a) {
            for (std::size_t b = 0; b < m; ++b) gram_t[a * m + b] = gram[b * m + a];
        }
        for (std::size_t i = 0; i < ensemble.fields.size(); ++i) {
            std::vector<Complex> rhs0(raw0.begin() + static_cast<long>(i * m),
                                      raw0.begin() + static_cast<long>((i + 1) * m));
            std::vector<Complex> rhs1(raw1.begin() + static_cast<long>(i * m),
                                      raw1.begin() + static_cast<long>((i + 1) * m));
            detail::solve_hermitian_system(gram_t, m, rhs0);
            detail::solve_hermitian_system(gram_t, m, rhs1);
            std::copy(rhs0.begin(), rhs0.end(), raw0.begin() + static_cast<long>(i * m));
            std::copy(rhs1.begin(), rhs1.end(), raw1.begin() + static_cast<long>(i * m));
        }
    }

    ModeStatusMatrix matrix;
    matrix.n_rows = ensemble.fields.size();
    matrix.col_sequences = reference_indices;
    matrix.tau = options.tau;
    matrix.row_labels.reserve(ensemble.fields.size());
    for (const auto& f : ensemble.fields) matrix.row_labels.push_back(f.label);
    matrix.entries.resize(matrix.n_rows * m);
    for (std::size_t i = 0; i < matrix.n_rows; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            ModeStatus& st = matrix.at(i, j);
            st.raw0 = raw0[i * m + j];
            st.raw1 = raw1[i * m + j];
            st.quantized = quantize(st.raw0, st.raw1, options.tau);
        }
    }
    return matrix;
}

ModeStatusMatrix build_matrix(const FieldEnsemble& ensemble, const DemodOptions& options) {
    return build_matrix(ensemble, ensemble.pps_indices, options);
}

std::pair<double, double> measure_amplitudes(const ClassicalField& f) {
    double p0 = 0.0, p1 = 0.0;
    for (std::size_t k = 0; k < f.slots(); ++k) {
        p0 += std::norm(f.mode0[k]);
        p1 += std::norm(f.mode1[k]);
    }
    const double n = static_cast<double>(f.slots());
    return {std::sqrt(p0 / n), std::sqrt(p1 / n)};
}

std::vector<ClassicalField> rebuild_fields(const ModeStatusMatrix& matrix,
                                           const SequenceSet& set) {
    std::vector<ClassicalField> fields(matrix.rows());
    const std::size_t n = set.slots();
    for (std::size_t i = 0; i < matrix.rows(); ++i) {
        ClassicalField& f = fields[i];
        f.label = i < matrix.row_labels.size() ? matrix.row_labels[i] : "";
        f.mode0.assign(n, Complex(0.0));
        f.mode1.assign(n, Complex(0.0));
        for (std::size_t j = 0; j < matrix.cols(); ++j) {
            const auto& seq = set.at(static_cast<std::size_t>(matrix.col_sequences[j]));
            const ModeStatus& st = matrix.at(i, j);
            for (std::size_t k = 0; k < n; ++k) {
                const Complex p = seq.phasor(k);
                f.mode0[k] += st.raw0 * p;
                f.mode1[k] += st.raw1 * p;
            }
        }
    }
    return fields;
}

}  // namespace ppsq
