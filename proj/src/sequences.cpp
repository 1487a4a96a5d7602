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

#include "ppsq/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>

#include "ppsq/errors.hpp"

namespace ppsq {

namespace {

std::size_t pow4(int s) {
    std::size_t v = 1;
    for (int i = 0; i < s; ++i) v *= 4;
    return v;
}

}  // namespace

const PhaseSequence& SequenceSet::at(std::size_t j) const {
    if (j >= sequences.size()) throw MalformedInput("sequence index out of range");
    return sequences[j];
}

SequenceSet build_sequence_set(int degree) {
    if (degree < 1) throw MalformedInput("degree must be at least 1");
    auto polys = gf4::find_primitive_polynomials(degree);
    std::vector<gf4::Element> seed(static_cast<std::size_t>(degree), 0);
    seed.back() = 1;
    return build_sequence_set(degree, polys.front(), seed);
}

SequenceSet build_sequence_set(int degree, const gf4::Polynomial& polynomial,
                               std::span<const gf4::Element> seed) {
    if (degree < 1) throw MalformedInput("degree must be at least 1");
    if (polynomial.degree() != degree) throw MalformedInput("polynomial degree mismatch");
    const std::size_t n = pow4(degree);
    const std::size_t period = n - 1;

    const gf4::MSequence base = gf4::lfsr_generate(polynomial, seed, period);

    SequenceSet set;
    set.degree = degree;
    set.polynomial = polynomial;
    set.seed.assign(seed.begin(), seed.end());
    set.sequences.reserve(n);

    PhaseSequence zero;
    zero.index = 0;
    zero.phases.assign(n, 0);
    set.sequences.push_back(std::move(zero));

    for (std::size_t j = 1; j < n; ++j) {
        PhaseSequence seq;
        seq.index = static_cast<int>(j);
        seq.phases.resize(n);
        const std::size_t shift = j - 1;  // rotate right by j-1
        for (std::size_t k = 0; k < period; ++k) {
            seq.phases[k] = base.symbols[(k + period - shift) % period];
        }
        seq.phases[period] = 0;  // appended zero balances the histogram
        set.sequences.push_back(std::move(seq));
    }
    return set;
}

Complex correlation(const PhaseSequence& a, const PhaseSequence& b) {
    if (a.size() != b.size()) throw MalformedInput("correlation requires equal lengths");
    // count quarter-turn differences; the sum of phasors is then exact
    long counts[4] = {0, 0, 0, 0};
    for (std::size_t k = 0; k < a.size(); ++k) {
        counts[(a.phases[k] - b.phases[k] + 4) & 3]++;
    }
    const double n = static_cast<double>(a.size());
    return {static_cast<double>(counts[0] - counts[2]) / n,
            static_cast<double>(counts[1] - counts[3]) / n};
}

PropertyReport verify_set_properties(const SequenceSet& set, const VerifyOptions& opts) {
    return verify_sequences(set.sequences, opts);
}

PropertyReport verify_sequences(std::span<const PhaseSequence> sequences,
                                const VerifyOptions& opts) {
    PropertyReport report;
    const std::size_t m = sequences.size();
    if (m == 0) return report;
    const std::size_t n_slots = sequences.front().size();
    for (const auto& s : sequences) {
        if (s.size() != n_slots) throw MalformedInput("sequences of mixed lengths");
    }

    // (a) pairwise correlations vs the Kronecker delta, complex and real part
    std::vector<double> complex_residual(m * m, 0.0);
    std::vector<double> real_residual(m * m, 0.0);
    const auto pair_residuals = [&](std::size_t i, std::size_t j) {
        const Complex e = correlation(sequences[i], sequences[j]);
        const double target = (i == j) ? 1.0 : 0.0;
        complex_residual[i * m + j] = std::abs(e - Complex(target, 0.0));
        real_residual[i * m + j] = std::abs(e.real() - target);
    };
    if (opts.parallel) {
#pragma omp parallel for schedule(static)
        for (long long idx = 0; idx < static_cast<long long>(m * m); ++idx) {
            pair_residuals(static_cast<std::size_t>(idx) / m, static_cast<std::size_t>(idx) % m);
        }
    } else {
        for (std::size_t idx = 0; idx < m * m; ++idx) pair_residuals(idx / m, idx % m);
    }
    constexpr double kTol = 1e-12;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double rc = complex_residual[i * m + j];
            if (rc > report.worst_complex_residual) {
                report.worst_complex_residual = rc;
                report.worst_complex_pair = {sequences[i].index, sequences[j].index};
            }
            if (rc >= kTol) report.complex_violations++;
            report.worst_real_residual = std::max(report.worst_real_residual, real_residual[i * m + j]);
        }
    }
    report.orthogonal_complex = report.worst_complex_residual < kTol;
    report.orthogonal_real = report.worst_real_residual < kTol;

    // (b) balance: the phasor sum of every nonzero sequence vanishes, for any
    // common phase offset theta
    for (const auto& seq : sequences) {
        const bool all_zero =
            std::all_of(seq.phases.begin(), seq.phases.end(), [](std::uint8_t p) { return p == 0; });
        if (all_zero) continue;
        report.balance_checked = true;
        for (double theta : opts.balance_thetas) {
            Complex sum = 0.0;
            for (std::uint8_t p : seq.phases) {
                sum += std::polar(1.0, theta + static_cast<double>(p) * 1.5707963267948966);
            }
            report.worst_balance_residual = std::max(report.worst_balance_residual, std::abs(sum));
        }
    }
    report.balanced = report.worst_balance_residual < kTol;

    // (c) closure: elementwise GF(4) sum of any two members stays in the set.
    // This is exact integer arithmetic on the quarter-turn symbols.
    std::map<std::vector<std::uint8_t>, int> membership;
    for (const auto& seq : sequences) membership.emplace(seq.phases, seq.index);
    report.closed = true;
    for (std::size_t i = 0; i < m && report.closed; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            std::vector<std::uint8_t> sum(n_slots);
            for (std::size_t k = 0; k < n_slots; ++k) {
                sum[k] = gf4::add(sequences[i].phases[k], sequences[j].phases[k]);
            }
            if (!membership.contains(sum)) {
                report.closed = false;
                report.closure_counterexample = "indices (" + std::to_string(sequences[i].index) +
                                                ", " + std::to_string(sequences[j].index) + ")";
                break;
            }
        }
    }
    return report;
}

std::optional<SequenceWitness> find_sequence_witness(std::span<const gf4::Element> target) {
    const std::size_t len = target.size();
    int degree = 0;
    for (int s = 1; s <= 8; ++s) {
        if (pow4(s) - 1 == len) {
            degree = s;
            break;
        }
    }
    if (degree == 0) throw MalformedInput("target length is not 4^s - 1 for any s in 1..8");

    // the six bijections of {0,1,2,3} fixing 0, identity first
    static constexpr std::array<std::array<std::uint8_t, 4>, 6> kRelabelings = {{
        {0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 1, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}, {0, 3, 2, 1}}};

    const auto polys = gf4::find_primitive_polynomials(degree);
    const std::size_t seeds = pow4(degree) - 1;
    const std::vector<gf4::Element> wanted(target.begin(), target.end());

    const auto relabel = [&](const std::vector<gf4::Element>& symbols,
                             const std::array<std::uint8_t, 4>& map) {
        std::vector<gf4::Element> out(symbols.size());
        for (std::size_t k = 0; k < symbols.size(); ++k) out[k] = map[symbols[k]];
        return out;
    };

    // pass 0: exact matches only; pass 1: matches up to a cyclic left shift
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto& poly : polys) {
            for (std::size_t code = 1; code <= seeds; ++code) {
                std::vector<gf4::Element> seed(static_cast<std::size_t>(degree));
                std::size_t rest = code;
                for (int i = 0; i < degree; ++i) {
                    seed[static_cast<std::size_t>(i)] = static_cast<gf4::Element>(rest & 3);
                    rest >>= 2;
                }
                const auto generated = gf4::lfsr_generate(poly, seed, len).symbols;
                for (const auto& map : kRelabelings) {
                    const auto candidate = relabel(generated, map);
                    if (pass == 0) {
                        if (candidate == wanted) return SequenceWitness{poly, seed, map, 0};
                    } else {
                        for (std::size_t t = 1; t < len; ++t) {
                            bool match = true;
                            for (std::size_t k = 0; k < len && match; ++k) {
                                match = candidate[(k + t) % len] == wanted[k];
                            }
                            if (match) {
                                return SequenceWitness{poly, seed, map, static_cast<int>(t)};
                            }
                        }
                    }
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace ppsq
