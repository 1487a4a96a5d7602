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
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ppsq/gf4.hpp"

namespace ppsq {

using Complex = std::complex<double>;

/// The four exactly representable unit phasors 1, i, -1, -i indexed by
/// quarter turns.
inline Complex quarter_phasor(std::uint8_t quarter) {
    static const std::array<Complex, 4> table = {
        Complex(1.0, 0.0), Complex(0.0, 1.0), Complex(-1.0, 0.0), Complex(0.0, -1.0)};
    return table[quarter & 3u];
}

/// One pseudorandom phase sequence: N phase values from {0, pi/2, pi, 3pi/2}
/// stored as quarter-turn integers.  Sequence 0 is the all-zero sequence; the
/// others end with the appended zero symbol that balances the histogram.
struct PhaseSequence {
    std::vector<std::uint8_t> phases;
    int index = 0;

    std::size_t size() const { return phases.size(); }
    Complex phasor(std::size_t k) const { return quarter_phasor(phases[k]); }
    bool operator==(const PhaseSequence&) const = default;
};

/// The full family of N = 4^s sequences: the all-zero sequence plus the N-1
/// cyclic shifts of one base m-sequence, each with a zero appended.  Only the
/// N-1 nonzero members are usable for modulation.
struct SequenceSet {
    int degree = 0;
    gf4::Polynomial polynomial;
    std::vector<gf4::Element> seed;
    std::vector<PhaseSequence> sequences;

    std::size_t size() const { return sequences.size(); }
    std::size_t slots() const { return sequences.empty() ? 0 : sequences.front().size(); }
    std::size_t usable_count() const { return sequences.empty() ? 0 : sequences.size() - 1; }
    const PhaseSequence& at(std::size_t j) const;
    bool operator==(const SequenceSet&) const = default;
};

/// Builds the set from the lexicographically smallest primitive polynomial of
/// the given degree and seed (0,...,0,1).  Sequence j >= 1 is the base
/// m-sequence rotated right by j-1 with a zero appended.
SequenceSet build_sequence_set(int degree);
SequenceSet build_sequence_set(int degree, const gf4::Polynomial& polynomial,
                               std::span<const gf4::Element> seed);

/// Normalized complex correlation (1/N) sum_k exp(i l^(a)_k) exp(-i l^(b)_k).
///
/// Computed by exact integer counting of quarter-turn differences, so results
/// are exact up to the final division.  Note that two shifts of a quaternary
/// m-sequence whose offset is a multiple of (4^s-1)/3 are scalar multiples of
/// each other and correlate to +-i/2 rather than 0; the real part is 0 for
/// every distinct pair.
Complex correlation(const PhaseSequence& a, const PhaseSequence& b);

struct PropertyReport {
    // complex correlation vs the Kronecker delta, over all ordered pairs
    bool orthogonal_complex = false;
    double worst_complex_residual = 0.0;
    std::pair<int, int> worst_complex_pair{0, 0};
    std::size_t complex_violations = 0;

    // real-part (cosine) correlation vs the delta; holds for every pair
    bool orthogonal_real = false;
    double worst_real_residual = 0.0;

    // |sum_k e^{i(phase_k + theta)}| for each nonzero sequence and sampled theta
    bool balanced = false;
    double worst_balance_residual = 0.0;
    bool balance_checked = false;  // false when the set has no nonzero member

    // elementwise GF(4) sum of any two members stays in the set (exact check
    // on the quarter-turn integers; this is the additive structure the
    // sequences are generated from, and it fails under plain mod-4 addition)
    bool closed = false;
    std::string closure_counterexample;

    /// The properties the demodulation pipeline relies on.
    bool usable() const { return orthogonal_real && (balanced || !balance_checked) && closed; }
};

struct VerifyOptions {
    std::vector<double> balance_thetas{0.0, 0.7, 3.14159265358979323846 / 3.0};
    bool parallel = true;
};

PropertyReport verify_set_properties(const SequenceSet& set, const VerifyOptions& opts = {});
PropertyReport verify_sequences(std::span<const PhaseSequence> sequences,
                                const VerifyOptions& opts = {});

/// How a target quaternary sequence can be produced by this module: generate
/// with (polynomial, seed), rename the nonzero symbols with `relabeling`, and
/// rotate left by `shift`.
struct SequenceWitness {
    gf4::Polynomial polynomial;
    std::vector<gf4::Element> seed;
    std::array<std::uint8_t, 4> relabeling{0, 1, 2, 3};
    int shift = 0;
};

/// Exhaustive search over primitive polynomials of the matching degree, all
/// nonzero seeds, and the six symbol relabelings that fix 0, for an exact
/// match first and a cyclic-shift match second.  Returns the first witness in
/// that deterministic order, or nullopt.
std::optional<SequenceWitness> find_sequence_witness(std::span<const gf4::Element> target);

}  // namespace ppsq
