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

#include "ppsq/states.hpp"

#include <cmath>
#include <map>
#include <utility>

#include "ppsq/errors.hpp"

namespace ppsq {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void require_usable(std::size_t n, const SequenceSet& set) {
    if (n == 0) throw MalformedInput("particle count must be at least 1");
    if (n > set.usable_count()) {
        throw MalformedInput("insufficient sequences: " + std::to_string(n) + " > " +
                             std::to_string(set.usable_count()) + " usable");
    }
}

FieldEnsemble ensemble_shell(std::size_t n, const SequenceSet& set) {
    FieldEnsemble e;
    e.set = set;
    e.pps_indices.resize(n);
    for (std::size_t i = 0; i < n; ++i) e.pps_indices[i] = static_cast<int>(i + 1);
    return e;
}

std::string field_label(std::size_t i) { return "f" + std::to_string(i + 1); }

// balanced two-sequence superposition (e^{i a}|0) + e^{i b}|1)) / sqrt 2
ClassicalField two_sequence_field(const SequenceSet& set, int seq_mode0, int seq_mode1) {
    const auto f0 = modulate(set.at(static_cast<std::size_t>(seq_mode0)), 1.0, 0.0);
    const auto f1 = modulate(set.at(static_cast<std::size_t>(seq_mode1)), 0.0, 1.0);
    const std::vector<ClassicalField> parts{f0, f1};
    const std::vector<Complex> weights{Complex(1.0), Complex(1.0)};
    return superpose(parts, weights).field;
}

}  // namespace

FieldEnsemble prepare_product(std::size_t n, const SequenceSet& set) {
    require_usable(n, set);
    FieldEnsemble e = ensemble_shell(n, set);
    for (std::size_t i = 0; i < n; ++i) {
        ClassicalField f = modulate(set.at(i + 1), kInvSqrt2, kInvSqrt2);
        f.label = field_label(i);
        e.fields.push_back(std::move(f));
    }
    return e;
}

FieldEnsemble prepare_bell(BellVariant variant, const SequenceSet& set) {
    require_usable(2, set);
    FieldEnsemble e = ensemble_shell(2, set);
    ClassicalField a = two_sequence_field(set, 1, 2);
    a.label = field_label(0);
    ClassicalField b = variant == BellVariant::psi_plus ? two_sequence_field(set, 2, 1)
                                                        : two_sequence_field(set, 1, 2);
    b.label = field_label(1);
    e.fields.push_back(std::move(a));
    e.fields.push_back(std::move(b));
    return e;
}

FieldEnsemble prepare_ghz(const SequenceSet& set) {
    require_usable(3, set);
    FieldEnsemble e = ensemble_shell(3, set);
    const int pairing[3][2] = {{1, 2}, {2, 3}, {3, 1}};
    for (std::size_t i = 0; i < 3; ++i) {
        ClassicalField f = two_sequence_field(set, pairing[i][0], pairing[i][1]);
        f.label = field_label(i);
        e.fields.push_back(std::move(f));
    }
    return e;
}

namespace {

ClassicalField w_source_field(const SequenceSet& set) {
    // lambda^(a) on |1), lambda^(b) and lambda^(c) on |0)
    const auto fa = modulate(set.at(1), 0.0, 1.0);
    const auto fb = modulate(set.at(2), 1.0, 0.0);
    const auto fc = modulate(set.at(3), 1.0, 0.0);
    const std::vector<ClassicalField> parts{fa, fb, fc};
    const std::vector<Complex> weights{Complex(1.0), Complex(1.0), Complex(1.0)};
    return superpose(parts, weights).field;
}

}  // namespace

FieldEnsemble prepare_w(const SequenceSet& set) {
    require_usable(3, set);
    FieldEnsemble e = ensemble_shell(3, set);
    const ClassicalField source = w_source_field(set);
    auto [first, rest] = beam_split(source, 1.0, 2.0, 0.0, 0.0);
    auto [second, third] = beam_split(rest, 1.0, 1.0, 0.0, 0.0);
    ClassicalField fields[3] = {normalized(first), normalized(second), normalized(third)};
    for (std::size_t i = 0; i < 3; ++i) {
        fields[i].label = field_label(i);
        e.fields.push_back(std::move(fields[i]));
    }
    return e;
}

FieldEnsemble prepare_w_direct(const SequenceSet& set) {
    require_usable(3, set);
    FieldEnsemble e = ensemble_shell(3, set);
    for (std::size_t i = 0; i < 3; ++i) {
        ClassicalField f = w_source_field(set);
        f.label = field_label(i);
        e.fields.push_back(std::move(f));
    }
    return e;
}

namespace {

// mode, sequence index -> coefficient; the symbolic form of a field whose
// support lies on the sequence set
using PpsCoefficients = std::map<std::pair<int, int>, Complex>;

double expansion_norm(const PpsCoefficients& coeffs) {
    // distinct (mode, sequence) components are orthogonal, so the field norm
    // is the root sum of squared coefficient magnitudes
    double sum = 0.0;
    for (const auto& [key, c] : coeffs) sum += std::norm(c);
    return std::sqrt(sum);
}

void normalize_expansion(PpsCoefficients& coeffs) {
    const double norm = expansion_norm(coeffs);
    if (norm < 1e-12) throw DegenerateSuperposition("field expansion cancelled to zero");
    for (auto& [key, c] : coeffs) c /= norm;
}

constexpr double kZeroBranchTol = 1e-12;

struct RecursionOutput {
    std::vector<PpsCoefficients> fields;
};

RecursionOutput build_recursive(std::span<const Complex> amps, std::span<const int> seqs,
                                CustomDiagnostics& diag) {
    const std::size_t n = seqs.size();
    if (n == 1) {
        PpsCoefficients f;
        if (std::abs(amps[0]) > 0.0) f[{0, seqs[0]}] = amps[0];
        if (std::abs(amps[1]) > 0.0) f[{1, seqs[0]}] = amps[1];
        normalize_expansion(f);
        return {{std::move(f)}};
    }

    // split on the last particle (least significant bit)
    const std::size_t half = amps.size() / 2;
    std::vector<Complex> branch0(half), branch1(half);
    double w0 = 0.0, w1 = 0.0;
    for (std::size_t j = 0; j < half; ++j) {
        branch0[j] = amps[2 * j];
        branch1[j] = amps[2 * j + 1];
        w0 += std::norm(branch0[j]);
        w1 += std::norm(branch1[j]);
    }
    w0 = std::sqrt(w0);
    w1 = std::sqrt(w1);

    const std::vector<int> seqs0(seqs.begin(), seqs.end() - 1);
    std::vector<int> seqs1(seqs.begin(), seqs.end() - 2);
    seqs1.push_back(seqs[n - 1]);

    RecursionOutput out;
    PpsCoefficients last;
    if (w1 <= kZeroBranchTol) {
        for (Complex& c : branch0) c /= w0;
        out = build_recursive(branch0, seqs0, diag);
        last[{0, seqs[n - 1]}] = 1.0;
    } else if (w0 <= kZeroBranchTol) {
        for (Complex& c : branch1) c /= w1;
        out = build_recursive(branch1, seqs1, diag);
        last[{1, seqs[n - 2]}] = 1.0;
    } else {
        for (Complex& c : branch0) c /= w0;
        for (Complex& c : branch1) c /= w1;
        RecursionOutput a = build_recursive(branch0, seqs0, diag);
        RecursionOutput b = build_recursive(branch1, seqs1, diag);
        out.fields.resize(n - 1);
        for (std::size_t i = 0; i < n - 1; ++i) {
            PpsCoefficients combined;
            for (const auto& [key, c] : a.fields[i]) combined[key] += w0 * c;
            for (const auto& [key, c] : b.fields[i]) {
                if (combined.contains(key) && std::abs(combined[key]) > 0.0) {
                    diag.collided = true;
                    diag.collision_sites.push_back(
                        "field f" + std::to_string(i + 1) + " mode " +
                        std::to_string(key.first) + " sequence " + std::to_string(key.second));
                }
                combined[key] += w1 * c;
            }
            normalize_expansion(combined);
            out.fields[i] = std::move(combined);
        }
        last[{0, seqs[n - 1]}] = kInvSqrt2;
        last[{1, seqs[n - 2]}] = kInvSqrt2;
    }
    out.fields.push_back(std::move(last));
    return out;
}

ClassicalField materialize(const PpsCoefficients& coeffs, const SequenceSet& set) {
    ClassicalField f;
    f.mode0.assign(set.slots(), Complex(0.0));
    f.mode1.assign(set.slots(), Complex(0.0));
    for (const auto& [key, c] : coeffs) {
        const auto& seq = set.at(static_cast<std::size_t>(key.second));
        auto& mode = key.first == 0 ? f.mode0 : f.mode1;
        for (std::size_t k = 0; k < set.slots(); ++k) mode[k] += c * seq.phasor(k);
    }
    return f;
}

}  // namespace

CustomPreparation prepare_custom(std::span<const Complex> amplitudes, const SequenceSet& set) {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < amplitudes.size()) ++n;
    if ((std::size_t{1} << n) != amplitudes.size() || amplitudes.empty()) {
        throw MalformedInput("amplitude vector must have 2^n entries");
    }
    double norm = 0.0;
    for (const Complex& a : amplitudes) norm += std::norm(a);
    if (std::abs(norm - 1.0) > kInputNormTolerance) {
        throw MalformedInput("amplitude vector must be normalized");
    }
    require_usable(n, set);

    CustomPreparation result;
    result.ensemble = ensemble_shell(n, set);
    RecursionOutput symbolic =
        build_recursive(amplitudes, result.ensemble.pps_indices, result.diagnostics);
    for (std::size_t i = 0; i < n; ++i) {
        ClassicalField f = materialize(symbolic.fields[i], set);
        f.label = field_label(i);
        result.ensemble.fields.push_back(std::move(f));
    }
    return result;
}

}  // namespace ppsq
