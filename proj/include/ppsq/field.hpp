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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ppsq/sequences.hpp"

namespace ppsq {

/// A simulated particle: per-slot complex coefficients for the two orthogonal
/// modes |0) and |1).  Fields are immutable values; every transformation
/// returns a new field.
struct ClassicalField {
    std::vector<Complex> mode0;
    std::vector<Complex> mode1;
    std::string label;

    std::size_t slots() const { return mode0.size(); }
};

/// An ordered collection of fields sharing one slot count, together with the
/// sequence set and the indices of the nonzero sequences the preparation
/// declared.
struct FieldEnsemble {
    std::vector<ClassicalField> fields;
    std::vector<int> pps_indices;
    SequenceSet set;
    std::string set_source;  // path the set was loaded from, empty for inline

    std::size_t size() const { return fields.size(); }
    std::size_t slots() const { return fields.empty() ? set.slots() : fields.front().slots(); }
};

/// 2x2 unitary acting slotwise on the (mode0, mode1) pair, row-major.
struct ModeUnitary {
    std::array<Complex, 4> m;

    double unitarity_residual() const;
};

inline constexpr double kInputNormTolerance = 1e-9;

/// mode0[k] = alpha * exp(i phase_k), mode1[k] = beta * exp(i phase_k).
/// Rejects (alpha, beta) whose squared magnitudes do not sum to 1.
ClassicalField modulate(const PhaseSequence& pps, Complex alpha, Complex beta);

struct Superposition {
    ClassicalField field;      // renormalized to unit norm
    double normalization = 0;  // norm of the raw weighted sum
};

/// Slotwise weighted sum renormalized to (psi|psi) = 1.  A sum that cancels
/// to the zero field throws DegenerateSuperposition.
Superposition superpose(std::span<const ClassicalField> fields, std::span<const Complex> weights);

/// [[cos chi, -i e^{i theta} sin chi], [i e^{-i theta} sin chi, cos chi]].
ModeUnitary make_unitary(double chi, double theta);

ClassicalField apply_unitary(const ModeUnitary& u, const ClassicalField& f);

/// Beam splitter with power ratio power_a : power_b and per-output extra
/// phases on mode |1).  Lossless when power_a + power_b = 1.
std::pair<ClassicalField, ClassicalField> beam_split(const ClassicalField& f, double power_a,
                                                     double power_b, double phase_a,
                                                     double phase_b);

/// Mode splitter: first output carries mode |0) shifted by phase_a, second
/// carries mode |1) shifted by phase_b.
std::pair<ClassicalField, ClassicalField> mode_split(const ClassicalField& f, double phase_a,
                                                     double phase_b);

/// (1/N) sum_k [a0_k conj(b0_k) + a1_k conj(b1_k)].
Complex inner_product(const ClassicalField& a, const ClassicalField& b);

double field_norm(const ClassicalField& f);

/// f scaled to unit norm.
ClassicalField normalized(const ClassicalField& f);

}  // namespace ppsq
