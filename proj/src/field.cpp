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

#include "ppsq/field.hpp"

#include <cmath>

#include "ppsq/errors.hpp"

namespace ppsq {

double ModeUnitary::unitarity_residual() const {
    // max |(U^dagger U - I)_{rc}|
    double worst = 0.0;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            Complex sum = 0.0;
            for (int k = 0; k < 2; ++k) {
                sum += std::conj(m[static_cast<std::size_t>(k * 2 + r)]) *
                       m[static_cast<std::size_t>(k * 2 + c)];
            }
            worst = std::max(worst, std::abs(sum - (r == c ? Complex(1.0) : Complex(0.0))));
        }
    }
    return worst;
}

ClassicalField modulate(const PhaseSequence& pps, Complex alpha, Complex beta) {
    const double power = std::norm(alpha) + std::norm(beta);
    if (std::abs(power - 1.0) > kInputNormTolerance) {
        throw MalformedInput("modulate requires |alpha|^2 + |beta|^2 = 1");
    }
    ClassicalField f;
    f.mode0.resize(pps.size());
    f.mode1.resize(pps.size());
    for (std::size_t k = 0; k < pps.size(); ++k) {
        const Complex p = pps.phasor(k);
        f.mode0[k] = alpha * p;
        f.mode1[k] = beta * p;
    }
    return f;
}

Superposition superpose(std::span<const ClassicalField> fields, std::span<const Complex> weights) {
    if (fields.empty()) throw MalformedInput("superpose needs at least one field");
    if (fields.size() != weights.size()) {
        throw MalformedInput("superpose needs one weight per field");
    }
    const std::size_t n = fields.front().slots();
    for (const auto& f : fields) {
        if (f.slots() != n) throw MalformedInput("superpose requires equal slot counts");
    }

    ClassicalField sum;
    sum.mode0.assign(n, Complex(0.0));
    sum.mode1.assign(n, Complex(0.0));
    for (std::size_t i = 0; i < fields.size(); ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            sum.mode0[k] += weights[i] * fields[i].mode0[k];
            sum.mode1[k] += weights[i] * fields[i].mode1[k];
        }
    }

    const double norm = field_norm(sum);
    if (norm < 1e-12) {
        throw DegenerateSuperposition("superposition cancelled to the zero field");
    }
    for (std::size_t k = 0; k < n; ++k) {
        sum.mode0[k] /= norm;
        sum.mode1[k] /= norm;
    }
    return {std::move(sum), norm};
}

ModeUnitary make_unitary(double chi, double theta) {
    // exp(i chi (sigma_x cos theta + sigma_y sin theta)); the generator
    // squares to the identity, so the exponential is
    // cos(chi) I + i sin(chi) [[0, e^{-i theta}], [e^{i theta}, 0]]
    const double c = std::cos(chi);
    const double s = std::sin(chi);
    const Complex i(0.0, 1.0);
    return ModeUnitary{{Complex(c), i * std::polar(s, -theta), i * std::polar(s, theta),
                        Complex(c)}};
}

ClassicalField apply_unitary(const ModeUnitary& u, const ClassicalField& f) {
    ClassicalField out;
    out.label = f.label;
    out.mode0.resize(f.slots());
    out.mode1.resize(f.slots());
    for (std::size_t k = 0; k < f.slots(); ++k) {
        out.mode0[k] = u.m[0] * f.mode0[k] + u.m[1] * f.mode1[k];
        out.mode1[k] = u.m[2] * f.mode0[k] + u.m[3] * f.mode1[k];
    }
    return out;
}

std::pair<ClassicalField, ClassicalField> beam_split(const ClassicalField& f, double power_a,
                                                     double power_b, double phase_a,
                                                     double phase_b) {
    if (power_a < 0.0 || power_b < 0.0 || power_a + power_b <= 0.0) {
        throw MalformedInput("beam_split power ratio must be nonnegative and not both zero");
    }
    const double total = power_a + power_b;
    const double ca = std::sqrt(power_a / total);
    const double cb = std::sqrt(power_b / total);
    const Complex ra = std::polar(1.0, phase_a);
    const Complex rb = std::polar(1.0, phase_b);

    ClassicalField a, b;
    a.mode0.resize(f.slots());
    a.mode1.resize(f.slots());
    b.mode0.resize(f.slots());
    b.mode1.resize(f.slots());
    for (std::size_t k = 0; k < f.slots(); ++k) {
        a.mode0[k] = ca * f.mode0[k];
        a.mode1[k] = ca * ra * f.mode1[k];
        b.mode0[k] = cb * f.mode0[k];
        b.mode1[k] = cb * rb * f.mode1[k];
    }
    return {std::move(a), std::move(b)};
}

std::pair<ClassicalField, ClassicalField> mode_split(const ClassicalField& f, double phase_a,
                                                     double phase_b) {
    const Complex ra = std::polar(1.0, phase_a);
    const Complex rb = std::polar(1.0, phase_b);
    ClassicalField a, b;
    a.mode0.resize(f.slots());
    a.mode1.assign(f.slots(), Complex(0.0));
    b.mode0.assign(f.slots(), Complex(0.0));
    b.mode1.resize(f.slots());
    for (std::size_t k = 0; k < f.slots(); ++k) {
        a.mode0[k] = ra * f.mode0[k];
        b.mode1[k] = rb * f.mode1[k];
    }
    return {std::move(a), std::move(b)};
}

Complex inner_product(const ClassicalField& a, const ClassicalField& b) {
    if (a.slots() != b.slots()) throw MalformedInput("inner_product requires equal slot counts");
    Complex sum = 0.0;
    for (std::size_t k = 0; k < a.slots(); ++k) {
        sum += a.mode0[k] * std::conj(b.mode0[k]) + a.mode1[k] * std::conj(b.mode1[k]);
    }
    return sum / static_cast<double>(a.slots());
}

double field_norm(const ClassicalField& f) {
    double sum = 0.0;
    for (std::size_t k = 0; k < f.slots(); ++k) {
        sum += std::norm(f.mode0[k]) + std::norm(f.mode1[k]);
    }
    return std::sqrt(sum / static_cast<double>(f.slots()));
}

ClassicalField normalized(const ClassicalField& f) {
    const double norm = field_norm(f);
    if (norm < 1e-12) throw DegenerateSuperposition("cannot normalize the zero field");
    ClassicalField out;
    out.label = f.label;
    out.mode0.resize(f.slots());
    out.mode1.resize(f.slots());
    for (std::size_t k = 0; k < f.slots(); ++k) {
        out.mode0[k] = f.mode0[k] / norm;
        out.mode1[k] = f.mode1[k] / norm;
    }
    return out;
}

}  // namespace ppsq
