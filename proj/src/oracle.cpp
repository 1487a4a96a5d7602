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

#include "ppsq/oracle.hpp"

#include <cmath>

#include "ppsq/errors.hpp"

namespace ppsq::oracle {

StateKind parse_state_kind(const std::string& name) {
    if (name == "product") return StateKind::product;
    if (name == "bell-psi-plus") return StateKind::bell_psi_plus;
    if (name == "bell-phi-plus") return StateKind::bell_phi_plus;
    if (name == "ghz") return StateKind::ghz;
    if (name == "w") return StateKind::w;
    if (name == "custom") return StateKind::custom;
    throw MalformedInput("unknown state kind: " + name);
}

std::string state_kind_name(StateKind kind) {
    switch (kind) {
        case StateKind::product: return "product";
        case StateKind::bell_psi_plus: return "bell-psi-plus";
        case StateKind::bell_phi_plus: return "bell-phi-plus";
        case StateKind::ghz: return "ghz";
        case StateKind::w: return "w";
        case StateKind::custom: return "custom";
    }
    return "custom";
}

OracleState make_state(std::size_t n, std::vector<Complex> amplitudes) {
    if (n > kMaxQubits) throw MalformedInput("oracle is capped at 20 qubits");
    if (amplitudes.size() != (std::size_t{1} << n)) {
        throw MalformedInput("amplitude vector must have 2^n entries");
    }
    double norm = 0.0;
    for (const Complex& a : amplitudes) norm += std::norm(a);
    norm = std::sqrt(norm);
    if (std::abs(norm - 1.0) > 1e-9) throw MalformedInput("oracle state must be normalized");
    for (Complex& a : amplitudes) a /= norm;
    return {n, std::move(amplitudes)};
}

OracleState from_state_vector(const StateVector& state) {
    return make_state(state.n, state.amplitudes);
}

OracleState tensor(const OracleState& a, const OracleState& b) {
    OracleState out;
    out.n = a.n + b.n;
    if (out.n > kMaxQubits) throw MalformedInput("oracle is capped at 20 qubits");
    out.amplitudes.resize(a.amplitudes.size() * b.amplitudes.size());
    for (std::size_t i = 0; i < a.amplitudes.size(); ++i) {
        for (std::size_t j = 0; j < b.amplitudes.size(); ++j) {
            out.amplitudes[(i << b.n) | j] = a.amplitudes[i] * b.amplitudes[j];
        }
    }
    return out;
}

double fidelity(const OracleState& a, const OracleState& b) {
    if (a.n != b.n) throw MalformedInput("fidelity requires equal qubit counts");
    Complex overlap = 0.0;
    for (std::size_t i = 0; i < a.amplitudes.size(); ++i) {
        overlap += std::conj(a.amplitudes[i]) * b.amplitudes[i];
    }
    return std::norm(overlap);
}

OracleState canonical_state(StateKind kind, std::size_t n) {
    if (n == 0 || n > kMaxQubits) throw MalformedInput("qubit count out of range");
    const std::size_t dim = std::size_t{1} << n;
    std::vector<Complex> amps(dim, Complex(0.0));
    switch (kind) {
        case StateKind::product: {
            const double a = std::pow(2.0, -static_cast<double>(n) / 2.0);
            for (Complex& c : amps) c = a;
            break;
        }
        case StateKind::bell_psi_plus:
            if (n != 2) throw MalformedInput("bell states have two particles");
            amps[0b00] = amps[0b11] = 1.0 / std::sqrt(2.0);
            break;
        case StateKind::bell_phi_plus:
            if (n != 2) throw MalformedInput("bell states have two particles");
            amps[0b01] = amps[0b10] = 1.0 / std::sqrt(2.0);
            break;
        case StateKind::ghz:
            if (n < 2) throw MalformedInput("ghz needs at least two particles");
            amps[0] = amps[dim - 1] = 1.0 / std::sqrt(2.0);
            break;
        case StateKind::w: {
            if (n < 2) throw MalformedInput("w needs at least two particles");
            const double a = 1.0 / std::sqrt(static_cast<double>(n));
            for (std::size_t i = 0; i < n; ++i) amps[std::size_t{1} << i] = a;
            break;
        }
        case StateKind::custom:
            throw MalformedInput("custom states have no canonical amplitude vector");
    }
    return {n, std::move(amps)};
}

}  // namespace ppsq::oracle
