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

#include <string>
#include <vector>

#include "ppsq/reconstruct.hpp"

namespace ppsq::oracle {

/// Brute-force dense state vector used only to check reconstructions.
struct OracleState {
    std::size_t n = 0;
    std::vector<Complex> amplitudes;
};

inline constexpr std::size_t kMaxQubits = 20;

enum class StateKind { product, bell_psi_plus, bell_phi_plus, ghz, w, custom };

StateKind parse_state_kind(const std::string& name);
std::string state_kind_name(StateKind kind);

OracleState make_state(std::size_t n, std::vector<Complex> amplitudes);
OracleState from_state_vector(const StateVector& state);

/// Kronecker product; the left operand supplies the most significant bits.
OracleState tensor(const OracleState& a, const OracleState& b);

/// |<a|b>|^2.
double fidelity(const OracleState& a, const OracleState& b);

/// Textbook amplitude vectors.  Naming of the two-particle pairs follows the
/// convention used throughout this project: psi-plus is (|00> + |11>)/sqrt(2)
/// and phi-plus is (|01> + |10>)/sqrt(2).
OracleState canonical_state(StateKind kind, std::size_t n);

}  // namespace ppsq::oracle
