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

#include <span>
#include <string>
#include <vector>

#include "ppsq/field.hpp"
#include "ppsq/oracle.hpp"

namespace ppsq {

/// Named families use the first n usable sequences in index order.

/// Field i = modulate(lambda^(i), 1/sqrt 2, 1/sqrt 2).
FieldEnsemble prepare_product(std::size_t n, const SequenceSet& set);

enum class BellVariant { psi_plus, phi_plus };

/// psi_plus pairs the two fields as (a,b), (b,a); phi_plus flips the modes of
/// the second field so its sequences tag |1) and |0) instead.
FieldEnsemble prepare_bell(BellVariant variant, const SequenceSet& set);

/// Cyclic pairing (a,b), (b,c), (c,a), each field a balanced two-sequence
/// superposition.
FieldEnsemble prepare_ghz(const SequenceSet& set);

/// Three copies of one source field carrying lambda^(a) on |1) and
/// lambda^(b), lambda^(c) on |0).  Built by splitting the source twice with
/// balanced beam splitters and renormalizing each output.
FieldEnsemble prepare_w(const SequenceSet& set);

/// Same ensemble written down directly, without the splitters.
FieldEnsemble prepare_w_direct(const SequenceSet& set);

struct CustomDiagnostics {
    bool collided = false;
    std::vector<std::string> collision_sites;  // "field f3 mode 0 sequence 1", ...
};

struct CustomPreparation {
    FieldEnsemble ensemble;
    CustomDiagnostics diagnostics;
};

/// Recursive construction for an arbitrary n-particle amplitude vector
/// (first particle = most significant bit).  The state is split on its last
/// particle into a |0) branch over sequences (s_1..s_{n-1}) and a |1) branch
/// over (s_1..s_{n-2}, s_n); branch fields are combined weighted by the
/// branch norms, and the added n-th field carries s_n on |0) and s_{n-1} on
/// |1), balanced when both branches survive.  Because the branches share all
/// but one sequence, their contributions can land on the same (mode,
/// sequence) slot of a shared field; such collisions are reported in the
/// diagnostics instead of being silently absorbed.
CustomPreparation prepare_custom(std::span<const Complex> amplitudes, const SequenceSet& set);

}  // namespace ppsq
