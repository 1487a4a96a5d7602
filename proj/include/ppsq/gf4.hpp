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

#include <cstdint>
#include <span>
#include <vector>

namespace ppsq::gf4 {

/// One element of GF(4) = GF(2)[x]/(x^2+x+1), encoded as an integer in
/// {0,1,2,3} with 0 -> 0, 1 -> 1, 2 -> x, 3 -> x+1.  Addition is XOR of the
/// two-bit encoding (characteristic 2), so every element is its own additive
/// inverse.
using Element = std::uint8_t;

inline constexpr int kOrder = 4;

constexpr Element add(Element a, Element b) { return static_cast<Element>(a ^ b); }

constexpr Element mul(Element a, Element b) {
    constexpr Element table[4][4] = {
        {0, 0, 0, 0},
        {0, 1, 2, 3},
        {0, 2, 3, 1},
        {0, 3, 1, 2},
    };
    return table[a][b];
}

/// Monic polynomial over GF(4), coefficients stored from the highest degree
/// down: x^2 + x + 2 is {1, 1, 2}.  The leading coefficient is always 1.
struct Polynomial {
    std::vector<Element> coefficients;

    int degree() const { return static_cast<int>(coefficients.size()) - 1; }
    bool operator==(const Polynomial&) const = default;
    bool operator<(const Polynomial& other) const { return coefficients < other.coefficients; }
};

/// Maximal-period LFSR output: period 4^s - 1 for degree s, each nonzero
/// symbol occurring 4^(s-1) times per period and the zero symbol one time
/// fewer.
struct MSequence {
    std::vector<Element> symbols;
    int degree = 0;
    Polynomial polynomial;
};

/// Steps the linear recurrence a_{k+s} = sum_t c_{s-1-t} a_{k+s-1-t} defined
/// by the monic polynomial, emitting `length` symbols.  The seed holds
/// (a_0, ..., a_{s-1}) and must not be all zero.
MSequence lfsr_generate(const Polynomial& polynomial, std::span<const Element> seed,
                        std::size_t length);

/// Period of the LFSR state orbit started from (0,...,0,1), or 0 if the state
/// does not return within 4^s - 1 steps.
std::size_t lfsr_period(const Polynomial& polynomial);

/// All monic degree-s polynomials whose LFSR runs through every nonzero state
/// in a single cycle (period exactly 4^s - 1), in lexicographic coefficient
/// order.  There are phi(4^s - 1)/s of them.
std::vector<Polynomial> find_primitive_polynomials(int degree);

}  // namespace ppsq::gf4
