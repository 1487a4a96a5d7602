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

#include "ppsq/gf4.hpp"

#include <algorithm>
#include <cstddef>

#include "ppsq/errors.hpp"

namespace ppsq::gf4 {

namespace {

void check_polynomial(const Polynomial& p) {
    if (p.coefficients.empty() || p.coefficients.front() != 1) {
        throw MalformedInput("polynomial must be monic with explicit leading coefficient");
    }
    for (Element c : p.coefficients) {
        if (c > 3) throw MalformedInput("polynomial coefficient outside GF(4)");
    }
}

// Advances state (a_k,...,a_{k+s-1}) -> (a_{k+1},...,a_{k+s}).
void step(const Polynomial& p, std::vector<Element>& state) {
    const std::size_t s = state.size();
    Element next = 0;
    for (std::size_t t = 0; t < s; ++t) {
        // coefficient of x^(s-1-t) multiplies a_{k+s-1-t}
        next = add(next, mul(p.coefficients[1 + t], state[s - 1 - t]));
    }
    for (std::size_t i = 0; i + 1 < s; ++i) state[i] = state[i + 1];
    state[s - 1] = next;
}

std::size_t pow4(int s) {
    std::size_t v = 1;
    for (int i = 0; i < s; ++i) v *= 4;
    return v;
}

}  // namespace

MSequence lfsr_generate(const Polynomial& polynomial, std::span<const Element> seed,
                        std::size_t length) {
    check_polynomial(polynomial);
    const int s = polynomial.degree();
    if (static_cast<int>(seed.size()) != s) {
        throw MalformedInput("seed must hold exactly degree-many symbols");
    }
    if (std::all_of(seed.begin(), seed.end(), [](Element e) { return e == 0; })) {
        throw MalformedInput("all-zero seed would emit the constant zero sequence");
    }
    for (Element e : seed) {
        if (e > 3) throw MalformedInput("seed symbol outside GF(4)");
    }

    MSequence out;
    out.degree = s;
    out.polynomial = polynomial;
    out.symbols.reserve(length);
    std::vector<Element> state(seed.begin(), seed.end());
    for (std::size_t k = 0; k < length; ++k) {
        out.symbols.push_back(state[0]);
        step(polynomial, state);
    }
    return out;
}

std::size_t lfsr_period(const Polynomial& polynomial) {
    check_polynomial(polynomial);
    const int s = polynomial.degree();
    std::vector<Element> start(static_cast<std::size_t>(s), 0);
    start.back() = 1;
    std::vector<Element> state = start;
    const std::size_t limit = pow4(s) - 1;
    for (std::size_t n = 1; n <= limit; ++n) {
        step(polynomial, state);
        if (state == start) return n;
    }
    return 0;
}

std::vector<Polynomial> find_primitive_polynomials(int degree) {
    if (degree < 1) throw MalformedInput("degree must be at least 1");
    const std::size_t combos = pow4(degree);
    const std::size_t full = combos - 1;
    std::vector<Polynomial> out;
    for (std::size_t code = 0; code < combos; ++code) {
        Polynomial p;
        p.coefficients.resize(static_cast<std::size_t>(degree) + 1);
        p.coefficients[0] = 1;
        std::size_t rest = code;
        // decode most significant coefficient first so iteration order is
        // already lexicographic
        for (int i = degree; i >= 1; --i) {
            p.coefficients[static_cast<std::size_t>(i)] = static_cast<Element>(rest & 3);
            rest >>= 2;
        }
        if (p.coefficients.back() == 0) continue;  // x divides p, not primitive
        if (lfsr_period(p) == full) out.push_back(std::move(p));
    }
    return out;
}

}  // namespace ppsq::gf4
