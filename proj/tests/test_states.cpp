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

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "ppsq/demod.hpp"
#include "ppsq/errors.hpp"
#include "ppsq/oracle.hpp"
#include "ppsq/states.hpp"

using namespace ppsq;

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

SequenceSet the_set() { return build_sequence_set(2); }

double pipeline_fidelity(const FieldEnsemble& ensemble, const oracle::OracleState& want,
                         ReconstructionMode mode) {
    const auto state = reconstruct(build_matrix(ensemble), mode);
    return oracle::fidelity(want, oracle::from_state_vector(state));
}

}  // namespace

TEST_CASE("prepared fields are normalized and use n distinct sequences") {
    const SequenceSet set = the_set();
    for (const auto& ensemble :
         {prepare_product(4, set), prepare_bell(BellVariant::psi_plus, set),
          prepare_bell(BellVariant::phi_plus, set), prepare_ghz(set), prepare_w(set)}) {
        const std::set<int> distinct(ensemble.pps_indices.begin(), ensemble.pps_indices.end());
        CHECK(distinct.size() == ensemble.size());
        for (const auto& f : ensemble.fields) {
            CHECK(std::abs(inner_product(f, f) - Complex(1.0)) < 1e-9);
        }
    }
}

TEST_CASE("prepare_product shapes") {
    const SequenceSet set = the_set();

    SUBCASE("single particle reconstructs to the uniform qubit") {
        CHECK(pipeline_fidelity(prepare_product(1, set),
                                oracle::canonical_state(oracle::StateKind::product, 1),
                                ReconstructionMode::binary) == doctest::Approx(1.0));
    }

    SUBCASE("ten fields of length sixteen fit the capacity") {
        const auto ensemble = prepare_product(10, set);
        CHECK(ensemble.size() == 10);
        CHECK(ensemble.slots() == 16);
    }

    SUBCASE("capacity overflow is rejected") {
        CHECK_THROWS_AS((void)prepare_product(16, set), MalformedInput);
    }
}

TEST_CASE("prepare_bell builds the two pairings") {
    const SequenceSet set = the_set();
    const auto psi = prepare_bell(BellVariant::psi_plus, set);
    for (std::size_t k = 0; k < 16; ++k) {
        CHECK(std::abs(psi.fields[0].mode0[k] - set.at(1).phasor(k) * kInvSqrt2) < 1e-12);
        CHECK(std::abs(psi.fields[0].mode1[k] - set.at(2).phasor(k) * kInvSqrt2) < 1e-12);
        CHECK(std::abs(psi.fields[1].mode0[k] - set.at(2).phasor(k) * kInvSqrt2) < 1e-12);
        CHECK(std::abs(psi.fields[1].mode1[k] - set.at(1).phasor(k) * kInvSqrt2) < 1e-12);
    }
    const auto phi = prepare_bell(BellVariant::phi_plus, set);
    for (std::size_t k = 0; k < 16; ++k) {
        CHECK(std::abs(phi.fields[1].mode0[k] - set.at(1).phasor(k) * kInvSqrt2) < 1e-12);
        CHECK(std::abs(phi.fields[1].mode1[k] - set.at(2).phasor(k) * kInvSqrt2) < 1e-12);
    }
}

TEST_CASE("mode-flipping the second pair field turns psi-plus into phi-plus") {
    const SequenceSet set = the_set();
    FieldEnsemble ensemble = prepare_bell(BellVariant::psi_plus, set);
    ensemble.fields[1] = apply_unitary(make_unitary(1.5707963267948966, 0.0), ensemble.fields[1]);
    const auto flipped = build_matrix(ensemble);
    const auto direct = build_matrix(prepare_bell(BellVariant::phi_plus, set));
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            CHECK(flipped.at(i, j).quantized == direct.at(i, j).quantized);
        }
    }
}

TEST_CASE("splitter-built and direct identical triples yield the same matrix") {
    const SequenceSet set = the_set();
    const auto split = build_matrix(prepare_w(set));
    const auto direct = build_matrix(prepare_w_direct(set));
    REQUIRE(split.rows() == direct.rows());
    for (std::size_t i = 0; i < split.rows(); ++i) {
        for (std::size_t j = 0; j < split.cols(); ++j) {
            CHECK(split.at(i, j).quantized == direct.at(i, j).quantized);
            CHECK(std::abs(split.at(i, j).raw0 - direct.at(i, j).raw0) < 1e-12);
            CHECK(std::abs(split.at(i, j).raw1 - direct.at(i, j).raw1) < 1e-12);
        }
    }
}

TEST_CASE("prepare_custom") {
    const SequenceSet set = the_set();

    SUBCASE("pair amplitudes reproduce the pair block structure") {
        const std::vector<Complex> amps{Complex(kInvSqrt2), 0.0, 0.0, Complex(kInvSqrt2)};
        const auto prep = prepare_custom(amps, set);
        CHECK_FALSE(prep.diagnostics.collided);
        const auto matrix = build_matrix(prep.ensemble);
        CHECK(matrix.at(0, 0).quantized == std::array<int, 2>{1, 0});
        CHECK(matrix.at(0, 1).quantized == std::array<int, 2>{0, 1});
        CHECK(matrix.at(1, 0).quantized == std::array<int, 2>{0, 1});
        CHECK(matrix.at(1, 1).quantized == std::array<int, 2>{1, 0});
    }

    SUBCASE("a basis state gives pure fields and a diagonal matrix") {
        std::vector<Complex> amps(8, Complex(0.0));
        amps[0] = 1.0;  // |000>
        const auto prep = prepare_custom(amps, set);
        CHECK_FALSE(prep.diagnostics.collided);
        for (const auto& f : prep.ensemble.fields) {
            for (std::size_t k = 0; k < 16; ++k) CHECK(std::abs(f.mode1[k]) == 0.0);
        }
        const auto matrix = build_matrix(prep.ensemble);
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) {
                if (i == j) {
                    CHECK(matrix.at(i, j).quantized == std::array<int, 2>{1, 0});
                } else {
                    CHECK(matrix.at(i, j).is_zero());
                }
            }
        }
        CHECK(pipeline_fidelity(prep.ensemble, oracle::make_state(3, amps),
                                ReconstructionMode::amplitude) == doctest::Approx(1.0));
    }

    SUBCASE("every two-particle state reconstructs exactly in amplitude mode") {
        std::mt19937_64 rng(2024);
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (int trial = 0; trial < 25; ++trial) {
            std::vector<Complex> amps(4);
            double norm = 0.0;
            for (auto& a : amps) {
                a = Complex(gauss(rng), gauss(rng));
                norm += std::norm(a);
            }
            for (auto& a : amps) a /= std::sqrt(norm);
            const auto prep = prepare_custom(amps, set);
            CHECK_FALSE(prep.diagnostics.collided);
            CHECK(pipeline_fidelity(prep.ensemble, oracle::make_state(2, amps),
                                    ReconstructionMode::amplitude) ==
                  doctest::Approx(1.0).epsilon(1e-10));
        }
    }

    SUBCASE("uniform three-particle pair-of-extremes amplitudes reconstruct exactly") {
        std::vector<Complex> amps(8, Complex(0.0));
        amps[0] = amps[7] = kInvSqrt2;
        const auto prep = prepare_custom(amps, set);
        CHECK_FALSE(prep.diagnostics.collided);
        CHECK(pipeline_fidelity(prep.ensemble, oracle::make_state(3, amps),
                                ReconstructionMode::binary) == doctest::Approx(1.0));
        CHECK(pipeline_fidelity(prep.ensemble, oracle::make_state(3, amps),
                                ReconstructionMode::amplitude) == doctest::Approx(1.0));
    }

    SUBCASE("non-uniform weights on |000> and |111> document the cubing effect") {
        // each of the two surviving rotations multiplies the branch weight
        // once per weighted field, so the reconstructed amplitudes are the
        // squares of the originals before normalization; the closed-form
        // fidelity is (a^3 + d^3)^2 / (a^4 + d^4) with the third, balanced
        // field contributing equally to both terms
        const double a = 0.8, d = 0.6;
        std::vector<Complex> amps(8, Complex(0.0));
        amps[0] = a;
        amps[7] = d;
        const auto prep = prepare_custom(amps, set);
        CHECK_FALSE(prep.diagnostics.collided);
        const double expected =
            std::pow(a * a * a + d * d * d, 2.0) / (std::pow(a, 4.0) + std::pow(d, 4.0));
        CHECK(pipeline_fidelity(prep.ensemble, oracle::make_state(3, amps),
                                ReconstructionMode::amplitude) ==
              doctest::Approx(expected).epsilon(1e-10));
    }

    SUBCASE("single-excitation amplitudes fall outside the cyclic mechanism") {
        // the recursion produces a legitimate ensemble whose matrix has only
        // one viable rotation; the reconstruction lands on
        // (|000> + |100>)/sqrt 2 at fidelity 1/6 instead of the target
        std::vector<Complex> amps(8, Complex(0.0));
        const double third = 1.0 / std::sqrt(3.0);
        amps[4] = amps[2] = amps[1] = third;
        const auto prep = prepare_custom(amps, set);
        CHECK_FALSE(prep.diagnostics.collided);
        const auto state = reconstruct(build_matrix(prep.ensemble), ReconstructionMode::amplitude);
        std::vector<Complex> landed(8, Complex(0.0));
        landed[0] = landed[4] = kInvSqrt2;
        CHECK(oracle::fidelity(oracle::make_state(3, landed),
                               oracle::from_state_vector(state)) ==
              doctest::Approx(1.0).epsilon(1e-10));
        CHECK(oracle::fidelity(oracle::make_state(3, amps), oracle::from_state_vector(state)) ==
              doctest::Approx(1.0 / 6.0).epsilon(1e-10));
    }

    SUBCASE("dense three-particle states collide on the shared sequence") {
        std::mt19937_64 rng(99);
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::vector<Complex> amps(8);
        double norm = 0.0;
        for (auto& a : amps) {
            a = Complex(gauss(rng), gauss(rng));
            norm += std::norm(a);
        }
        for (auto& a : amps) a /= std::sqrt(norm);
        const auto prep = prepare_custom(amps, set);
        CHECK(prep.diagnostics.collided);
        CHECK_FALSE(prep.diagnostics.collision_sites.empty());
    }

    SUBCASE("recursion uses exactly n fields and n sequences") {
        std::vector<Complex> amps(16, Complex(0.25));
        const auto prep = prepare_custom(amps, set);
        CHECK(prep.ensemble.size() == 4);
        CHECK(prep.ensemble.pps_indices == std::vector<int>{1, 2, 3, 4});
    }

    SUBCASE("rejections") {
        const std::vector<Complex> unnormalized{Complex(1.0), Complex(1.0)};
        CHECK_THROWS_AS((void)prepare_custom(unnormalized, set), MalformedInput);
        const std::vector<Complex> odd(3, Complex(0.5));
        CHECK_THROWS_AS((void)prepare_custom(odd, set), MalformedInput);
    }
}
