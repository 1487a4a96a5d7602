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

#include <cstdio>
#include <filesystem>

#include "ppsq/errors.hpp"
#include "ppsq/io.hpp"
#include "ppsq/states.hpp"

using namespace ppsq;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("ppsq_io_" + std::to_string(std::rand()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("sequence set round trip") {
    const SequenceSet set = build_sequence_set(2);
    const auto j = io::to_json(set);
    const SequenceSet loaded = io::sequence_set_from_json(j);
    CHECK(loaded == set);
    CHECK(io::digest(io::to_json(loaded)) == io::digest(j));
}

TEST_CASE("ensemble round trip with inline set") {
    const SequenceSet set = build_sequence_set(2);
    const FieldEnsemble ensemble = prepare_bell(BellVariant::psi_plus, set);
    const auto j = io::to_json(ensemble);
    const FieldEnsemble loaded = io::ensemble_from_json(j, ".");
    REQUIRE(loaded.size() == 2);
    CHECK(loaded.pps_indices == ensemble.pps_indices);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t k = 0; k < 16; ++k) {
            CHECK(loaded.fields[i].mode0[k] == ensemble.fields[i].mode0[k]);
            CHECK(loaded.fields[i].mode1[k] == ensemble.fields[i].mode1[k]);
        }
    }
}

TEST_CASE("ensemble referencing the set by relative path") {
    TempDir dir;
    const SequenceSet set = build_sequence_set(2);
    io::save_json(io::to_json(set), dir.path / "seqs.json");
    FieldEnsemble ensemble = prepare_ghz(set);
    ensemble.set_source = "seqs.json";
    io::save_json(io::to_json(ensemble), dir.path / "ensemble.json");

    const auto loaded = io::ensemble_from_json(io::load_json(dir.path / "ensemble.json"), dir.path);
    CHECK(loaded.set == set);
    CHECK(loaded.set_source == "seqs.json");
}

TEST_CASE("matrix round trip preserves raw values and quantization") {
    const SequenceSet set = build_sequence_set(2);
    const auto matrix = build_matrix(prepare_ghz(set));
    const auto loaded = io::matrix_from_json(io::to_json(matrix));
    REQUIRE(loaded.rows() == 3);
    REQUIRE(loaded.cols() == 3);
    CHECK(loaded.col_sequences == matrix.col_sequences);
    CHECK(loaded.row_labels == matrix.row_labels);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(loaded.at(i, j).raw0 == matrix.at(i, j).raw0);
            CHECK(loaded.at(i, j).raw1 == matrix.at(i, j).raw1);
            CHECK(loaded.at(i, j).quantized == matrix.at(i, j).quantized);
        }
    }
}

TEST_CASE("state vector and histogram round trips") {
    const SequenceSet set = build_sequence_set(2);
    const auto matrix = build_matrix(prepare_bell(BellVariant::psi_plus, set));
    const StateVector state = reconstruct(matrix, ReconstructionMode::binary);
    const StateVector loaded = io::state_vector_from_json(io::to_json(state));
    CHECK(loaded.n == 2);
    CHECK(loaded.qubit_order == state.qubit_order);
    for (std::size_t i = 0; i < 4; ++i) CHECK(loaded.amplitudes[i] == state.amplitudes[i]);

    const auto histogram = sample_measurement(matrix, 9, 100);
    const auto loaded_hist = io::histogram_from_json(io::to_json(histogram));
    CHECK(loaded_hist.counts == histogram.counts);
    CHECK(loaded_hist.seed == 9);
    CHECK(loaded_hist.shots == 100);
}

TEST_CASE("canonical dump sorts keys and pins float formatting") {
    io::json a;
    a["b"] = 0.1;
    a["a"] = 1;
    CHECK(io::canonical_dump(a) == "{\"a\":1,\"b\":0.10000000000000001}");
    io::json arr = io::json::array({io::json::object({{"z", true}, {"y", nullptr}})});
    CHECK(io::canonical_dump(arr) == "[{\"y\":null,\"z\":true}]");
}

TEST_CASE("digests are stable and sensitive") {
    const SequenceSet set = build_sequence_set(2);
    const auto j = io::to_json(set);
    CHECK(io::digest(j) == io::digest(j));
    auto mutated = j;
    mutated["s"] = 3;
    CHECK(io::digest(j) != io::digest(mutated));
}

TEST_CASE("save and load reject bad paths and bad JSON") {
    TempDir dir;
    CHECK_THROWS_AS((void)io::load_json(dir.path / "missing.json"), MalformedInput);
    {
        std::FILE* f = std::fopen((dir.path / "broken.json").c_str(), "w");
        std::fputs("{not json", f);
        std::fclose(f);
    }
    CHECK_THROWS_AS((void)io::load_json(dir.path / "broken.json"), MalformedInput);
    io::json good;
    good["k"] = 1;
    CHECK_THROWS_AS(io::save_json(good, dir.path / "no_dir" / "x.json"), MalformedInput);
}

TEST_CASE("malformed artifacts are rejected with MalformedInput") {
    io::json j;
    j["p"] = 2;
    CHECK_THROWS_AS((void)io::sequence_set_from_json(j), MalformedInput);

    io::json state;
    state["n"] = 2;
    state["amplitudes"] = io::json::array({io::json::array({1.0, 0.0})});
    CHECK_THROWS_AS((void)io::state_vector_from_json(state), MalformedInput);
}
