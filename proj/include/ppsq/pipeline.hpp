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
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ppsq/io.hpp"
#include "ppsq/oracle.hpp"
#include "ppsq/states.hpp"

namespace ppsq::pipeline {

struct StageRecord {
    std::string name;
    std::map<std::string, std::string> input_digests;
    std::string output_digest;
    double milliseconds = 0.0;
    io::json residuals = io::json::object();
};

struct RunReport {
    std::vector<StageRecord> stages;
    bool pass = false;
    std::string detail;

    io::json to_json() const;
};

/// Quantization threshold, overridable through the PPSQ_TAU environment
/// variable.
double default_tau();

struct PipelineOptions {
    oracle::StateKind kind = oracle::StateKind::product;
    std::size_t n = 1;  // ignored for the fixed-size families
    int degree = 2;
    std::optional<ReconstructionMode> mode;  // binary unless custom
    std::vector<Complex> custom_amplitudes;
    std::size_t shots = 0;
    std::uint64_t seed = 0;
    double tolerance = 1e-9;
    double tau = default_tau();
    bool parallel = true;
    std::filesystem::path outdir = ".";
};

/// gen -> prepare -> demod -> reconstruct [-> measure] -> verify, writing
/// sequences.json, ensemble.json, matrix.json, state.json and optionally
/// histogram.json under outdir.  Each stage is the same library call the
/// standalone subcommands make, so artifact digests agree between a pipeline
/// run and a staged run.
RunReport run_pipeline(const PipelineOptions& options);

/// Prepares the requested family on the first usable sequences of the set.
FieldEnsemble prepare_state(oracle::StateKind kind, std::size_t n,
                            std::span<const Complex> custom_amplitudes, const SequenceSet& set,
                            CustomDiagnostics* diagnostics = nullptr);

}  // namespace ppsq::pipeline
