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

#include "ppsq/pipeline.hpp"

#include <chrono>
#include <algorithm>
#include <cstdlib>

#include "ppsq/errors.hpp"

namespace ppsq::pipeline {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

io::json RunReport::to_json() const {
    io::json j;
    io::json stage_list = io::json::array();
    for (const StageRecord& s : stages) {
        io::json sj;
        sj["stage"] = s.name;
        sj["inputs"] = s.input_digests;
        sj["output"] = s.output_digest;
        sj["ms"] = s.milliseconds;
        sj["residuals"] = s.residuals;
        stage_list.push_back(std::move(sj));
    }
    j["stages"] = std::move(stage_list);
    j["verdict"] = pass ? "pass" : "fail";
    if (!detail.empty()) j["detail"] = detail;
    return j;
}

double default_tau() {
    if (const char* env = std::getenv("PPSQ_TAU")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end == env || *end != '\0' || v <= 0.0) {
            throw MalformedInput("PPSQ_TAU must be a positive number");
        }
        return v;
    }
    return kDefaultTau;
}

FieldEnsemble prepare_state(oracle::StateKind kind, std::size_t n,
                            std::span<const Complex> custom_amplitudes, const SequenceSet& set,
                            CustomDiagnostics* diagnostics) {
    using oracle::StateKind;
    switch (kind) {
        case StateKind::product:
            return prepare_product(n, set);
        case StateKind::bell_psi_plus:
            return prepare_bell(BellVariant::psi_plus, set);
        case StateKind::bell_phi_plus:
            return prepare_bell(BellVariant::phi_plus, set);
        case StateKind::ghz:
            return prepare_ghz(set);
        case StateKind::w:
            return prepare_w(set);
        case StateKind::custom: {
            CustomPreparation prep = prepare_custom(custom_amplitudes, set);
            if (diagnostics) *diagnostics = prep.diagnostics;
            return std::move(prep.ensemble);
        }
    }
    throw MalformedInput("unknown state kind");
}

RunReport run_pipeline(const PipelineOptions& options) {
    namespace fs = std::filesystem;
    RunReport report;
    fs::create_directories(options.outdir);

    // gen
    auto t0 = Clock::now();
    SequenceSet set = build_sequence_set(options.degree);
    const io::json set_json = io::to_json(set);
    io::save_json(set_json, options.outdir / "sequences.json");
    {
        const PropertyReport props = verify_set_properties(set, {.parallel = options.parallel});
        StageRecord stage;
        stage.name = "gen";
        stage.output_digest = io::digest(set_json);
        stage.milliseconds = ms_since(t0);
        stage.residuals = io::to_json(props);
        report.stages.push_back(std::move(stage));
        if (!props.usable()) {
            report.detail = "sequence set failed its usability properties";
            return report;
        }
    }

    // prepare
    t0 = Clock::now();
    std::size_t n = options.n;
    if (options.kind == oracle::StateKind::bell_psi_plus ||
        options.kind == oracle::StateKind::bell_phi_plus) {
        n = 2;
    } else if (options.kind == oracle::StateKind::ghz || options.kind == oracle::StateKind::w) {
        n = 3;
    } else if (options.kind == oracle::StateKind::custom) {
        n = 0;
        while ((std::size_t{1} << n) < options.custom_amplitudes.size()) ++n;
    }
    CustomDiagnostics diagnostics;
    FieldEnsemble ensemble =
        prepare_state(options.kind, n, options.custom_amplitudes, set, &diagnostics);
    ensemble.set_source = "sequences.json";
    const io::json ensemble_json = io::to_json(ensemble);
    io::save_json(ensemble_json, options.outdir / "ensemble.json");
    {
        StageRecord stage;
        stage.name = "prepare";
        stage.input_digests["sequences"] = io::digest(set_json);
        stage.output_digest = io::digest(ensemble_json);
        stage.milliseconds = ms_since(t0);
        double worst_norm = 0.0;
        for (const auto& f : ensemble.fields) {
            worst_norm = std::max(worst_norm, std::abs(field_norm(f) - 1.0));
        }
        stage.residuals["worst_norm_residual"] = worst_norm;
        if (options.kind == oracle::StateKind::custom) {
            stage.residuals["sequence_collision"] = diagnostics.collided;
            stage.residuals["collision_sites"] = diagnostics.collision_sites;
        }
        report.stages.push_back(std::move(stage));
    }

    // demod
    t0 = Clock::now();
    const ModeStatusMatrix matrix =
        build_matrix(ensemble, DemodOptions{.tau = options.tau, .parallel = options.parallel});
    const io::json matrix_json = io::to_json(matrix);
    io::save_json(matrix_json, options.outdir / "matrix.json");
    {
        StageRecord stage;
        stage.name = "demod";
        stage.input_digests["ensemble"] = io::digest(ensemble_json);
        stage.input_digests["sequences"] = io::digest(set_json);
        stage.output_digest = io::digest(matrix_json);
        stage.milliseconds = ms_since(t0);
        // round trip: the raw entries must reproduce the fields exactly
        double worst = 0.0;
        const auto rebuilt = rebuild_fields(matrix, set);
        for (std::size_t i = 0; i < rebuilt.size(); ++i) {
            for (std::size_t k = 0; k < rebuilt[i].slots(); ++k) {
                worst = std::max(worst,
                                 std::abs(rebuilt[i].mode0[k] - ensemble.fields[i].mode0[k]));
                worst = std::max(worst,
                                 std::abs(rebuilt[i].mode1[k] - ensemble.fields[i].mode1[k]));
            }
        }
        stage.residuals["round_trip_residual"] = worst;
        report.stages.push_back(std::move(stage));
    }

    // reconstruct
    t0 = Clock::now();
    ReconstructionMode mode = options.mode.value_or(options.kind == oracle::StateKind::custom
                                                        ? ReconstructionMode::amplitude
                                                        : ReconstructionMode::binary);
    const StateVector state = reconstruct(matrix, mode);
    const io::json state_json = io::to_json(state);
    io::save_json(state_json, options.outdir / "state.json");
    {
        StageRecord stage;
        stage.name = "reconstruct";
        stage.input_digests["matrix"] = io::digest(matrix_json);
        stage.output_digest = io::digest(state_json);
        stage.milliseconds = ms_since(t0);
        stage.residuals["mode"] = mode_name(mode);
        report.stages.push_back(std::move(stage));
    }

    // measure (optional)
    if (options.shots > 0) {
        t0 = Clock::now();
        const MeasurementHistogram histogram =
            sample_measurement(matrix, options.seed, options.shots);
        const io::json histogram_json = io::to_json(histogram);
        io::save_json(histogram_json, options.outdir / "histogram.json");
        StageRecord stage;
        stage.name = "measure";
        stage.input_digests["matrix"] = io::digest(matrix_json);
        stage.output_digest = io::digest(histogram_json);
        stage.milliseconds = ms_since(t0);
        stage.residuals["shots"] = options.shots;
        report.stages.push_back(std::move(stage));
    }

    // verify
    t0 = Clock::now();
    oracle::OracleState expected =
        options.kind == oracle::StateKind::custom
            ? oracle::make_state(n, options.custom_amplitudes)
            : oracle::canonical_state(options.kind, n);
    const double fid = oracle::fidelity(expected, oracle::from_state_vector(state));
    {
        StageRecord stage;
        stage.name = "verify";
        stage.input_digests["state"] = io::digest(state_json);
        stage.milliseconds = ms_since(t0);
        stage.residuals["fidelity"] = fid;
        stage.residuals["tolerance"] = options.tolerance;
        report.stages.push_back(std::move(stage));
    }
    report.pass = fid >= 1.0 - options.tolerance;
    if (!report.pass) {
        report.detail = "fidelity " + std::to_string(fid) + " below 1 - tolerance";
    }
    return report;
}

}  // namespace ppsq::pipeline
