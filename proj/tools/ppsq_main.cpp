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

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ppsq/errors.hpp"
#include "ppsq/io.hpp"
#include "ppsq/pipeline.hpp"

namespace fs = std::filesystem;
using namespace ppsq;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitMalformedInput = 2;
constexpr int kExitNonReconstructible = 3;

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void write_report(const pipeline::RunReport& report, const std::string& path) {
    if (!path.empty()) io::save_json(report.to_json(), path);
}

pipeline::StageRecord make_stage(const std::string& name, double ms) {
    pipeline::StageRecord s;
    s.name = name;
    s.milliseconds = ms;
    return s;
}

std::vector<Complex> load_amplitudes(const std::string& path) {
    const StateVector sv = io::state_vector_from_json(io::load_json(path));
    return sv.amplitudes;
}

int cmd_gen(int degree, const std::string& out, const std::string& verify_path,
            const std::string& report_path, bool serial) {
    pipeline::RunReport report;
    const auto t0 = Clock::now();
    if (!verify_path.empty()) {
        const SequenceSet set = io::sequence_set_from_json(io::load_json(verify_path));
        const PropertyReport props = verify_set_properties(set, {.parallel = !serial});
        auto stage = make_stage("gen-verify", ms_since(t0));
        stage.input_digests["sequences"] = io::digest(io::to_json(set));
        stage.residuals = io::to_json(props);
        report.stages.push_back(std::move(stage));
        report.pass = props.usable();
        std::cout << "orthogonality (real part, all pairs): "
                  << (props.orthogonal_real ? "pass" : "FAIL")
                  << " (worst " << props.worst_real_residual << ")\n";
        std::cout << "orthogonality (complex, all pairs):   "
                  << (props.orthogonal_complex ? "pass" : "FAIL") << " (worst "
                  << props.worst_complex_residual << " at pair "
                  << props.worst_complex_pair.first << "," << props.worst_complex_pair.second
                  << "; " << props.complex_violations << " pairs off)\n";
        std::cout << "balance:                              "
                  << (props.balanced ? "pass" : (props.balance_checked ? "FAIL" : "skipped"))
                  << " (worst " << props.worst_balance_residual << ")\n";
        std::cout << "closure (GF(4) elementwise sum):      " << (props.closed ? "pass" : "FAIL")
                  << "\n";
        std::cout << "usable for modulation/demodulation:   " << (report.pass ? "yes" : "no")
                  << "\n";
        write_report(report, report_path);
        return report.pass ? kExitPass : kExitVerificationFailure;
    }

    const SequenceSet set = build_sequence_set(degree);
    const io::json j = io::to_json(set);
    io::save_json(j, out);
    auto stage = make_stage("gen", ms_since(t0));
    stage.output_digest = io::digest(j);
    report.stages.push_back(std::move(stage));
    report.pass = true;
    write_report(report, report_path);
    std::cout << "wrote " << set.size() << " sequences of length " << set.slots() << " to " << out
              << "\n";
    return kExitPass;
}

int cmd_prepare(const std::string& state, std::size_t n, const std::string& amps_path,
                const std::string& seqs_path, const std::string& out,
                const std::string& report_path) {
    const auto t0 = Clock::now();
    const io::json set_json = io::load_json(seqs_path);
    const SequenceSet set = io::sequence_set_from_json(set_json);
    const oracle::StateKind kind = oracle::parse_state_kind(state);

    std::vector<Complex> amplitudes;
    if (kind == oracle::StateKind::custom) {
        if (amps_path.empty()) throw MalformedInput("--state custom requires --amps");
        amplitudes = load_amplitudes(amps_path);
    }
    CustomDiagnostics diagnostics;
    FieldEnsemble ensemble = pipeline::prepare_state(kind, n, amplitudes, set, &diagnostics);
    ensemble.set_source = seqs_path;
    const io::json j = io::to_json(ensemble);
    io::save_json(j, out);

    pipeline::RunReport report;
    auto stage = make_stage("prepare", ms_since(t0));
    stage.input_digests["sequences"] = io::digest(set_json);
    stage.output_digest = io::digest(j);
    if (kind == oracle::StateKind::custom) {
        stage.residuals["sequence_collision"] = diagnostics.collided;
        stage.residuals["collision_sites"] = diagnostics.collision_sites;
        if (diagnostics.collided) {
            std::cout << "note: branches collide on shared sequences ("
                      << diagnostics.collision_sites.size()
                      << " sites); amplitude reconstruction may be inexact\n";
        }
    }
    report.stages.push_back(std::move(stage));
    report.pass = true;
    write_report(report, report_path);
    std::cout << "prepared " << ensemble.size() << " fields (" << state << ") in " << out << "\n";
    return kExitPass;
}

int cmd_demod(const std::string& fields_path, const std::string& seqs_path, bool all_references,
              const std::string& out, const std::string& report_path, double tau, bool serial) {
    const auto t0 = Clock::now();
    const io::json ensemble_json = io::load_json(fields_path);
    FieldEnsemble ensemble =
        io::ensemble_from_json(ensemble_json, fs::path(fields_path).parent_path());
    if (!seqs_path.empty()) {
        const SequenceSet set = io::sequence_set_from_json(io::load_json(seqs_path));
        if (!(set == ensemble.set)) {
            throw MalformedInput("--seqs does not match the ensemble's sequence set");
        }
    }
    std::vector<int> references = ensemble.pps_indices;
    if (all_references) {
        references.clear();
        for (std::size_t j = 1; j < ensemble.set.size(); ++j) {
            references.push_back(static_cast<int>(j));
        }
    }
    const ModeStatusMatrix matrix =
        build_matrix(ensemble, references, {.tau = tau, .parallel = !serial});
    const io::json j = io::to_json(matrix);
    io::save_json(j, out);

    pipeline::RunReport report;
    auto stage = make_stage("demod", ms_since(t0));
    stage.input_digests["ensemble"] = io::digest(ensemble_json);
    stage.output_digest = io::digest(j);
    report.stages.push_back(std::move(stage));
    report.pass = true;
    write_report(report, report_path);
    std::cout << "demodulated " << matrix.rows() << " fields against " << matrix.cols()
              << " references into " << out << "\n";
    return kExitPass;
}

int cmd_reconstruct(const std::string& matrix_path, const std::string& mode_str,
                    const std::string& out, const std::string& report_path) {
    const auto t0 = Clock::now();
    const io::json matrix_json = io::load_json(matrix_path);
    const ModeStatusMatrix matrix = io::matrix_from_json(matrix_json);
    const ReconstructionMode mode = parse_mode(mode_str);
    const StateVector state = reconstruct(matrix, mode);
    const io::json j = io::to_json(state);
    io::save_json(j, out);

    pipeline::RunReport report;
    auto stage = make_stage("reconstruct", ms_since(t0));
    stage.input_digests["matrix"] = io::digest(matrix_json);
    stage.output_digest = io::digest(j);
    stage.residuals["mode"] = mode_str;
    report.stages.push_back(std::move(stage));
    report.pass = true;
    write_report(report, report_path);
    std::cout << "reconstructed " << state.n << "-particle state (" << mode_str << ") in " << out
              << "\n";
    return kExitPass;
}

int cmd_measure(const std::string& matrix_path, std::size_t shots, std::uint64_t seed,
                const std::string& out, const std::string& report_path) {
    const auto t0 = Clock::now();
    const io::json matrix_json = io::load_json(matrix_path);
    const ModeStatusMatrix matrix = io::matrix_from_json(matrix_json);
    const MeasurementHistogram histogram = sample_measurement(matrix, seed, shots);
    const io::json j = io::to_json(histogram);
    io::save_json(j, out);

    pipeline::RunReport report;
    auto stage = make_stage("measure", ms_since(t0));
    stage.input_digests["matrix"] = io::digest(matrix_json);
    stage.output_digest = io::digest(j);
    report.stages.push_back(std::move(stage));
    report.pass = true;
    write_report(report, report_path);
    std::cout << "sampled " << shots << " shots (seed " << seed << ") into " << out << "\n";
    return kExitPass;
}

int cmd_verify(const std::string& state_path, const std::string& expected,
               const std::string& expected_file, double tol, const std::string& report_path) {
    const auto t0 = Clock::now();
    const io::json state_json = io::load_json(state_path);
    const StateVector state = io::state_vector_from_json(state_json);

    oracle::OracleState want;
    if (!expected_file.empty()) {
        const StateVector ref = io::state_vector_from_json(io::load_json(expected_file));
        want = oracle::from_state_vector(ref);
    } else if (!expected.empty()) {
        want = oracle::canonical_state(oracle::parse_state_kind(expected), state.n);
    } else {
        throw MalformedInput("verify needs --expected or --expected-file");
    }
    const double fid = oracle::fidelity(want, oracle::from_state_vector(state));
    const bool pass = fid >= 1.0 - tol;

    pipeline::RunReport report;
    auto stage = make_stage("verify", ms_since(t0));
    stage.input_digests["state"] = io::digest(state_json);
    stage.residuals["fidelity"] = fid;
    stage.residuals["tolerance"] = tol;
    report.stages.push_back(std::move(stage));
    report.pass = pass;
    write_report(report, report_path);
    std::cout << "fidelity " << fid << " -> " << (pass ? "pass" : "FAIL") << "\n";
    return pass ? kExitPass : kExitVerificationFailure;
}

int cmd_pipeline(const std::string& state, std::size_t n, int degree, const std::string& mode_str,
                 const std::string& amps_path, std::size_t shots, std::uint64_t seed, double tol,
                 double tau, const std::string& outdir, const std::string& report_path,
                 bool serial) {
    pipeline::PipelineOptions options;
    options.kind = oracle::parse_state_kind(state);
    options.n = n;
    options.degree = degree;
    if (!mode_str.empty()) options.mode = parse_mode(mode_str);
    if (options.kind == oracle::StateKind::custom) {
        if (amps_path.empty()) throw MalformedInput("--state custom requires --amps");
        options.custom_amplitudes = load_amplitudes(amps_path);
    }
    options.shots = shots;
    options.seed = seed;
    options.tolerance = tol;
    options.tau = tau;
    options.parallel = !serial;
    options.outdir = outdir;

    const pipeline::RunReport report = pipeline::run_pipeline(options);
    write_report(report, report_path);
    for (const auto& stage : report.stages) {
        std::cout << stage.name << ": output " << stage.output_digest << " (" << stage.milliseconds
                  << " ms)\n";
    }
    std::cout << "verdict: " << (report.pass ? "pass" : "FAIL");
    if (!report.detail.empty()) std::cout << " (" << report.detail << ")";
    std::cout << "\n";
    return report.pass ? kExitPass : kExitVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"simulate quantum states on classical two-mode fields keyed by phase sequences"};
    app.require_subcommand(1);

    std::string report_path;
    app.add_option("--report", report_path, "write a machine-readable run report to this path");
    bool serial = false;
    app.add_flag("--serial", serial, "disable the OpenMP demodulation path");

    int gen_degree = 2;
    std::string gen_out = "sequences.json";
    std::string gen_verify;
    auto* gen = app.add_subcommand("gen", "generate or verify a sequence set");
    gen->add_option("--degree", gen_degree, "LFSR degree s; the set holds 4^s sequences");
    gen->add_option("--out", gen_out, "output path");
    gen->add_option("--verify", gen_verify, "verify the set at this path instead of generating");

    std::string prep_state;
    std::size_t prep_n = 1;
    std::string prep_amps, prep_seqs, prep_out = "ensemble.json";
    auto* prepare = app.add_subcommand("prepare", "prepare a field ensemble for a target state");
    prepare->add_option("--state", prep_state,
                        "product|bell-psi-plus|bell-phi-plus|ghz|w|custom")->required();
    prepare->add_option("--n", prep_n, "particle count (product states)");
    prepare->add_option("--amps", prep_amps, "state file with custom amplitudes");
    prepare->add_option("--seqs", prep_seqs, "sequence-set file")->required();
    prepare->add_option("--out", prep_out, "output path");

    std::string demod_fields, demod_seqs, demod_out = "matrix.json";
    bool demod_all = false;
    auto* demod = app.add_subcommand("demod", "demodulate an ensemble into a mode status matrix");
    demod->add_option("--fields", demod_fields, "field-ensemble file")->required();
    demod->add_option("--seqs", demod_seqs, "sequence-set file (checked against the ensemble)");
    demod->add_flag("--all-references", demod_all,
                    "scan every usable sequence instead of the declared ones");
    demod->add_option("--out", demod_out, "output path");

    std::string rec_matrix, rec_mode = "binary", rec_out = "state.json";
    auto* rec = app.add_subcommand("reconstruct", "reconstruct a state vector from a matrix");
    rec->add_option("--matrix", rec_matrix, "matrix file")->required();
    rec->add_option("--mode", rec_mode, "binary|amplitude");
    rec->add_option("--out", rec_out, "output path");

    std::string meas_matrix, meas_out = "histogram.json";
    std::size_t meas_shots = 1024;
    std::uint64_t meas_seed = 0;
    auto* meas = app.add_subcommand("measure", "sample measurement outcomes from a matrix");
    meas->add_option("--matrix", meas_matrix, "matrix file")->required();
    meas->add_option("--shots", meas_shots, "number of shots");
    meas->add_option("--seed", meas_seed, "RNG seed");
    meas->add_option("--out", meas_out, "output path");

    std::string ver_state, ver_expected, ver_expected_file;
    double ver_tol = 1e-9;
    auto* ver = app.add_subcommand("verify", "compare a state file against a reference");
    ver->add_option("--state", ver_state, "state file")->required();
    ver->add_option("--expected", ver_expected, "product|bell-psi-plus|bell-phi-plus|ghz|w");
    ver->add_option("--expected-file", ver_expected_file, "reference state file");
    ver->add_option("--tol", ver_tol, "fidelity tolerance");

    std::string pipe_state = "product", pipe_mode, pipe_amps, pipe_outdir = ".";
    std::size_t pipe_n = 1, pipe_shots = 0;
    int pipe_degree = 2;
    std::uint64_t pipe_seed = 0;
    double pipe_tol = 1e-9;
    auto* pipe = app.add_subcommand("pipeline", "run gen/prepare/demod/reconstruct/verify");
    pipe->add_option("--state", pipe_state, "target state kind");
    pipe->add_option("--n", pipe_n, "particle count (product states)");
    pipe->add_option("--degree", pipe_degree, "LFSR degree");
    pipe->add_option("--mode", pipe_mode, "binary|amplitude (default by state kind)");
    pipe->add_option("--amps", pipe_amps, "state file with custom amplitudes");
    pipe->add_option("--shots", pipe_shots, "sample this many shots as an extra stage");
    pipe->add_option("--seed", pipe_seed, "RNG seed for sampling");
    pipe->add_option("--tol", pipe_tol, "verification tolerance");
    pipe->add_option("--outdir", pipe_outdir, "directory for the stage artifacts");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();
    CLI11_PARSE(app, argc, argv);

    try {
        const double tau = pipeline::default_tau();
        if (gen->parsed()) return cmd_gen(gen_degree, gen_out, gen_verify, report_path, serial);
        if (prepare->parsed()) {
            return cmd_prepare(prep_state, prep_n, prep_amps, prep_seqs, prep_out, report_path);
        }
        if (demod->parsed()) {
            return cmd_demod(demod_fields, demod_seqs, demod_all, demod_out, report_path, tau,
                             serial);
        }
        if (rec->parsed()) return cmd_reconstruct(rec_matrix, rec_mode, rec_out, report_path);
        if (meas->parsed()) {
            return cmd_measure(meas_matrix, meas_shots, meas_seed, meas_out, report_path);
        }
        if (ver->parsed()) {
            return cmd_verify(ver_state, ver_expected, ver_expected_file, ver_tol, report_path);
        }
        if (pipe->parsed()) {
            return cmd_pipeline(pipe_state, pipe_n, pipe_degree, pipe_mode, pipe_amps, pipe_shots,
                                pipe_seed, pipe_tol, tau, pipe_outdir, report_path, serial);
        }
    } catch (const DegenerateSuperposition& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNonReconstructible;
    } catch (const NonReconstructible& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNonReconstructible;
    } catch (const MalformedInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMalformedInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMalformedInput;
    }
    return kExitPass;
}
