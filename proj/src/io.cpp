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

#include "ppsq/io.hpp"

#include <cstdio>
#include <fstream>

#include "ppsq/errors.hpp"

namespace ppsq::io {

json complex_to_json(const Complex& c) { return json::array({c.real(), c.imag()}); }

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw MalformedInput("complex values are [re, im] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const SequenceSet& set) {
    json j;
    j["p"] = 4;
    j["s"] = set.degree;
    j["N"] = set.size();
    j["polynomial"] = set.polynomial.coefficients;
    j["seed"] = set.seed;
    json seqs = json::array();
    for (const auto& seq : set.sequences) seqs.push_back(seq.phases);
    j["sequences"] = std::move(seqs);
    return j;
}

SequenceSet sequence_set_from_json(const json& j) {
    try {
        if (j.at("p").get<int>() != 4) throw MalformedInput("only p = 4 sequence sets exist");
        SequenceSet set;
        set.degree = j.at("s").get<int>();
        set.polynomial.coefficients = j.at("polynomial").get<std::vector<gf4::Element>>();
        set.seed = j.at("seed").get<std::vector<gf4::Element>>();
        const auto& seqs = j.at("sequences");
        const std::size_t n = j.at("N").get<std::size_t>();
        if (seqs.size() != n) throw MalformedInput("sequence count does not match N");
        int index = 0;
        for (const auto& row : seqs) {
            PhaseSequence seq;
            seq.index = index++;
            seq.phases = row.get<std::vector<std::uint8_t>>();
            if (seq.phases.size() != n) throw MalformedInput("sequence length does not match N");
            for (auto p : seq.phases) {
                if (p > 3) throw MalformedInput("phase symbol outside {0,1,2,3}");
            }
            set.sequences.push_back(std::move(seq));
        }
        return set;
    } catch (const json::exception& e) {
        throw MalformedInput(std::string("bad sequence-set file: ") + e.what());
    }
}

namespace {

json field_to_json(const ClassicalField& f) {
    json j;
    j["label"] = f.label;
    json m0 = json::array(), m1 = json::array();
    for (const Complex& c : f.mode0) m0.push_back(complex_to_json(c));
    for (const Complex& c : f.mode1) m1.push_back(complex_to_json(c));
    j["mode0"] = std::move(m0);
    j["mode1"] = std::move(m1);
    return j;
}

ClassicalField field_from_json(const json& j) {
    ClassicalField f;
    f.label = j.value("label", "");
    for (const auto& c : j.at("mode0")) f.mode0.push_back(complex_from_json(c));
    for (const auto& c : j.at("mode1")) f.mode1.push_back(complex_from_json(c));
    if (f.mode0.size() != f.mode1.size()) throw MalformedInput("mode vectors of unequal length");
    return f;
}

}  // namespace

json to_json(const FieldEnsemble& ensemble) {
    json j;
    j["N"] = ensemble.slots();
    if (ensemble.set_source.empty()) {
        j["sequence_set"] = to_json(ensemble.set);
    } else {
        j["sequence_set"] = ensemble.set_source;
    }
    j["pps_indices"] = ensemble.pps_indices;
    json fields = json::array();
    for (const auto& f : ensemble.fields) fields.push_back(field_to_json(f));
    j["fields"] = std::move(fields);
    return j;
}

FieldEnsemble ensemble_from_json(const json& j, const std::filesystem::path& base_dir) {
    try {
        FieldEnsemble e;
        const auto& set_ref = j.at("sequence_set");
        if (set_ref.is_string()) {
            e.set_source = set_ref.get<std::string>();
            std::filesystem::path p = e.set_source;
            if (p.is_relative()) p = base_dir / p;
            e.set = sequence_set_from_json(load_json(p));
        } else {
            e.set = sequence_set_from_json(set_ref);
        }
        e.pps_indices = j.at("pps_indices").get<std::vector<int>>();
        for (const auto& fj : j.at("fields")) e.fields.push_back(field_from_json(fj));
        const std::size_t n = j.at("N").get<std::size_t>();
        for (const auto& f : e.fields) {
            if (f.slots() != n) throw MalformedInput("field slot count does not match N");
        }
        if (e.set.slots() != n) throw MalformedInput("sequence set slot count does not match N");
        return e;
    } catch (const json::exception& e) {
        throw MalformedInput(std::string("bad field-ensemble file: ") + e.what());
    }
}

json to_json(const ModeStatusMatrix& matrix) {
    json j;
    j["n"] = matrix.rows();
    j["col_sequences"] = matrix.col_sequences;
    j["row_labels"] = matrix.row_labels;
    j["tau"] = matrix.tau;
    json rows = json::array();
    for (std::size_t i = 0; i < matrix.rows(); ++i) {
        json row = json::array();
        for (std::size_t c = 0; c < matrix.cols(); ++c) {
            const ModeStatus& st = matrix.at(i, c);
            json cell;
            cell["raw0"] = complex_to_json(st.raw0);
            cell["raw1"] = complex_to_json(st.raw1);
            cell["q"] = st.quantized;
            row.push_back(std::move(cell));
        }
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    return j;
}

ModeStatusMatrix matrix_from_json(const json& j) {
    try {
        ModeStatusMatrix m;
        m.n_rows = j.at("n").get<std::size_t>();
        m.col_sequences = j.at("col_sequences").get<std::vector<int>>();
        m.row_labels = j.value("row_labels", std::vector<std::string>{});
        m.tau = j.value("tau", kDefaultTau);
        const auto& rows = j.at("entries");
        if (rows.size() != m.n_rows) throw MalformedInput("entry row count does not match n");
        m.entries.reserve(m.n_rows * m.col_sequences.size());
        for (const auto& row : rows) {
            if (row.size() != m.col_sequences.size()) {
                throw MalformedInput("entry column count does not match col_sequences");
            }
            for (const auto& cell : row) {
                ModeStatus st;
                st.raw0 = complex_from_json(cell.at("raw0"));
                st.raw1 = complex_from_json(cell.at("raw1"));
                const auto q = cell.at("q").get<std::vector<int>>();
                if (q.size() != 2) throw MalformedInput("quantized status must hold two bits");
                st.quantized = {q[0], q[1]};
                m.entries.push_back(st);
            }
        }
        return m;
    } catch (const json::exception& e) {
        throw MalformedInput(std::string("bad matrix file: ") + e.what());
    }
}

json to_json(const StateVector& state) {
    json j;
    j["n"] = state.n;
    j["qubit_order"] = state.qubit_order;
    json amps = json::array();
    for (const Complex& a : state.amplitudes) amps.push_back(complex_to_json(a));
    j["amplitudes"] = std::move(amps);
    return j;
}

StateVector state_vector_from_json(const json& j) {
    try {
        StateVector s;
        s.n = j.at("n").get<std::size_t>();
        s.qubit_order = j.value("qubit_order", std::vector<std::string>{});
        for (const auto& a : j.at("amplitudes")) s.amplitudes.push_back(complex_from_json(a));
        if (s.amplitudes.size() != (std::size_t{1} << s.n)) {
            throw MalformedInput("amplitude count is not 2^n");
        }
        return s;
    } catch (const json::exception& e) {
        throw MalformedInput(std::string("bad state file: ") + e.what());
    }
}

json to_json(const MeasurementHistogram& histogram) {
    json j;
    j["shots"] = histogram.shots;
    j["seed"] = histogram.seed;
    json counts = json::object();
    for (const auto& [outcome, count] : histogram.counts) counts[outcome] = count;
    j["counts"] = std::move(counts);
    return j;
}

MeasurementHistogram histogram_from_json(const json& j) {
    try {
        MeasurementHistogram h;
        h.shots = j.at("shots").get<std::size_t>();
        h.seed = j.at("seed").get<std::uint64_t>();
        for (const auto& [outcome, count] : j.at("counts").items()) {
            h.counts[outcome] = count.get<std::uint64_t>();
        }
        return h;
    } catch (const json::exception& e) {
        throw MalformedInput(std::string("bad histogram file: ") + e.what());
    }
}

json to_json(const PropertyReport& report) {
    json j;
    j["orthogonal_complex"] = report.orthogonal_complex;
    j["worst_complex_residual"] = report.worst_complex_residual;
    j["worst_complex_pair"] = {report.worst_complex_pair.first, report.worst_complex_pair.second};
    j["complex_violations"] = report.complex_violations;
    j["orthogonal_real"] = report.orthogonal_real;
    j["worst_real_residual"] = report.worst_real_residual;
    j["balanced"] = report.balanced;
    j["balance_checked"] = report.balance_checked;
    j["worst_balance_residual"] = report.worst_balance_residual;
    j["closed"] = report.closed;
    if (!report.closure_counterexample.empty()) {
        j["closure_counterexample"] = report.closure_counterexample;
    }
    j["usable"] = report.usable();
    return j;
}

namespace {

void canonical_dump_impl(const json& j, std::string& out) {
    switch (j.type()) {
        case json::value_t::object: {
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                out += json(it.key()).dump();
                out += ':';
                canonical_dump_impl(it.value(), out);
            }
            out += '}';
            break;
        }
        case json::value_t::array: {
            out += '[';
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ',';
                canonical_dump_impl(j[i], out);
            }
            out += ']';
            break;
        }
        case json::value_t::number_float: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
            out += buf;
            break;
        }
        default:
            out += j.dump();
    }
}

}  // namespace

std::string canonical_dump(const json& j) {
    std::string out;
    canonical_dump_impl(j, out);
    return out;
}

std::string digest(const json& j) {
    const std::string text = canonical_dump(j);
    std::uint64_t hash = 14695981039346656037ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

void save_json(const json& j, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw MalformedInput("cannot open for writing: " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw MalformedInput("write failed: " + path.string());
}

json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot open: " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw MalformedInput("invalid JSON in " + path.string() + ": " + e.what());
    }
}

}  // namespace ppsq::io
