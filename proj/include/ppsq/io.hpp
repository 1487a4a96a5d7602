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

#include <filesystem>
#include <string>

#include <json.hpp>

#include "ppsq/demod.hpp"
#include "ppsq/field.hpp"
#include "ppsq/reconstruct.hpp"
#include "ppsq/sequences.hpp"

namespace ppsq::io {

using nlohmann::json;

// complex values serialize as [re, im] pairs of decimal doubles
json complex_to_json(const Complex& c);
Complex complex_from_json(const json& j);

json to_json(const SequenceSet& set);
SequenceSet sequence_set_from_json(const json& j);

/// The ensemble file embeds the sequence set inline or references it by path;
/// `base_dir` resolves relative paths on load.
json to_json(const FieldEnsemble& ensemble);
FieldEnsemble ensemble_from_json(const json& j, const std::filesystem::path& base_dir);

json to_json(const ModeStatusMatrix& matrix);
ModeStatusMatrix matrix_from_json(const json& j);

json to_json(const StateVector& state);
StateVector state_vector_from_json(const json& j);

json to_json(const MeasurementHistogram& histogram);
MeasurementHistogram histogram_from_json(const json& j);

json to_json(const PropertyReport& report);

/// Canonical serialization: keys sorted, doubles printed with 17 significant
/// digits.  Digests are FNV-1a 64 over this form, so byte-identical runs have
/// equal digests on any platform.
std::string canonical_dump(const json& j);
std::string digest(const json& j);

void save_json(const json& j, const std::filesystem::path& path);
json load_json(const std::filesystem::path& path);

}  // namespace ppsq::io
