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

#include <stdexcept>
#include <string>

namespace ppsq {

/// Input data violates a documented precondition. CLI maps this to exit code 2.
struct MalformedInput : std::runtime_error {
    explicit MalformedInput(const std::string& what) : std::runtime_error(what) {}
};

/// The mode status structure cannot be decomposed into square blocks or every
/// permutation term vanishes. CLI maps this to exit code 3.
struct NonReconstructible : std::runtime_error {
    explicit NonReconstructible(const std::string& what) : std::runtime_error(what) {}
};

/// Complete destructive interference: a superposition summed to the zero field.
struct DegenerateSuperposition : NonReconstructible {
    explicit DegenerateSuperposition(const std::string& what) : NonReconstructible(what) {}
};

}  // namespace ppsq
