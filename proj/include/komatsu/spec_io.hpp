// Copyright 2026 The Komatsu Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include <json.hpp>

#include "komatsu/diophantine.hpp"
#include "komatsu/operator.hpp"
#include "komatsu/weights.hpp"

namespace komatsu {

/// Sequence files:
///   {"kind": "gevrey", "s": 2}
///   {"kind": "factorial-power", "s": 1.5, "kmax": 4096}
///   {"kind": "table", "values": [1, 1, 2, ...]}  or  {"kind": "table", "log_m": [...]}
WeightSequence parse_sequence(const nlohmann::json& j);
nlohmann::json sequence_to_json(const WeightSequence& seq);

/// A continued fraction: a pattern name ("factorial-pow10", "liouville",
/// "golden", "sqrt2"), {"pattern": name} or {"cf": [digits as strings or
/// integers]}.
ContinuedFraction parse_continued_fraction(const nlohmann::json& j);

/// A scalar: a string accepted by ExactScalar::parse, a JSON number (inexact)
/// or {"re": ..., "im": ...} with either part in those forms.
ExactScalar parse_scalar(const nlohmann::json& j);

/// Operator files:
///   {"x1": {"group": "T1", "coef": "1"}, "x2": {"group": "SU2", "coef": "1"},
///    "alpha": {"pattern": "factorial-pow10"}, "a": "alpha", "q": "1/2 i"}
/// "a" may also be a continued fraction object ({"cf": [...]}), which then
/// becomes alpha.
VectorFieldSpec parse_operator(const nlohmann::json& j);
nlohmann::json operator_to_json(const VectorFieldSpec& spec);

/// Reads a JSON file, mapping I/O and syntax failures to kInvalidInput.
nlohmann::json read_json_file(const std::string& path);

}  // namespace komatsu
