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

#include <json.hpp>

#include "komatsu/diophantine.hpp"
#include "komatsu/perturbation.hpp"
#include "komatsu/scan.hpp"
#include "komatsu/solver.hpp"
#include "komatsu/weights.hpp"

namespace komatsu::report {

using nlohmann::json;

/// Report schema version, bumped on incompatible changes.
inline constexpr const char* kSchema = "komatsu.report/1";

json to_json(const ConditionReport& r);
json to_json(const DominationResult& r);
json to_json(const HalvingReport& r);
json to_json(const ApproximationProfile& p);
json to_json(const ProductFrequency& f);
json to_json(const Witness& w);
json to_json(const KernelCensus& c, std::size_t max_listed = 50);
json to_json(const PerNFit& f, bool with_curve);
json to_json(const DiophantineVerdict& v, bool with_curves);
json to_json(const AdmissibilityReport& r, std::size_t max_listed = 50);
json to_json(const DecayFit& f, bool with_curve);
json to_json(const DecayVerdict& v, bool with_curves);
json to_json(const ExpReport& r);
json to_json(const EnvelopeReport& r);

/// Doubles that JSON cannot carry (infinities, NaN) become strings.
json number(double x);

}  // namespace komatsu::report
