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

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "komatsu/transforms.hpp"

namespace komatsu {

/// CSV columns: k, l, m, n, r, s, re, im. `k` labels the first factor and
/// `l` the second (torus index, SU2 spin as a decimal, 0 for trivial); m, n
/// and r, s are the row/column weights of the two factors (SU2 weight values
/// as decimals, 0 on tori). Only nonzero entries are written.
void write_field_csv(const CoefficientField& c, std::ostream& out);
CoefficientField read_field_csv(std::istream& in, const GroupTag& g1, const GroupTag& g2,
                                std::optional<Truncation> band = std::nullopt);

nlohmann::json field_manifest(const CoefficientField& c);

/// Writes `path` and `path + ".json"` (the manifest).
void save_field(const CoefficientField& c, const std::string& path);
/// Reads `path`; groups and band come from `path + ".json"` when present,
/// otherwise from the arguments (band inferred from the entries).
CoefficientField load_field(const std::string& path, std::optional<GroupTag> g1 = std::nullopt,
                            std::optional<GroupTag> g2 = std::nullopt);

/// Shortest round-trip decimal for doubles (17 significant digits).
std::string format_double(double x);

}  // namespace komatsu
