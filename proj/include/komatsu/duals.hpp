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

#include <cstdint>
#include <string>
#include <vector>

namespace komatsu {

enum class GroupKind { kTrivial, kTorus, kSU2 };

struct GroupTag {
  GroupKind kind = GroupKind::kTorus;
  int dim = 1;  // torus rank; 3 for SU2, 0 for the trivial group

  static GroupTag torus(int d = 1) { return {GroupKind::kTorus, d}; }
  static GroupTag su2() { return {GroupKind::kSU2, 3}; }
  static GroupTag trivial() { return {GroupKind::kTrivial, 0}; }
  /// Accepts "T1".."T3", "torus", "SU2", "S3", "trivial". Throws kUnknownGroup.
  static GroupTag parse(const std::string& name);
  std::string name() const;
  bool operator==(const GroupTag&) const = default;
};

/// One class of the unitary dual. Torus classes carry k in Z^d; SU2 classes
/// carry twice the spin, two_l = 2l.
struct RepIndex {
  GroupKind kind = GroupKind::kTrivial;
  std::vector<std::int64_t> k;
  std::int64_t two_l = 0;

  static RepIndex trivial() { return {}; }
  static RepIndex torus(std::vector<std::int64_t> k) { return {GroupKind::kTorus, std::move(k), 0}; }
  static RepIndex torus1(std::int64_t k) { return torus({k}); }
  static RepIndex su2(std::int64_t two_l) { return {GroupKind::kSU2, {}, two_l}; }

  std::int64_t dim() const { return kind == GroupKind::kSU2 ? two_l + 1 : 1; }
  /// 4(1 + nu), an exact integer for every supported group.
  std::int64_t four_weight_sq() const;
  double nu() const;
  double weight() const;
  bool is_trivial() const;
  std::string label() const;

  auto operator<=>(const RepIndex&) const = default;
  bool operator==(const RepIndex&) const = default;
};

/// Row index of the SU2 weight m (stored as two_m) in 1..2l+1.
inline std::int64_t su2_row(std::int64_t two_l, std::int64_t two_m) { return (two_m + two_l) / 2 + 1; }
inline std::int64_t su2_two_m(std::int64_t two_l, std::int64_t row) { return 2 * (row - 1) - two_l; }

struct ProductFrequency {
  RepIndex xi, eta;
  std::int64_t m = 1, r = 1;  // 1-based rows
};

struct FlatIndex {
  std::int64_t i = 1, j = 1;
  bool operator==(const FlatIndex&) const = default;
};

struct BlockIndices {
  std::int64_t m, n, r, s;
  bool operator==(const BlockIndices&) const = default;
};

/// Classes with weight <= w_max, sorted by weight, then k or l ascending.
std::vector<RepIndex> enumerate_dual(const GroupTag& group, double w_max);

/// min C with d <= C <.>^{dim G / 2} over the list.
double dimension_bound_check(const std::vector<RepIndex>& reps, int group_dim);

/// i = d_eta (m-1) + r, j = d_eta (n-1) + s. Throws kOutOfRange.
FlatIndex flatten(std::int64_t m, std::int64_t n, std::int64_t r, std::int64_t s,
                  std::int64_t d_xi, std::int64_t d_eta);
BlockIndices unflatten(FlatIndex f, std::int64_t d_xi, std::int64_t d_eta);

}  // namespace komatsu
