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

#include "komatsu/duals.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "komatsu/error.hpp"

namespace komatsu {

GroupTag GroupTag::parse(const std::string& name) {
  std::string n;
  for (char c : name) n.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  if (n == "T" || n == "T1" || n == "TORUS") return torus(1);
  if (n == "T2") return torus(2);
  if (n == "T3") return torus(3);
  if (n == "SU2" || n == "SU(2)" || n == "S3") return su2();
  if (n == "TRIVIAL") return trivial();
  throw Error(ErrorCode::kUnknownGroup, "unknown group tag '" + name + "'");
}

std::string GroupTag::name() const {
  switch (kind) {
    case GroupKind::kTorus: return "T" + std::to_string(dim);
    case GroupKind::kSU2: return "SU2";
    case GroupKind::kTrivial: return "trivial";
  }
  return "?";
}

std::int64_t RepIndex::four_weight_sq() const {
  switch (kind) {
    case GroupKind::kTrivial: return 4;
    case GroupKind::kTorus: {
      std::int64_t s = 0;
      for (auto v : k) s += v * v;
      return 4 * (1 + s);
    }
    case GroupKind::kSU2: return 4 + two_l * (two_l + 2);
  }
  return 4;
}

double RepIndex::nu() const { return static_cast<double>(four_weight_sq() - 4) / 4.0; }

double RepIndex::weight() const { return 0.5 * std::sqrt(static_cast<double>(four_weight_sq())); }

bool RepIndex::is_trivial() const { return four_weight_sq() == 4; }

std::string RepIndex::label() const {
  switch (kind) {
    case GroupKind::kTrivial: return "1";
    case GroupKind::kTorus: {
      std::string s = "k=";
      for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
      return s;
    }
    case GroupKind::kSU2:
      return two_l % 2 == 0 ? "l=" + std::to_string(two_l / 2)
                            : "l=" + std::to_string(two_l) + "/2";
  }
  return "?";
}

std::vector<RepIndex> enumerate_dual(const GroupTag& group, double w_max) {
  if (!(w_max >= 1.0)) throw Error(ErrorCode::kInvalidInput, "weight cutoff must be >= 1");
  const double limit4 = 4.0 * w_max * w_max * (1.0 + 1e-12);
  std::vector<RepIndex> out;
  switch (group.kind) {
    case GroupKind::kTrivial:
      out.push_back(RepIndex::trivial());
      return out;
    case GroupKind::kTorus: {
      if (group.dim < 1 || group.dim > 3) {
        throw Error(ErrorCode::kUnknownGroup, "torus rank must be 1, 2 or 3");
      }
      const auto b = static_cast<std::int64_t>(std::floor(std::sqrt(std::max(0.0, w_max * w_max - 1.0)) + 1e-9));
      std::vector<std::int64_t> k(static_cast<std::size_t>(group.dim), -b);
      while (true) {
        RepIndex rep = RepIndex::torus(k);
        if (static_cast<double>(rep.four_weight_sq()) <= limit4) out.push_back(rep);
        std::size_t i = 0;
        while (i < k.size() && k[i] == b) k[i++] = -b;
        if (i == k.size()) break;
        ++k[i];
      }
      break;
    }
    case GroupKind::kSU2:
      for (std::int64_t tl = 0;; ++tl) {
        RepIndex rep = RepIndex::su2(tl);
        if (static_cast<double>(rep.four_weight_sq()) > limit4) break;
        out.push_back(rep);
      }
      break;
  }
  std::stable_sort(out.begin(), out.end(), [](const RepIndex& a, const RepIndex& b) {
    if (a.four_weight_sq() != b.four_weight_sq()) return a.four_weight_sq() < b.four_weight_sq();
    return a.kind == GroupKind::kSU2 ? a.two_l < b.two_l : a.k < b.k;
  });
  return out;
}

double dimension_bound_check(const std::vector<RepIndex>& reps, int group_dim) {
  if (reps.empty()) throw Error(ErrorCode::kInvalidInput, "empty representation list");
  double c = 0.0;
  for (const auto& rep : reps) {
    c = std::max(c, static_cast<double>(rep.dim()) / std::pow(rep.weight(), group_dim / 2.0));
  }
  return c;
}

FlatIndex flatten(std::int64_t m, std::int64_t n, std::int64_t r, std::int64_t s,
                  std::int64_t d_xi, std::int64_t d_eta) {
  if (m < 1 || m > d_xi || n < 1 || n > d_xi || r < 1 || r > d_eta || s < 1 || s > d_eta) {
    throw Error(ErrorCode::kOutOfRange, "block index outside representation dimensions");
  }
  return {d_eta * (m - 1) + r, d_eta * (n - 1) + s};
}

BlockIndices unflatten(FlatIndex f, std::int64_t d_xi, std::int64_t d_eta) {
  const std::int64_t d = d_xi * d_eta;
  if (f.i < 1 || f.i > d || f.j < 1 || f.j > d || d_eta < 1) {
    throw Error(ErrorCode::kOutOfRange, "flat index outside block");
  }
  return {(f.i - 1) / d_eta + 1, (f.j - 1) / d_eta + 1, (f.i - 1) % d_eta + 1,
          (f.j - 1) % d_eta + 1};
}

}  // namespace komatsu
