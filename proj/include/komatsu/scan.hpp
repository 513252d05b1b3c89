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

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "komatsu/operator.hpp"
#include "komatsu/weights.hpp"

namespace komatsu {

/// Weight penalty added to log|D|: M(n w) or n log w. Both are
/// nondecreasing in w, which the scan relies on for pruning.
struct Penalty {
  enum class Kind { kAssociated, kPolynomial };
  Kind kind = Kind::kAssociated;
  double n = 1.0;
  const AssociatedFunction* af = nullptr;

  double operator()(double w) const;
  std::string label() const;
};

std::vector<Penalty> associated_penalties(const AssociatedFunction& af, const std::vector<double>& grid);
std::vector<Penalty> polynomial_penalties(const std::vector<double>& orders);
/// {2^j : j = -4..4}.
std::vector<double> default_n_grid();

struct Witness {
  ProductFrequency freq;
  double w = 0.0;
  double log_abs_d = 0.0;
  double log_value = 0.0;  // log|D| + penalty(w)
};

/// Per-penalty minima of log|D| + penalty(w) over nonzero divisors, binned by
/// w in bins of ratio 10^{1/4} counted down from w_max.
struct ScanResult {
  Truncation trunc;
  double w1_cut = 1.0, w2_cut = 1.0, w_max = 2.0;
  std::vector<Penalty> penalties;
  std::vector<double> edges;                  // bins [edges[b], edges[b+1])
  std::vector<std::vector<double>> bin_min;   // [penalty][bin], +inf when empty
  std::vector<std::vector<std::optional<Witness>>> bin_arg;
  KernelCensus census;
  std::size_t level_pairs = 0;
  std::size_t nonzero = 0;  // level pairs (or records) with a nonzero, unambiguous divisor
  std::size_t refined = 0;
  std::size_t ambiguous = 0;
  int precision_bits = 256;
};

/// Streams over pairs of eigenvalue levels instead of materialising every
/// frequency: within a level pair D is constant and the minimal weight class
/// attains every minimum.
ScanResult scan_spectrum(const VectorFieldSpec& spec, const Truncation& trunc,
                         const std::vector<Penalty>& penalties, int precision_bits = 256,
                         int threads = 0);
ScanResult accumulate_records(const std::vector<DivisorRecord>& spectrum,
                              const std::vector<Penalty>& penalties);

enum class FitMode { kRoumieu, kBeurling };
const char* to_string(FitMode mode);
FitMode parse_fit_mode(const std::string& name);

struct PerNFit {
  double n = 0.0;
  std::string label;
  double log_c = 0.0;       // over the whole truncation
  double log_c_w10 = 0.0;   // frequencies with w < w_max / 10
  double log_c_w100 = 0.0;  // frequencies with w < w_max / 100
  double log_c_initial = 0.0;  // lowest nonempty bin
  bool stable = false;      // C(w_max/100) / C(w_max) < 10
  std::optional<Witness> argmin;
  std::vector<std::pair<double, double>> curve;  // (upper bin edge, prefix log C)
  std::vector<Witness> witnesses;                // record-breaking bins below the threshold
};

struct DiophantineVerdict {
  FitMode mode = FitMode::kRoumieu;
  std::string comparison;  // "associated" or "polynomial"
  std::vector<PerNFit> fits;
  bool roumieu_consistent = false;  // every grid value stable
  bool beurling_consistent = false;  // some grid value stable
  bool condition_consistent = false;  // per mode
  bool kernel_finite_consistent = false;
  bool hypoelliptic_consistent = false;
  bool solvable_consistent = false;
  std::vector<Witness> witnesses;
  std::optional<std::size_t> worst_fit;  // unstable fit the witnesses come from
  KernelCensus census;
  double w_max = 0.0;
  double witness_factor = 0.1;
  std::string trend_test;
};

/// Builds the verdict from penalties [first, first+count) of a scan.
DiophantineVerdict verdict_from_scan(const ScanResult& scan, std::size_t first, std::size_t count,
                                     FitMode mode, double witness_factor = 0.1);

DiophantineVerdict diophantine_fit(const std::vector<DivisorRecord>& spectrum,
                                   const AssociatedFunction& weights, FitMode mode,
                                   const std::vector<double>& n_grid = default_n_grid());
DiophantineVerdict smoothness_fit(const std::vector<DivisorRecord>& spectrum,
                                  const std::vector<double>& orders,
                                  double witness_factor = 0.1);

struct OperatorAnalysis {
  ScanResult scan;
  DiophantineVerdict komatsu;
  std::optional<DiophantineVerdict> smooth;
};

/// One scan serving both the Komatsu fit and, if orders are given, the
/// polynomial fit.
OperatorAnalysis analyze_operator(const VectorFieldSpec& spec, const Truncation& trunc,
                                  const AssociatedFunction& weights, FitMode mode,
                                  const std::vector<double>& n_grid,
                                  const std::vector<double>& smooth_orders = {},
                                  int precision_bits = 256, double smooth_witness_factor = 0.1);

}  // namespace komatsu
