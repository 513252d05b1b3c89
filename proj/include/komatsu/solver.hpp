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
#include "komatsu/scan.hpp"
#include "komatsu/transforms.hpp"
#include "komatsu/weights.hpp"

namespace komatsu {

struct OffendingEntry {
  ProductFrequency freq;
  std::int64_t n = 1, s = 1;  // column indices of the entry
  cplx value;
  bool ambiguous = false;  // divisor numerically ambiguous rather than exactly zero
};

struct AdmissibilityReport {
  std::vector<OffendingEntry> offending;
  double max_offending = 0.0;
  double tolerance = 0.0;          // 1e-13 * ||f||
  std::size_t kernel_entries = 0;  // entries whose divisor vanishes or is ambiguous
  bool admissible = true;
};

/// f must vanish (up to tolerance) wherever the divisor is exactly zero;
/// numerically ambiguous divisors are treated the same way.
AdmissibilityReport check_admissible(const CoefficientField& f, const VectorFieldSpec& spec,
                                     int precision_bits = 256);

/// Canonical solution: u = f / (i D) off the kernel, 0 on it. Throws
/// kInadmissible when check_admissible fails.
CoefficientField solve(const CoefficientField& f, const VectorFieldSpec& spec, int precision_bits = 256);
/// Multiplies every entry by i D.
CoefficientField apply(const VectorFieldSpec& spec, const CoefficientField& u, int precision_bits = 256);
/// Zeroes the entries on the kernel; equals solve(apply(u)).
CoefficientField project_off_kernel(const CoefficientField& u, const VectorFieldSpec& spec,
                                    int precision_bits = 256);

/// Fit of one characterisation at one parameter: log C = max residual.
struct DecayFit {
  double n = 0.0;
  double log_c = 0.0;      // whole field
  double log_c_low = 0.0;  // w <= w_max / 10
  bool stable = false;     // log_c - log_c_low < log 10
  std::vector<std::pair<double, double>> curve;  // (upper bin edge, max residual in bin)
};

struct DecayVerdict {
  std::string label;  // strongest class satisfied, see classify_decay
  bool beurling_function = false;
  bool roumieu_function = false;
  bool smooth = false;
  bool finite_order = false;
  bool roumieu_ultradistribution = false;
  bool beurling_ultradistribution = false;
  bool lattice_consistent = true;
  std::optional<double> fitted_n;      // largest grid N with a stable function-side fit
  std::optional<double> fitted_order;  // smallest polynomial order with a stable distribution fit
  std::vector<DecayFit> function_fits;      // log|c| + M(N w)
  std::vector<DecayFit> distribution_fits;  // log|c| - M(N w)
  std::vector<DecayFit> smooth_fits;        // log|c| + p log w
  std::vector<DecayFit> order_fits;         // log|c| - p log w
  std::size_t coefficients = 0;
  double w_min = 0.0, w_max = 0.0;
  std::string trend_test;
};

/// {1, 2, 4, 8, 16}.
std::vector<double> default_poly_orders();

/// Labels, strongest first: beurling-function, roumieu-function, smooth,
/// distribution-finite-order, roumieu-ultradistribution,
/// beurling-ultradistribution, inconclusive. Needs at least 30 nonzero
/// entries spanning a weight ratio of 10 (kInsufficientSpan otherwise).
DecayVerdict classify_decay(const CoefficientField& c, const AssociatedFunction& weights,
                            const std::vector<double>& n_grid = default_n_grid(),
                            const std::vector<double>& poly_orders = default_poly_orders());

enum class AdversarialMode { kHypoRoumieu, kSolvRoumieu, kHypoBeurling };
const char* to_string(AdversarialMode mode);
AdversarialMode parse_adversarial_mode(const std::string& name);

struct AdversarialCase {
  AdversarialMode mode = AdversarialMode::kHypoRoumieu;
  double n = 0.0;  // parameter of the violated fit
  std::vector<DivisorRecord> witnesses;
  CoefficientField f;  // right-hand side
  CoefficientField u;  // its canonical preimage
};

/// Small divisors reachable in the truncation: for each level of the second
/// factor, the two nearest levels of the first, at their minimal weights.
std::vector<DivisorRecord> near_resonances(const VectorFieldSpec& spec, const Truncation& trunc,
                                           int precision_bits = 256);

/// Builds the sequences of the necessity proofs from a violated verdict.
/// Witnesses are taken in increasing w; the K-th must satisfy
/// log|D| + P(w) < log C_init + log(factor) - log K, where P is the penalty of
/// the worst violated fit (hypo-beurling: the penalty at parameter K).
/// hypo-roumieu: f = D w, u = -i w. solv-roumieu: f = 1, u = -i / D.
/// hypo-beurling: u = 1, f = i D. Entries sit at column 1 of each witness.
AdversarialCase adversarial_field(const VectorFieldSpec& spec, const Truncation& trunc,
                                  const AssociatedFunction& weights, AdversarialMode mode,
                                  const DiophantineVerdict& verdict, int precision_bits = 256);

}  // namespace komatsu
