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
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace komatsu {

enum class WeightKind { kGevrey, kFactorialPowerTable, kUserTable };

/// Komatsu weight sequence M_0, M_1, ... stored as log M_k.
///
/// Gevrey sequences M_k = (k!)^s are evaluated in closed form, so their
/// cutoff can be far larger than any table; table kinds hold explicit values.
/// Instances are immutable and safe to share between threads.
class WeightSequence {
 public:
  static constexpr std::int64_t kDefaultGevreyKmax = std::int64_t{1} << 40;

  static WeightSequence gevrey(double s, std::int64_t kmax = kDefaultGevreyKmax);
  static WeightSequence factorial_power_table(double s, std::int64_t kmax);
  static WeightSequence from_log_table(std::vector<double> log_m);
  /// Throws kInvalidSequence if any value is not strictly positive.
  static WeightSequence from_values(std::span<const double> m);

  WeightKind kind() const { return kind_; }
  std::string kind_name() const;
  double gevrey_order() const { return s_; }
  std::int64_t kmax() const { return kmax_; }

  double log_m(std::int64_t k) const;
  /// log M_{k+1} - log M_k.
  double log_ratio(std::int64_t k) const;

  /// True when (LC) is known to hold over the whole cutoff.
  bool log_convex() const { return log_convex_; }

  /// Stability constants (A, H) used by (M.1)/(M.2). Closed form for Gevrey
  /// kinds (A = 1, H = 2^s), fitted over the table otherwise.
  double stability_a() const { return a_; }
  double stability_h() const { return h_; }

  /// Returns a copy truncated to `kmax`.
  WeightSequence truncated(std::int64_t kmax) const;

 private:
  WeightSequence() = default;
  void finish_table();

  WeightKind kind_ = WeightKind::kGevrey;
  double s_ = 1.0;
  std::int64_t kmax_ = 0;
  std::vector<double> log_m_;
  bool log_convex_ = true;
  double a_ = 1.0;
  double h_ = 2.0;
};

struct ConditionReport {
  std::string id;
  bool holds = false;
  std::optional<std::int64_t> witness;
  double violation = 0.0;  // log-space excess at the witness, 0 when holding
  std::optional<double> a, h;
  std::optional<double> ell, c;
  /// (M.3') per-ell constants; empty optional where no finite C_ell exists.
  std::vector<std::pair<double, std::optional<double>>> ell_grid;
  std::int64_t cutoff = 0;
  bool truncated = true;
  std::string note;
};

/// Checks (M.0)-(M.4), (LC), (M.3'), monotonicity and the min-form of (M.2)
/// over k <= cutoff. All verdicts hold "up to cutoff" only.
std::vector<ConditionReport> check_conditions(const WeightSequence& seq,
                                              std::int64_t cutoff = 128);

struct AssociatedValue {
  double value = 0.0;
  std::int64_t argmax = 0;
  bool saturated = false;  // sup attained at the table cutoff
};

/// M(r) = sup_k log(r^k / M_k), M(0) = 0. No evaluation cache is kept; every
/// call is a pure function of the backing sequence.
class AssociatedFunction {
 public:
  explicit AssociatedFunction(WeightSequence seq) : seq_(std::move(seq)) {}

  const WeightSequence& sequence() const { return seq_; }
  AssociatedValue evaluate(double r) const;
  double operator()(double r) const { return evaluate(r).value; }

 private:
  WeightSequence seq_;
};

double associated_value(const AssociatedFunction& af, double r);
/// inf_k M_k / r^k computed in log space.
double neg_exp_associated(const AssociatedFunction& af, double r);

/// Log-spaced grid on [lo, hi] with `points` nodes.
std::vector<double> log_grid(double lo, double hi, int points);

struct DominationResult {
  double constant = 0.0;      // sup of r^p exp(-delta M(q r)) on the grid
  double log_constant = 0.0;
  double argmax_r = 0.0;
  double grid_lo = 1.0, grid_hi = 1e8;
  int grid_points = 0;
};

DominationResult polynomial_domination_constant(const AssociatedFunction& af, double p,
                                                double q, double delta, int points = 400);

struct HalvingReport {
  double q = 0.0;
  double h = 0.0;
  double a = 0.0;
  double max_violation = 0.0;  // max of lhs - rhs in log space; <= 0 means holds
  double worst_r = 0.0;
  int grid_points = 0;      // points actually compared
  int saturated_points = 0;  // skipped because the table cutoff bounds M there
  bool holds = false;
};

/// exp{-M(q r)/2} <= sqrt(A) exp{-M(q r / H)} on r in {0} U log grid [1, 1e8].
HalvingReport halving_inequality_check(const AssociatedFunction& af, double q,
                                       int points = 400);

}  // namespace komatsu
