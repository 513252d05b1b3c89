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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "komatsu/scan.hpp"
#include "komatsu/solver.hpp"
#include "komatsu/transforms.hpp"
#include "komatsu/weights.hpp"

namespace komatsu {

/// L_q = X + q reduced to the constant shift q0 through a primitive Q with
/// X Q = q - q0.
struct PerturbationProblem {
  VectorFieldSpec base;     // X, with no shift
  VectorFieldSpec shifted;  // X + q0
  CoefficientField q;
  cplx q0;
  bool q0_exact = false;    // q0 recognised as a rational combination of 1 and alpha
  std::optional<CoefficientField> primitive;
  AdmissibilityReport admissibility;  // of q - q0 under X
  double primitive_residual = 0.0;    // max |X Q - (q - q0)|
  std::string note;
};

/// Class of the trivial representation of a factor group.
RepIndex identity_class(const GroupTag& g);
/// Smallest band holding every nonzero entry of `c`.
Truncation effective_band(const CoefficientField& c);

/// q0 is the coefficient at the pair of trivial representations. Unless
/// `q0_hint` is given, it is matched against r1 + r2 alpha with rationals of
/// denominator at most 12 (tolerance 1e-12); otherwise it stays inexact.
PerturbationProblem reduce(const CoefficientField& q, const VectorFieldSpec& x,
                           std::optional<ExactScalar> q0_hint = std::nullopt, int precision_bits = 256);

struct ExpReport {
  int order = 0;             // terms of the series beyond the constant
  double sup_norm = 0.0;     // max |Q| on the sampling grid
  double series_tail = 0.0;  // sup^(P+1)/(P+1)! e^sup
  double outer_shell = 0.0;  // largest coefficient on the outermost classes of the band
  Truncation band;
};

/// e^Q from the series of order P (adaptive when P = 0: smallest P with
/// sup^P/P! < 1e-12), evaluated pointwise on a grid sized for twice `band`
/// and analysed onto `band`. Throws kNonConvergent when the adaptive order
/// would exceed 256.
CoefficientField exp_field(const CoefficientField& q, const Truncation& band, int order = 0,
                           ExpReport* report = nullptr);
/// Doubles the band (starting from four times that of Q) until the outer
/// shell drops below 1e-15 of the largest coefficient.
CoefficientField exp_field_auto(const CoefficientField& q, ExpReport* report = nullptr);

/// Max blockwise |L_q(e^{-Q} v) - e^{-Q} L_{q0}(v)|. Throws kInadmissible when
/// no primitive was found.
double conjugation_residual(const PerturbationProblem& prob, const CoefficientField& v);

/// The same residual for many test fields of one band. e^{-Q} and q are
/// sampled once on a grid that resolves every product exactly.
class ConjugationCheck {
 public:
  ConjugationCheck(const PerturbationProblem& prob, const Truncation& v_band);
  /// Throws kTruncationMismatch when `v` exceeds the band given at construction.
  double residual(const CoefficientField& v) const;
  const ExpReport& exp_report() const { return exp_report_; }

 private:
  const PerturbationProblem* prob_;
  Truncation v_band_, w_band_, out_band_;
  ExpReport exp_report_;
  SampleGrid grid_;
  std::vector<cplx> e_minus_, q_;
};

struct EnvelopeReport {
  double h = 1.0;
  std::vector<double> sup_derivative;  // max_t |d^p/dt^p e^{f}|, p = 0..P
  std::vector<double> k_needed;        // sup / ((2h)^p M_p)
  double k_fit = 0.0;                  // max over p
  double k_limit = 10.0;
  bool holds = false;                  // k_fit <= k_limit
  int worst_order = 0;
  double worst_point = 0.0;
  std::int64_t spectral_band = 0;
};

/// Spectral derivatives of e^f for a function on the circle, compared with
/// K (2h)^p M_p for p = 0..max_order.
EnvelopeReport exp_derivative_bound_check(const std::function<double(double)>& f,
                                          const WeightSequence& seq, double h, int max_order = 10,
                                          double k_limit = 10.0, int samples = 4096);

/// The operator pipeline with divisor lambda + a mu - i q.
OperatorAnalysis constant_shift_analyze(const VectorFieldSpec& x, const ExactScalar& q,
                                        const Truncation& trunc, const AssociatedFunction& weights,
                                        FitMode mode, const std::vector<double>& n_grid = default_n_grid(),
                                        const std::vector<double>& smooth_orders = {},
                                        int precision_bits = 256);

}  // namespace komatsu
