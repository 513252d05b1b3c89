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
#include <vector>

#include "komatsu/perturbation.hpp"
#include "komatsu/scan.hpp"
#include "komatsu/transforms.hpp"

namespace komatsu {

/// L = d/dt + alpha X on T1 x SU2, X = d/dpsi with symbol i m, and alpha the
/// continued fraction [10^{1!}; 10^{2!}, 10^{3!}, ...].
VectorFieldSpec s3_operator();

/// tr(x) = 2 cos(theta/2) cos((phi + psi)/2) and h = X tr.
cplx s3_trace(const FactorPoint& p);
cplx s3_trace_derivative(const FactorPoint& p);

/// cos t + h(x) + shift, analysed onto band (1, 1).
CoefficientField s3_potential(cplx shift);
/// sin t + tr(x) / alpha on band (1, 1).
CoefficientField s3_primitive(double alpha);

struct S3Variant {
  std::string name;
  cplx shift;
  PerturbationProblem problem;
  double primitive_error = 0.0;  // max |Q - (sin t + tr/alpha)| blockwise
  OperatorAnalysis analysis;     // of X + q0
};

/// Mean extraction, primitive, and the Diophantine analysis of X + q0 with
/// Gevrey-s weights, N in {1/4, 1/2, 1, 2} and polynomial order 10 (smooth
/// witnesses below 1e-3 of the initial constant).
S3Variant run_s3_variant(const std::string& name, cplx shift, double s, const Truncation& trunc,
                         int precision_bits = 256);

/// N grid of the example.
std::vector<double> s3_n_grid();

}  // namespace komatsu
