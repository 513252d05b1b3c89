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

#include "komatsu/s3_example.hpp"

#include <cmath>

namespace komatsu {
namespace {

double max_difference(const CoefficientField& a, const CoefficientField& b) {
  double out = 0.0;
  for (const auto& [key, blk] : a.blocks()) {
    const Block& other = b.block(key.first, key.second);
    for (std::size_t i = 0; i < blk.a.size(); ++i) out = std::max(out, std::abs(blk.a[i] - other.a[i]));
  }
  return out;
}

}  // namespace

VectorFieldSpec s3_operator() {
  VectorFieldSpec spec;
  spec.x1 = {GroupTag::torus(1), 1};
  spec.x2 = {GroupTag::su2(), 1};
  spec.alpha = ContinuedFraction::factorial_pow10();
  spec.a = ExactScalar::alpha_multiple(1);
  return spec;
}

cplx s3_trace(const FactorPoint& p) { return 2.0 * std::cos(p.theta / 2.0) * std::cos((p.phi + p.psi) / 2.0); }

cplx s3_trace_derivative(const FactorPoint& p) {
  return -std::cos(p.theta / 2.0) * std::sin((p.phi + p.psi) / 2.0);
}

CoefficientField s3_potential(cplx shift) {
  const Truncation band{1, 1};
  return analyze([&](const ProductPoint& x) { return std::cos(x.x1.t) + s3_trace_derivative(x.x2) + shift; },
                 GroupTag::torus(1), GroupTag::su2(), band, band);
}

CoefficientField s3_primitive(double alpha) {
  const Truncation band{1, 1};
  return analyze([&](const ProductPoint& x) { return std::sin(x.x1.t) + s3_trace(x.x2) / alpha; },
                 GroupTag::torus(1), GroupTag::su2(), band, band);
}

std::vector<double> s3_n_grid() { return {0.25, 0.5, 1.0, 2.0}; }

S3Variant run_s3_variant(const std::string& name, cplx shift, double s, const Truncation& trunc,
                         int precision_bits) {
  S3Variant v;
  v.name = name;
  v.shift = shift;
  const VectorFieldSpec x = s3_operator();
  v.problem = reduce(s3_potential(shift), x, std::nullopt, precision_bits);
  if (v.problem.primitive) {
    v.primitive_error = max_difference(*v.problem.primitive, s3_primitive(x.alpha_double()));
  }
  const AssociatedFunction af(WeightSequence::gevrey(s));
  v.analysis = analyze_operator(v.problem.shifted, trunc, af, FitMode::kRoumieu, s3_n_grid(), {10.0},
                                precision_bits, 1e-3);
  return v;
}

}  // namespace komatsu
