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

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "komatsu/duals.hpp"
#include "komatsu/operator.hpp"

namespace komatsu {

using cplx = std::complex<double>;

/// One d_xi d_eta x d_xi d_eta coefficient block, rows i = d_eta (m-1) + r and
/// columns j = d_eta (n-1) + s, stored row-major.
struct Block {
  std::int64_t d1 = 1, d2 = 1;
  std::vector<cplx> a;

  Block() : a(1) {}
  Block(std::int64_t d1_, std::int64_t d2_)
      : d1(d1_), d2(d2_), a(static_cast<std::size_t>(d1_ * d2_ * d1_ * d2_)) {}
  std::int64_t size() const { return d1 * d2; }
  /// 1-based flat indices.
  cplx& at(std::int64_t i, std::int64_t j) { return a[static_cast<std::size_t>((i - 1) * size() + (j - 1))]; }
  const cplx& at(std::int64_t i, std::int64_t j) const {
    return a[static_cast<std::size_t>((i - 1) * size() + (j - 1))];
  }
  cplx& at(std::int64_t m, std::int64_t n, std::int64_t r, std::int64_t s) {
    auto f = flatten(m, n, r, s, d1, d2);
    return at(f.i, f.j);
  }
  const cplx& at(std::int64_t m, std::int64_t n, std::int64_t r, std::int64_t s) const {
    auto f = flatten(m, n, r, s, d1, d2);
    return at(f.i, f.j);
  }
};

using BlockKey = std::pair<RepIndex, RepIndex>;

/// Band-limited partial Fourier coefficients on G1 x G2, one block per
/// ([xi], [eta]). Every class within the band has a block (zero-filled).
/// Conventions: Haar measure normalised to 1; f(x) = sum d_xi d_eta
/// Tr((xi (x) eta)(x) F); F = integral of f times the conjugate coefficients.
class CoefficientField {
 public:
  CoefficientField() = default;
  CoefficientField(GroupTag g1, GroupTag g2, Truncation band);

  const GroupTag& group1() const { return g1_; }
  const GroupTag& group2() const { return g2_; }
  const Truncation& band() const { return band_; }
  const std::vector<RepIndex>& classes1() const { return c1_; }
  const std::vector<RepIndex>& classes2() const { return c2_; }

  bool contains(const RepIndex& xi, const RepIndex& eta) const { return blocks_.count({xi, eta}) != 0; }
  Block& block(const RepIndex& xi, const RepIndex& eta);
  const Block& block(const RepIndex& xi, const RepIndex& eta) const;
  std::map<BlockKey, Block>& blocks() { return blocks_; }
  const std::map<BlockKey, Block>& blocks() const { return blocks_; }

  /// Copy onto another band; coefficients outside the target band are dropped.
  CoefficientField rebanded(const Truncation& band) const;
  bool same_layout(const CoefficientField& other) const;
  std::size_t nonzero_count(double tol = 0.0) const;
  double max_abs() const;

  CoefficientField& operator+=(const CoefficientField& o);
  CoefficientField& operator-=(const CoefficientField& o);
  CoefficientField& operator*=(cplx s);

 private:
  GroupTag g1_ = GroupTag::trivial(), g2_ = GroupTag::trivial();
  Truncation band_;
  std::vector<RepIndex> c1_, c2_;
  std::map<BlockKey, Block> blocks_;
};

CoefficientField operator+(CoefficientField a, const CoefficientField& b);
CoefficientField operator-(CoefficientField a, const CoefficientField& b);
CoefficientField operator*(cplx s, CoefficientField a);

/// Classes of one factor within a cutoff (|k| <= cut on T1, l <= cut on SU2).
std::vector<RepIndex> band_classes(const GroupTag& g, std::int64_t cut);
/// Smallest cutoff whose band contains the class.
std::int64_t class_cut(const RepIndex& rep);

/// Point of one factor: t on T1; Euler angles phi in [0, 2pi), theta in
/// [0, pi], psi in [0, 4pi) on SU2; ignored on the trivial group.
struct FactorPoint {
  double t = 0.0;
  double phi = 0.0, theta = 0.0, psi = 0.0;
};

struct ProductPoint {
  FactorPoint x1, x2;
};

/// Real Wigner small-d d^l_{mn}(theta) with spins and weights given doubled.
double wigner_d(std::int64_t two_l, std::int64_t two_m, std::int64_t two_n, double theta);
/// Explicit finite-sum formula; exact reference for small l.
double wigner_d_direct(std::int64_t two_l, std::int64_t two_m, std::int64_t two_n, double theta);
/// Matrix coefficient t^l_{mn}(phi, theta, psi) = e^{i m phi} d^l_{mn}(theta) e^{i n psi}.
cplx su2_coefficient(std::int64_t two_l, std::int64_t two_m, std::int64_t two_n, const FactorPoint& p);
/// Entry (row, col) of the representation at a point, 1-based.
cplx rep_entry(const RepIndex& rep, std::int64_t row, std::int64_t col, const FactorPoint& p);

cplx synthesize(const CoefficientField& c, const ProductPoint& p);

/// Quadrature grid of one factor. Torus: nt uniform points. SU2: uniform in
/// phi and psi, Gauss-Legendre in cos(theta).
struct FactorGrid {
  GroupTag group = GroupTag::trivial();
  int nt = 1;
  int nphi = 1, ntheta = 1, npsi = 1;
  std::vector<double> cos_theta, gl_weight;

  static FactorGrid for_band(const GroupTag& g, std::int64_t integrand_cut);
  std::size_t size() const;
  FactorPoint point(std::size_t i) const;
};

/// Integrand cutoff that a grid integrates exactly: |k| on T1, 2l on SU2.
std::int64_t grid_exact_cut(const FactorGrid& g);

struct SampleGrid {
  FactorGrid f1, f2;
  std::size_t size() const { return f1.size() * f2.size(); }
  /// Index layout: i = i2 * f1.size() + i1.
  ProductPoint point(std::size_t i) const;
};

/// Grid integrating products of band `a` functions against band `b`
/// coefficients exactly.
SampleGrid grid_for(const GroupTag& g1, const GroupTag& g2, const Truncation& a, const Truncation& b);

std::vector<cplx> synthesize_grid(const CoefficientField& c, const SampleGrid& grid);

struct AnalysisReport {
  std::int64_t exact_cut1 = 0, exact_cut2 = 0;      // what the grid resolves
  std::int64_t required_cut1 = 0, required_cut2 = 0;  // input band + output band
  bool aliasing_warning = false;
};

CoefficientField analyze_grid(const std::vector<cplx>& values, const SampleGrid& grid,
                              const GroupTag& g1, const GroupTag& g2, const Truncation& band);
/// Samples `f` on a grid sized for an input of band `f_band` and analyses
/// onto `band`. `grid_override` replaces the computed grid (for tests of the
/// aliasing warning).
CoefficientField analyze(const std::function<cplx(const ProductPoint&)>& f, const GroupTag& g1,
                         const GroupTag& g2, const Truncation& band, const Truncation& f_band,
                         AnalysisReport* report = nullptr, const SampleGrid* grid_override = nullptr);

double plancherel_norm(const CoefficientField& c);

/// Entries with real and imaginary parts uniform in [-1, 1].
CoefficientField random_field(const GroupTag& g1, const GroupTag& g2, const Truncation& band,
                              std::mt19937_64& rng);

/// Pointwise product, computed on a grid for the summed bands and analysed
/// onto `band` (default: the summed band, which makes it exact).
CoefficientField multiply(const CoefficientField& a, const CoefficientField& b);
CoefficientField multiply(const CoefficientField& a, const CoefficientField& b, const Truncation& band);

/// Largest grid the transforms accept before raising kBandOverflow.
inline constexpr std::size_t kMaxGridPoints = 40'000'000;

}  // namespace komatsu
