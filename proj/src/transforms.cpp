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

#include "komatsu/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include <Eigen/Dense>

#include "komatsu/error.hpp"

namespace komatsu {
namespace {

constexpr double kPi = std::numbers::pi;

double log_fact(std::int64_t n) { return std::lgamma(static_cast<double>(n) + 1.0); }

void check_su2_indices(std::int64_t two_l, std::int64_t two_m, std::int64_t two_n) {
  if (two_l < 0 || std::abs(two_m) > two_l || std::abs(two_n) > two_l ||
      (two_l - two_m) % 2 != 0 || (two_l - two_n) % 2 != 0) {
    throw Error(ErrorCode::kOutOfRange, "invalid SU2 indices");
  }
}

}  // namespace

std::int64_t class_cut(const RepIndex& rep) {
  switch (rep.kind) {
    case GroupKind::kTorus: {
      std::int64_t c = 0;
      for (auto k : rep.k) c = std::max(c, k < 0 ? -k : k);
      return c;
    }
    case GroupKind::kSU2: return (rep.two_l + 1) / 2;
    case GroupKind::kTrivial: break;
  }
  return 0;
}

std::vector<RepIndex> band_classes(const GroupTag& g, std::int64_t cut) {
  if (g.kind == GroupKind::kTorus && g.dim != 1) {
    throw Error(ErrorCode::kUnknownGroup, "coefficient fields support T1, SU2 and trivial factors");
  }
  return enumerate_dual(g, factor_max_weight(g, cut));
}

CoefficientField::CoefficientField(GroupTag g1, GroupTag g2, Truncation band)
    : g1_(g1), g2_(g2), band_(band) {
  if (g1_.kind == GroupKind::kTrivial) band_.cut1 = 0;
  if (g2_.kind == GroupKind::kTrivial) band_.cut2 = 0;
  if (band_.cut1 < 0 || band_.cut2 < 0) throw Error(ErrorCode::kInvalidInput, "negative band");
  c1_ = band_classes(g1_, band_.cut1);
  c2_ = band_classes(g2_, band_.cut2);
  for (const auto& xi : c1_) {
    for (const auto& eta : c2_) blocks_.emplace(BlockKey{xi, eta}, Block(xi.dim(), eta.dim()));
  }
}

Block& CoefficientField::block(const RepIndex& xi, const RepIndex& eta) {
  auto it = blocks_.find({xi, eta});
  if (it == blocks_.end()) throw Error(ErrorCode::kOutOfRange, "block outside band: " + xi.label() + " x " + eta.label());
  return it->second;
}

const Block& CoefficientField::block(const RepIndex& xi, const RepIndex& eta) const {
  auto it = blocks_.find({xi, eta});
  if (it == blocks_.end()) throw Error(ErrorCode::kOutOfRange, "block outside band: " + xi.label() + " x " + eta.label());
  return it->second;
}

CoefficientField CoefficientField::rebanded(const Truncation& band) const {
  CoefficientField out(g1_, g2_, band);
  for (auto& [key, blk] : out.blocks_) {
    auto it = blocks_.find(key);
    if (it != blocks_.end()) blk = it->second;
  }
  return out;
}

bool CoefficientField::same_layout(const CoefficientField& o) const {
  return g1_ == o.g1_ && g2_ == o.g2_ && band_.cut1 == o.band_.cut1 && band_.cut2 == o.band_.cut2;
}

std::size_t CoefficientField::nonzero_count(double tol) const {
  std::size_t n = 0;
  for (const auto& [key, blk] : blocks_) {
    for (const auto& v : blk.a) n += std::abs(v) > tol ? 1 : 0;
  }
  return n;
}

double CoefficientField::max_abs() const {
  double m = 0.0;
  for (const auto& [key, blk] : blocks_) {
    for (const auto& v : blk.a) m = std::max(m, std::abs(v));
  }
  return m;
}

CoefficientField& CoefficientField::operator+=(const CoefficientField& o) {
  if (!same_layout(o)) throw Error(ErrorCode::kTruncationMismatch, "fields on different bands");
  for (auto& [key, blk] : blocks_) {
    const Block& b = o.blocks_.at(key);
    for (std::size_t i = 0; i < blk.a.size(); ++i) blk.a[i] += b.a[i];
  }
  return *this;
}

CoefficientField& CoefficientField::operator-=(const CoefficientField& o) {
  if (!same_layout(o)) throw Error(ErrorCode::kTruncationMismatch, "fields on different bands");
  for (auto& [key, blk] : blocks_) {
    const Block& b = o.blocks_.at(key);
    for (std::size_t i = 0; i < blk.a.size(); ++i) blk.a[i] -= b.a[i];
  }
  return *this;
}

CoefficientField& CoefficientField::operator*=(cplx s) {
  for (auto& [key, blk] : blocks_) {
    for (auto& v : blk.a) v *= s;
  }
  return *this;
}

CoefficientField operator+(CoefficientField a, const CoefficientField& b) { return a += b; }
CoefficientField operator-(CoefficientField a, const CoefficientField& b) { return a -= b; }
CoefficientField operator*(cplx s, CoefficientField a) { return a *= s; }

double wigner_d_direct(std::int64_t two_l, std::int64_t two_m, std::int64_t two_n, double theta) {
  check_su2_indices(two_l, two_m, two_n);
  const std::int64_t jpm = (two_l + two_m) / 2, jmm = (two_l - two_m) / 2;
  const std::int64_t jpn = (two_l + two_n) / 2, jmn = (two_l - two_n) / 2;
  const std::int64_t m_minus_n = (two_m - two_n) / 2;
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  const double pref = 0.5 * (log_fact(jpm) + log_fact(jmm) + log_fact(jpn) + log_fact(jmn));
  double sum = 0.0;
  for (std::int64_t k = std::max<std::int64_t>(0, -m_minus_n); k <= std::min(jpn, jmm); ++k) {
    const double lg = pref - (log_fact(jpn - k) + log_fact(k) + log_fact(m_minus_n + k) + log_fact(jmm - k));
    const std::int64_t pc = two_l - m_minus_n - 2 * k;  // cos exponent 2j + n - m - 2k
    const std::int64_t ps = m_minus_n + 2 * k;
    const double sign = ((m_minus_n + k) % 2 == 0) ? 1.0 : -1.0;
    sum += sign * std::exp(lg) * std::pow(c, static_cast<double>(pc)) * std::pow(s, static_cast<double>(ps));
  }
  return sum;
}

double wigner_d(std::int64_t two_l, std::int64_t two_m, std::int64_t two_n, double theta) {
  check_su2_indices(two_l, two_m, two_n);
  const std::int64_t two_j0 = std::max(std::abs(two_m), std::abs(two_n));
  double prev = 0.0;
  double cur = wigner_d_direct(two_j0, two_m, two_n, theta);
  const double x = std::cos(theta);
  const double m = two_m / 2.0, n = two_n / 2.0;
  for (std::int64_t tj = two_j0; tj < two_l; tj += 2) {
    const double j = tj / 2.0;
    double next;
    if (tj == 0) {
      next = x * cur;
    } else {
      const double j1 = j + 1.0;
      const double a = j1 * (2.0 * j + 1.0) / std::sqrt((j1 * j1 - m * m) * (j1 * j1 - n * n));
      const double b = std::sqrt((j * j - m * m) * (j * j - n * n)) / (j * (2.0 * j + 1.0));
      next = a * ((x - m * n / (j * j1)) * cur - b * prev);
    }
    prev = cur;
    cur = next;
  }
  return cur;
}

cplx su2_coefficient(std::int64_t two_l, std::int64_t two_m, std::int64_t two_n, const FactorPoint& p) {
  const double ph = 0.5 * (static_cast<double>(two_m) * p.phi + static_cast<double>(two_n) * p.psi);
  return std::polar(wigner_d(two_l, two_m, two_n, p.theta), ph);
}

cplx rep_entry(const RepIndex& rep, std::int64_t row, std::int64_t col, const FactorPoint& p) {
  switch (rep.kind) {
    case GroupKind::kTrivial: return 1.0;
    case GroupKind::kTorus: return std::polar(1.0, static_cast<double>(rep.k.at(0)) * p.t);
    case GroupKind::kSU2:
      return su2_coefficient(rep.two_l, su2_two_m(rep.two_l, row), su2_two_m(rep.two_l, col), p);
  }
  return 0.0;
}

cplx synthesize(const CoefficientField& c, const ProductPoint& p) {
  // Representation matrices per class, evaluated once.
  auto rep_matrix = [](const RepIndex& rep, const FactorPoint& x) {
    const std::int64_t d = rep.dim();
    std::vector<cplx> mat(static_cast<std::size_t>(d * d));
    for (std::int64_t i = 1; i <= d; ++i) {
      for (std::int64_t j = 1; j <= d; ++j) mat[static_cast<std::size_t>((i - 1) * d + (j - 1))] = rep_entry(rep, i, j, x);
    }
    return mat;
  };
  std::map<RepIndex, std::vector<cplx>> m1, m2;
  for (const auto& xi : c.classes1()) m1.emplace(xi, rep_matrix(xi, p.x1));
  for (const auto& eta : c.classes2()) m2.emplace(eta, rep_matrix(eta, p.x2));
  cplx sum = 0.0;
  for (const auto& [key, blk] : c.blocks()) {
    const auto& a = m1.at(key.first);
    const auto& b = m2.at(key.second);
    const std::int64_t d1 = blk.d1, d2 = blk.d2;
    cplx part = 0.0;
    for (std::int64_t m = 1; m <= d1; ++m) {
      for (std::int64_t n = 1; n <= d1; ++n) {
        const cplx xi_nm = a[static_cast<std::size_t>((n - 1) * d1 + (m - 1))];
        for (std::int64_t r = 1; r <= d2; ++r) {
          for (std::int64_t s = 1; s <= d2; ++s) {
            part += xi_nm * b[static_cast<std::size_t>((s - 1) * d2 + (r - 1))] * blk.at(m, n, r, s);
          }
        }
      }
    }
    sum += static_cast<double>(d1 * d2) * part;
  }
  return sum;
}

namespace {

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(static_cast<std::size_t>(n), 0.0);
  w.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    double p0 = 1.0, p1 = z;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) p0 = 1.0;
    dp = n * (z * p1 - p0) / (z * z - 1.0);
    x[static_cast<std::size_t>(i)] = z;
    w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

template <class F>
void parallel_for(std::size_t n, std::size_t grain, F&& f) {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  std::size_t nt = std::min<std::size_t>(std::min<std::size_t>(hw, 16), std::max<std::size_t>(1, n / std::max<std::size_t>(grain, 1)));
  if (nt <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < nt; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += nt) f(i);
    });
  }
  for (auto& th : pool) th.join();
}

/// Wigner small-d for all (two_l <= two_lmax, two_m, two_n) at one angle.
class WignerTable {
 public:
  WignerTable(std::int64_t two_lmax, double theta) : lmax_(two_lmax) {
    std::size_t total = 0;
    for (std::int64_t tl = 0; tl <= lmax_; ++tl) {
      off_.push_back(total);
      total += static_cast<std::size_t>((tl + 1) * (tl + 1));
    }
    v_.assign(total, 0.0);
    const double x = std::cos(theta);
    for (std::int64_t tm = -lmax_; tm <= lmax_; ++tm) {
      for (std::int64_t tn = -lmax_; tn <= lmax_; ++tn) {
        if ((tm - tn) % 2 != 0) continue;
        const std::int64_t tj0 = std::max(std::abs(tm), std::abs(tn));
        const double m = tm / 2.0, n = tn / 2.0;
        double prev = 0.0, cur = wigner_d_direct(tj0, tm, tn, theta);
        set(tj0, tm, tn, cur);
        for (std::int64_t tj = tj0; tj + 2 <= lmax_; tj += 2) {
          const double j = tj / 2.0;
          double next;
          if (tj == 0) {
            next = x * cur;
          } else {
            const double j1 = j + 1.0;
            const double a = j1 * (2.0 * j + 1.0) / std::sqrt((j1 * j1 - m * m) * (j1 * j1 - n * n));
            const double b = std::sqrt((j * j - m * m) * (j * j - n * n)) / (j * (2.0 * j + 1.0));
            next = a * ((x - m * n / (j * j1)) * cur - b * prev);
          }
          prev = cur;
          cur = next;
          set(tj + 2, tm, tn, cur);
        }
      }
    }
  }

  double get(std::int64_t tl, std::int64_t tm, std::int64_t tn) const {
    return v_[off_[static_cast<std::size_t>(tl)] + static_cast<std::size_t>(((tm + tl) / 2) * (tl + 1) + (tn + tl) / 2)];
  }

 private:
  void set(std::int64_t tl, std::int64_t tm, std::int64_t tn, double val) {
    v_[off_[static_cast<std::size_t>(tl)] + static_cast<std::size_t>(((tm + tl) / 2) * (tl + 1) + (tn + tl) / 2)] = val;
  }

  std::int64_t lmax_;
  std::vector<std::size_t> off_;
  std::vector<double> v_;
};

struct FactorLayout {
  GroupTag group;
  std::int64_t cut = 0;
  std::vector<RepIndex> classes;
  std::vector<std::size_t> off;
  std::size_t total = 0;

  FactorLayout(const GroupTag& g, std::int64_t c) : group(g), cut(g.kind == GroupKind::kTrivial ? 0 : c) {
    classes = band_classes(g, cut);
    for (const auto& rep : classes) {
      off.push_back(total);
      total += static_cast<std::size_t>(rep.dim() * rep.dim());
    }
  }
};

std::vector<cplx> phase_table(std::int64_t two_max, int npts, double period) {
  // e^{i (two/2) x_j}, x_j = period * j / npts, rows two = -two_max..two_max
  std::vector<cplx> t(static_cast<std::size_t>((2 * two_max + 1) * npts));
  for (std::int64_t tw = -two_max; tw <= two_max; ++tw) {
    for (int j = 0; j < npts; ++j) {
      t[static_cast<std::size_t>((tw + two_max) * npts + j)] = std::polar(1.0, 0.5 * static_cast<double>(tw) * period * j / npts);
    }
  }
  return t;
}

using CMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CMap = Eigen::Map<CMat>;
using CMapConst = Eigen::Map<const CMat>;

// Row q, column j: e^{sign i k_q 2 pi j / np} * scale.
CMat torus_phases(const FactorLayout& L, std::size_t np, double sign, double scale) {
  CMat ph(static_cast<Eigen::Index>(L.classes.size()), static_cast<Eigen::Index>(np));
  for (std::size_t q = 0; q < L.classes.size(); ++q) {
    for (std::size_t j = 0; j < np; ++j) {
      ph(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(j)) =
          std::polar(scale, sign * static_cast<double>(L.classes[q].k[0]) * 2.0 * kPi * static_cast<double>(j) /
                                static_cast<double>(np));
    }
  }
  return ph;
}

// in: channels x layout.total, out: channels x grid.size()
void factor_synth(const FactorLayout& L, const FactorGrid& G, const std::vector<cplx>& in,
                  std::size_t channels, std::vector<cplx>& out) {
  const std::size_t np = G.size();
  out.assign(channels * np, 0.0);
  const auto rows = static_cast<Eigen::Index>(channels);
  switch (L.group.kind) {
    case GroupKind::kTrivial:
      for (std::size_t c = 0; c < channels; ++c) out[c] = in[c];
      return;
    case GroupKind::kTorus: {
      const CMat ph = torus_phases(L, np, 1.0, 1.0);
      CMap(out.data(), rows, static_cast<Eigen::Index>(np)).noalias() =
          CMapConst(in.data(), rows, static_cast<Eigen::Index>(L.total)) * ph;
      return;
    }
    case GroupKind::kSU2: {
      const std::int64_t S = 2 * L.cut;
      const auto ns = static_cast<Eigen::Index>(2 * S + 1);
      const auto nphi = static_cast<Eigen::Index>(G.nphi), npsi = static_cast<Eigen::Index>(G.npsi);
      const auto ephi = phase_table(S, G.nphi, 2.0 * kPi);
      const auto epsi = phase_table(S, G.npsi, 4.0 * kPi);
      const CMapConst Epsi(epsi.data(), ns, npsi);
      const CMat EphiT = CMapConst(ephi.data(), ns, nphi).transpose();
      std::vector<WignerTable> tables;
      for (int it = 0; it < G.ntheta; ++it) tables.emplace_back(S, std::acos(G.cos_theta[static_cast<std::size_t>(it)]));
      parallel_for(channels, 4, [&](std::size_t c) {
        CMat H(ns, ns), Gs(ns, npsi);
        for (int it = 0; it < G.ntheta; ++it) {
          const WignerTable& W = tables[static_cast<std::size_t>(it)];
          H.setZero();
          for (std::size_t q = 0; q < L.classes.size(); ++q) {
            const std::int64_t tl = L.classes[q].two_l, d = tl + 1;
            for (std::int64_t row = 1; row <= d; ++row) {
              const std::int64_t tr = su2_two_m(tl, row);
              for (std::int64_t col = 1; col <= d; ++col) {
                const cplx b = in[c * L.total + L.off[q] + static_cast<std::size_t>((row - 1) * d + (col - 1))];
                if (b == 0.0) continue;
                const std::int64_t ts = su2_two_m(tl, col);
                H(ts + S, tr + S) += static_cast<double>(d) * W.get(tl, ts, tr) * b;
              }
            }
          }
          Gs.noalias() = H * Epsi;
          CMap(&out[c * np + static_cast<std::size_t>(it * nphi * npsi)], nphi, npsi).noalias() = EphiT * Gs;
        }
      });
      return;
    }
  }
}

// in: channels x grid.size(), out: channels x layout.total
void factor_anal(const FactorLayout& L, const FactorGrid& G, const std::vector<cplx>& in,
                 std::size_t channels, std::vector<cplx>& out) {
  const std::size_t np = G.size();
  out.assign(channels * L.total, 0.0);
  const auto rows = static_cast<Eigen::Index>(channels);
  switch (L.group.kind) {
    case GroupKind::kTrivial:
      for (std::size_t c = 0; c < channels; ++c) out[c] = in[c];
      return;
    case GroupKind::kTorus: {
      const CMat phT = torus_phases(L, np, -1.0, 1.0 / static_cast<double>(np)).transpose();
      CMap(out.data(), rows, static_cast<Eigen::Index>(L.total)).noalias() =
          CMapConst(in.data(), rows, static_cast<Eigen::Index>(np)) * phT;
      return;
    }
    case GroupKind::kSU2: {
      const std::int64_t S = 2 * L.cut;
      const auto ns = static_cast<Eigen::Index>(2 * S + 1);
      const auto nphi = static_cast<Eigen::Index>(G.nphi), npsi = static_cast<Eigen::Index>(G.npsi);
      const auto ephi = phase_table(S, G.nphi, 2.0 * kPi);
      const auto epsi = phase_table(S, G.npsi, 4.0 * kPi);
      const CMat EpsiCT = CMapConst(epsi.data(), ns, npsi).conjugate().transpose();
      const double norm = 1.0 / static_cast<double>(nphi * npsi);
      const CMat EphiC = CMapConst(ephi.data(), ns, nphi).conjugate() * norm;
      std::vector<WignerTable> tables;
      for (int it = 0; it < G.ntheta; ++it) tables.emplace_back(S, std::acos(G.cos_theta[static_cast<std::size_t>(it)]));
      parallel_for(channels, 4, [&](std::size_t c) {
        // psi transform of every (theta, phi) row at once
        const CMat A = CMapConst(&in[c * np], static_cast<Eigen::Index>(G.ntheta) * nphi, npsi) * EpsiCT;
        CMat V(ns, ns);
        for (int it = 0; it < G.ntheta; ++it) {
          V.noalias() = EphiC * A.middleRows(it * nphi, nphi);
          const WignerTable& W = tables[static_cast<std::size_t>(it)];
          const double wt = 0.5 * G.gl_weight[static_cast<std::size_t>(it)];
          for (std::size_t q = 0; q < L.classes.size(); ++q) {
            const std::int64_t tl = L.classes[q].two_l, d = tl + 1;
            for (std::int64_t row = 1; row <= d; ++row) {
              const std::int64_t tr = su2_two_m(tl, row);
              for (std::int64_t col = 1; col <= d; ++col) {
                const std::int64_t ts = su2_two_m(tl, col);
                out[c * L.total + L.off[q] + static_cast<std::size_t>((row - 1) * d + (col - 1))] +=
                    wt * W.get(tl, ts, tr) * V(ts + S, tr + S);
              }
            }
          }
        }
      });
      return;
    }
  }
}

}  // namespace

FactorGrid FactorGrid::for_band(const GroupTag& g, std::int64_t integrand_cut) {
  FactorGrid G;
  G.group = g;
  const auto L = static_cast<int>(std::max<std::int64_t>(0, integrand_cut));
  switch (g.kind) {
    case GroupKind::kTrivial: break;
    case GroupKind::kTorus: G.nt = L + 1; break;
    case GroupKind::kSU2:
      G.nphi = 2 * L + 2;
      G.npsi = 4 * L + 4;
      G.ntheta = L + 2;
      gauss_legendre(G.ntheta, G.cos_theta, G.gl_weight);
      break;
  }
  return G;
}

std::size_t FactorGrid::size() const {
  switch (group.kind) {
    case GroupKind::kTrivial: return 1;
    case GroupKind::kTorus: return static_cast<std::size_t>(nt);
    case GroupKind::kSU2: return static_cast<std::size_t>(nphi) * static_cast<std::size_t>(ntheta) * static_cast<std::size_t>(npsi);
  }
  return 1;
}

FactorPoint FactorGrid::point(std::size_t i) const {
  FactorPoint p;
  switch (group.kind) {
    case GroupKind::kTrivial: break;
    case GroupKind::kTorus: p.t = 2.0 * kPi * static_cast<double>(i) / nt; break;
    case GroupKind::kSU2: {
      const std::size_t k = i % static_cast<std::size_t>(npsi);
      const std::size_t f = (i / static_cast<std::size_t>(npsi)) % static_cast<std::size_t>(nphi);
      const std::size_t t = i / (static_cast<std::size_t>(npsi) * static_cast<std::size_t>(nphi));
      p.psi = 4.0 * kPi * static_cast<double>(k) / npsi;
      p.phi = 2.0 * kPi * static_cast<double>(f) / nphi;
      p.theta = std::acos(cos_theta[t]);
      break;
    }
  }
  return p;
}

std::int64_t grid_exact_cut(const FactorGrid& g) {
  switch (g.group.kind) {
    case GroupKind::kTrivial: return std::numeric_limits<std::int64_t>::max() / 4;
    case GroupKind::kTorus: return g.nt - 1;
    case GroupKind::kSU2:
      return std::min({static_cast<std::int64_t>(g.nphi - 1), static_cast<std::int64_t>((g.npsi - 1) / 2),
                       static_cast<std::int64_t>(2 * g.ntheta - 1)});
  }
  return 0;
}

ProductPoint SampleGrid::point(std::size_t i) const {
  return {f1.point(i % f1.size()), f2.point(i / f1.size())};
}

SampleGrid grid_for(const GroupTag& g1, const GroupTag& g2, const Truncation& a, const Truncation& b) {
  SampleGrid g{FactorGrid::for_band(g1, a.cut1 + b.cut1), FactorGrid::for_band(g2, a.cut2 + b.cut2)};
  if (g.size() > kMaxGridPoints) {
    throw Error(ErrorCode::kBandOverflow, "sample grid of " + std::to_string(g.size()) + " points exceeds the limit");
  }
  return g;
}

namespace {

void check_grid_groups(const SampleGrid& grid, const GroupTag& g1, const GroupTag& g2) {
  if (!(grid.f1.group == g1) || !(grid.f2.group == g2)) {
    throw Error(ErrorCode::kTruncationMismatch, "grid groups differ from field groups");
  }
}

}  // namespace

std::vector<cplx> synthesize_grid(const CoefficientField& c, const SampleGrid& grid) {
  check_grid_groups(grid, c.group1(), c.group2());
  const FactorLayout L1(c.group1(), c.band().cut1), L2(c.group2(), c.band().cut2);
  std::vector<cplx> C(L1.total * L2.total, 0.0);
  for (std::size_t a = 0; a < L1.classes.size(); ++a) {
    for (std::size_t b = 0; b < L2.classes.size(); ++b) {
      const Block& blk = c.block(L1.classes[a], L2.classes[b]);
      const std::int64_t d1 = blk.d1, d2 = blk.d2;
      for (std::int64_t m = 1; m <= d1; ++m) {
        for (std::int64_t n = 1; n <= d1; ++n) {
          const std::size_t ch = L1.off[a] + static_cast<std::size_t>((m - 1) * d1 + (n - 1));
          for (std::int64_t r = 1; r <= d2; ++r) {
            for (std::int64_t s = 1; s <= d2; ++s) {
              C[ch * L2.total + L2.off[b] + static_cast<std::size_t>((r - 1) * d2 + (s - 1))] = blk.at(m, n, r, s);
            }
          }
        }
      }
    }
  }
  std::vector<cplx> P;
  factor_synth(L2, grid.f2, C, L1.total, P);  // L1.total x n2
  const std::size_t n1 = grid.f1.size(), n2 = grid.f2.size();
  std::vector<cplx> PT(n2 * L1.total);
  for (std::size_t a = 0; a < L1.total; ++a) {
    for (std::size_t j = 0; j < n2; ++j) PT[j * L1.total + a] = P[a * n2 + j];
  }
  std::vector<cplx> out;
  factor_synth(L1, grid.f1, PT, n2, out);  // n2 x n1, i = i2 * n1 + i1
  (void)n1;
  return out;
}

CoefficientField analyze_grid(const std::vector<cplx>& values, const SampleGrid& grid,
                              const GroupTag& g1, const GroupTag& g2, const Truncation& band) {
  check_grid_groups(grid, g1, g2);
  if (values.size() != grid.size()) throw Error(ErrorCode::kInvalidInput, "sample count differs from grid size");
  CoefficientField out(g1, g2, band);
  const FactorLayout L1(g1, out.band().cut1), L2(g2, out.band().cut2);
  const std::size_t n2 = grid.f2.size();
  std::vector<cplx> A;
  factor_anal(L1, grid.f1, values, n2, A);  // n2 x L1.total
  std::vector<cplx> AT(L1.total * n2);
  for (std::size_t j = 0; j < n2; ++j) {
    for (std::size_t a = 0; a < L1.total; ++a) AT[a * n2 + j] = A[j * L1.total + a];
  }
  std::vector<cplx> C;
  factor_anal(L2, grid.f2, AT, L1.total, C);  // L1.total x L2.total
  for (std::size_t a = 0; a < L1.classes.size(); ++a) {
    for (std::size_t b = 0; b < L2.classes.size(); ++b) {
      Block& blk = out.block(L1.classes[a], L2.classes[b]);
      const std::int64_t d1 = blk.d1, d2 = blk.d2;
      for (std::int64_t m = 1; m <= d1; ++m) {
        for (std::int64_t n = 1; n <= d1; ++n) {
          const std::size_t ch = L1.off[a] + static_cast<std::size_t>((m - 1) * d1 + (n - 1));
          for (std::int64_t r = 1; r <= d2; ++r) {
            for (std::int64_t s = 1; s <= d2; ++s) {
              blk.at(m, n, r, s) = C[ch * L2.total + L2.off[b] + static_cast<std::size_t>((r - 1) * d2 + (s - 1))];
            }
          }
        }
      }
    }
  }
  return out;
}

CoefficientField analyze(const std::function<cplx(const ProductPoint&)>& f, const GroupTag& g1,
                         const GroupTag& g2, const Truncation& band, const Truncation& f_band,
                         AnalysisReport* report, const SampleGrid* grid_override) {
  SampleGrid grid = grid_override ? *grid_override : grid_for(g1, g2, band, f_band);
  std::vector<cplx> values(grid.size());
  parallel_for(values.size(), 4096, [&](std::size_t i) { values[i] = f(grid.point(i)); });
  if (report) {
    report->exact_cut1 = grid_exact_cut(grid.f1);
    report->exact_cut2 = grid_exact_cut(grid.f2);
    report->required_cut1 = g1.kind == GroupKind::kTrivial ? 0 : band.cut1 + f_band.cut1;
    report->required_cut2 = g2.kind == GroupKind::kTrivial ? 0 : band.cut2 + f_band.cut2;
    report->aliasing_warning = report->exact_cut1 < report->required_cut1 || report->exact_cut2 < report->required_cut2;
  }
  return analyze_grid(values, grid, g1, g2, band);
}

CoefficientField random_field(const GroupTag& g1, const GroupTag& g2, const Truncation& band,
                              std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CoefficientField c(g1, g2, band);
  for (auto& [key, blk] : c.blocks()) {
    for (cplx& v : blk.a) {
      const double re = u(rng);
      v = cplx(re, u(rng));
    }
  }
  return c;
}

double plancherel_norm(const CoefficientField& c) {
  double sum = 0.0;
  for (const auto& [key, blk] : c.blocks()) {
    double hs = 0.0;
    for (const auto& v : blk.a) hs += std::norm(v);
    sum += static_cast<double>(blk.d1 * blk.d2) * hs;
  }
  return std::sqrt(sum);
}

CoefficientField multiply(const CoefficientField& a, const CoefficientField& b) {
  return multiply(a, b, {a.band().cut1 + b.band().cut1, a.band().cut2 + b.band().cut2});
}

CoefficientField multiply(const CoefficientField& a, const CoefficientField& b, const Truncation& band) {
  if (!(a.group1() == b.group1()) || !(a.group2() == b.group2())) {
    throw Error(ErrorCode::kTruncationMismatch, "product of fields on different groups");
  }
  const Truncation sum{a.band().cut1 + b.band().cut1, a.band().cut2 + b.band().cut2};
  SampleGrid grid = grid_for(a.group1(), a.group2(), sum, band);
  auto va = synthesize_grid(a, grid);
  auto vb = synthesize_grid(b, grid);
  for (std::size_t i = 0; i < va.size(); ++i) va[i] *= vb[i];
  return analyze_grid(va, grid, a.group1(), a.group2(), band);
}

}  // namespace komatsu
