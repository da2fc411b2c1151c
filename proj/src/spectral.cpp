// Copyright 2026 The extremal-qudit Authors
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

#include "extremal/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "extremal/error.hpp"

namespace extremal {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kBoundTolerance = 1e-14;
constexpr double kImagTolerance = 1e-8;
constexpr double kSpectrumTolerance = 1e-9;

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

void require_entries(const VecX& v, int needed, const char* what) {
  if (v.size() < needed) {
    std::ostringstream msg;
    msg << what << ": need " << needed << " entries, got " << v.size();
    throw Error(ErrorCode::invalid_argument, msg.str());
  }
}

// Calls f on every k-subset of {0..n-1}.
template <typename F>
void for_each_subset(int n, int k, F&& f) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    f(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

// Groups roots (sorted by real part) into `clusters` groups by closing the smallest gaps.
// Groups computed roots into multiple roots. A window of m neighbouring roots is one
// m-fold root when its spread is within ten times the displacement that rounding of
// the coefficients causes at an exact m-fold root, (eps_P / |Q(c)|)^(1/m), where Q is
// the product over the remaining roots and eps_P the rounding level of P near c.
std::vector<std::vector<cplx>> cluster_roots(std::vector<cplx> roots, const VecX& a) {
  std::sort(roots.begin(), roots.end(), [](cplx x, cplx y) { return x.real() < y.real(); });
  const int n = static_cast<int>(roots.size());
  std::vector<int> owner(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<cplx>> out;
  for (int m = n; m >= 2; --m)
    for (int start = 0; start + m <= n; ++start) {
      bool free = true;
      for (int i = start; i < start + m; ++i) free = free && owner[static_cast<std::size_t>(i)] < 0;
      if (!free) continue;
      cplx c{0.0, 0.0};
      for (int i = start; i < start + m; ++i) c += roots[static_cast<std::size_t>(i)];
      c /= static_cast<double>(m);
      double spread = 0.0;
      for (int i = start; i < start + m; ++i) spread = std::max(spread, std::abs(roots[static_cast<std::size_t>(i)] - c));
      double q = 1.0;
      for (int j = 0; j < n; ++j)
        if (j < start || j >= start + m) q *= std::abs(c - roots[static_cast<std::size_t>(j)]);
      double level = 0.0;
      for (Eigen::Index k = 0; k < a.size(); ++k) level += std::abs(a(k)) * std::pow(std::abs(c), static_cast<double>(a.size() - 1 - k));
      level *= kEps * static_cast<double>(n);
      if (q == 0.0 || spread > 10.0 * std::pow(level / q, 1.0 / m) + 1e-300) continue;
      out.emplace_back(roots.begin() + start, roots.begin() + start + m);
      for (int i = start; i < start + m; ++i) owner[static_cast<std::size_t>(i)] = static_cast<int>(out.size()) - 1;
    }
  for (int i = 0; i < n; ++i)
    if (owner[static_cast<std::size_t>(i)] < 0) out.push_back({roots[static_cast<std::size_t>(i)]});
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.front().real() < y.front().real(); });
  return out;
}

RegionLabel label_for(int d, int rank, const std::vector<int>& mult) {
  if (rank == d) return RegionLabel::interior;
  if (rank == 1) return RegionLabel::maximally_mixed_vertex;
  if (rank == d - 1) return RegionLabel::two_fold_surface;
  if (d == 4 && mult == std::vector<int>{3, 1}) return RegionLabel::three_fold_curve;
  if (d == 4 && mult == std::vector<int>{2, 2}) return RegionLabel::two_pair_curve;
  return RegionLabel::degenerate;
}

}  // namespace

VecX char_poly_coeffs(const VecX& spectrum) {
  const Eigen::Index d = spectrum.size();
  VecX a = VecX::Zero(d + 1);
  a(0) = 1.0;
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index k = i + 1; k >= 1; --k) a(k) += spectrum(i) * a(k - 1);
  return a;
}

VecX char_poly_coeffs(const MatXc& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::invalid_argument, "matrix must be square");
  const int d = static_cast<int>(m.rows());
  VecX t(d + 1);
  t(0) = d;
  MatXc power = MatXc::Identity(d, d);
  for (int k = 1; k <= d; ++k) {
    power = power * m;
    t(k) = power.trace().real();
  }
  return coeffs_from_power_sums(t, d);
}

VecX power_sums_from_coeffs(const VecX& a, int max_power) {
  if (a.size() < 1 || max_power < 0) throw Error(ErrorCode::invalid_argument, "empty coefficient vector");
  const int d = static_cast<int>(a.size()) - 1;
  VecX t = VecX::Zero(max_power + 1);
  t(0) = d;
  for (int k = 1; k <= max_power; ++k) {
    double s = 0.0;
    for (int i = 1; i <= std::min(k - 1, d); ++i) s += ((i % 2) ? 1.0 : -1.0) * a(i) * t(k - i);
    if (k <= d) s += ((k % 2) ? 1.0 : -1.0) * k * a(k);
    t(k) = s;
  }
  return t;
}

VecX coeffs_from_power_sums(const VecX& t, int d) {
  require_entries(t, d + 1, "coeffs_from_power_sums");
  VecX a = VecX::Zero(d + 1);
  a(0) = 1.0;
  for (int k = 1; k <= d; ++k) {
    double s = 0.0;
    for (int i = 1; i <= k; ++i) s += ((i % 2) ? 1.0 : -1.0) * a(k - i) * t(i);
    a(k) = s / k;
  }
  return a;
}

VecX power_sums(const VecX& spectrum, int max_power) {
  VecX t(max_power + 1);
  VecX p = VecX::Ones(spectrum.size());
  for (int k = 0; k <= max_power; ++k) {
    t(k) = p.sum();
    p = p.cwiseProduct(spectrum);
  }
  return t;
}

std::vector<std::vector<int>> diophantine_partitions(int k) {
  if (k < 1) throw Error(ErrorCode::invalid_argument, "partition order must be positive");
  std::vector<std::vector<int>> out;
  std::vector<int> q(static_cast<std::size_t>(k), 0);
  // Largest parts first, so (q_1 = k) comes last as in the usual listing.
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.push_back(q);
      return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      ++q[static_cast<std::size_t>(part - 1)];
      self(self, remaining - part, part);
      --q[static_cast<std::size_t>(part - 1)];
    }
  };
  rec(rec, k, k);
  return out;
}

double girard_waring(const VecX& t, int k) {
  require_entries(t, k + 1, "girard_waring");
  if (k == 0) return 1.0;
  double sum = 0.0;
  for (const auto& q : diophantine_partitions(k)) {
    double term = 1.0;
    for (int j = 1; j <= k; ++j) {
      const int qj = q[static_cast<std::size_t>(j - 1)];
      if (qj == 0) continue;
      const double base = ((j % 2) ? 1.0 : -1.0) * t(j) / j;
      term *= std::pow(base, qj) / factorial(qj);
    }
    sum += term;
  }
  return sum;
}

double girard_waring_inverse(const VecX& a, int k) {
  require_entries(a, k + 1, "girard_waring_inverse");
  if (k == 0) return static_cast<double>(a.size() - 1);
  double sum = 0.0;
  for (const auto& q : diophantine_partitions(k)) {
    const int m = std::accumulate(q.begin(), q.end(), 0);
    double term = factorial(m - 1) * (((k + m) % 2) ? -1.0 : 1.0);
    for (int j = 1; j <= k; ++j) {
      const int qj = q[static_cast<std::size_t>(j - 1)];
      if (qj) term *= std::pow(a(j), qj) / factorial(qj);
    }
    sum += term;
  }
  return k * sum;
}

double plemelj_smithies_coeff(const VecX& t, int k) {
  require_entries(t, k + 1, "plemelj_smithies_coeff");
  if (k == 0) return 1.0;
  MatX m = MatX::Zero(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j <= i; ++j) m(i, j) = t(i - j + 1);
    if (i + 1 < k) m(i, i + 1) = i + 1;
  }
  return m.determinant() / factorial(k);
}

double plemelj_smithies_power_sum(const VecX& a, int k) {
  require_entries(a, k + 1, "plemelj_smithies_power_sum");
  if (k == 0) return static_cast<double>(a.size() - 1);
  MatX m = MatX::Zero(k, k);
  for (int i = 0; i < k; ++i) {
    m(i, 0) = (i + 1) * a(i + 1);
    for (int j = 1; j <= i; ++j) m(i, j) = a(i - j + 1);
    if (i + 1 < k) m(i, i + 1) = 1.0;
  }
  return m.determinant();
}

MatX bezoutian(const VecX& t, int d) {
  require_entries(t, 2 * d - 1, "bezoutian");
  MatX b(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) b(i, j) = t(i + j);
  return b;
}

VecX bezoutian_invariants(const MatX& b) {
  const int d = static_cast<int>(b.rows());
  VecX e = VecX::Zero(d);
  for (int k = 1; k <= d; ++k) {
    double s = 0.0;
    for_each_subset(d, k, [&](const std::vector<int>& idx) {
      MatX minor(k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) minor(i, j) = b(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
      s += minor.fullPivLu().determinant();
    });
    e(k - 1) = s;
  }
  return e;
}

VecX bezoutian_invariants_from_traces(const MatX& b) {
  const VecX a = char_poly_coeffs(MatXc(b.cast<cplx>()));
  return a.tail(a.size() - 1);
}

int numeric_rank(const MatX& m, double relative_threshold) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<MatX> svd(m);
  const VecX sv = svd.singularValues();
  const double smax = sv(0);
  if (smax == 0.0) return 0;
  return static_cast<int>((sv.array() > relative_threshold * smax).count());
}

Eigen::VectorXcd polynomial_roots(const VecX& a) {
  const int d = static_cast<int>(a.size()) - 1;
  if (d < 1) return Eigen::VectorXcd(0);
  MatX companion = MatX::Zero(d, d);
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  // x^d + sum_k (-1)^k a_k x^(d-k): last column holds -(constant .. x^(d-1) coefficient).
  for (int k = 1; k <= d; ++k) companion(d - k, d - 1) = -((k % 2) ? -1.0 : 1.0) * a(k);
  Eigen::EigenSolver<MatX> es(companion, false);
  return es.eigenvalues();
}

std::string to_string(RegionLabel label) {
  switch (label) {
    case RegionLabel::interior: return "interior";
    case RegionLabel::two_fold_surface: return "two_fold_surface";
    case RegionLabel::three_fold_curve: return "three_fold_curve";
    case RegionLabel::two_pair_curve: return "two_pair_curve";
    case RegionLabel::maximally_mixed_vertex: return "maximally_mixed_vertex";
    case RegionLabel::degenerate: return "degenerate";
    case RegionLabel::outside: return "outside";
  }
  return "outside";
}

VecX MixingTarget::coefficients() const {
  VecX a(d + 1);
  a(0) = 1.0;
  a(1) = 1.0;
  a.tail(d - 1) = c;
  return a;
}

bool MixingTarget::is_pure() const {
  return c.size() > 0 && (c.array() == 0.0).all();
}

double coefficient_upper_bound(int d, int k) {
  return binomial(d, k) / std::pow(static_cast<double>(d), k);
}

MixingTarget make_target(const VecX& c) {
  if (c.size() < 1) throw Error(ErrorCode::invalid_argument, "mixing target needs c_2 .. c_d");
  if (!c.allFinite()) throw Error(ErrorCode::invalid_argument, "mixing target must be finite");
  MixingTarget t;
  t.d = static_cast<int>(c.size()) + 1;
  t.c = c;
  return t;
}

MixingTarget make_target(double c2, double c3, double c4) {
  return make_target(VecX{{c2, c3, c4}});
}

MixingTarget target_from_spectrum(const VecX& spectrum) {
  if (spectrum.size() < 2) throw Error(ErrorCode::invalid_argument, "spectrum needs at least two values");
  const VecX a = char_poly_coeffs(spectrum);
  return make_target(VecX(a.tail(a.size() - 2)));
}

MixingTarget region_membership(MixingTarget target) {
  const int d = target.d;
  if (target.c.size() != d - 1) throw Error(ErrorCode::invalid_argument, "mixing target size does not match d");
  target.admissible = false;
  target.spectrum.reset();
  target.multiplicities.clear();
  target.diagnostics.clear();
  target.consistent = true;
  target.label = RegionLabel::outside;

  for (int k = 2; k <= d; ++k) {
    const double ck = target.c(k - 2);
    const double ub = coefficient_upper_bound(d, k);
    if (ck < -kBoundTolerance || ck > ub + kBoundTolerance) {
      std::ostringstream msg;
      msg << "c_" << k << " = " << ck << " outside [0, " << ub << "]";
      target.diagnostics.push_back(msg.str());
    }
  }

  const VecX a = target.coefficients();
  const VecX t = power_sums_from_coeffs(a, 2 * (d - 1));
  const MatX b = bezoutian(t, d);
  const VecX e = bezoutian_invariants(b);
  target.det_bezoutian = e(d - 1);
  target.bezoutian_rank = numeric_rank(b);

  // Rounding in B of size eps * Tr B moves e_k by at most sum_j e_j (eps Tr B)^(k - j).
  const double unit = kEps * b.trace();
  for (int k = 1; k <= d; ++k) {
    double tol = 0.0;
    for (int j = 0; j < k; ++j) tol += (j == 0 ? 1.0 : std::abs(e(j - 1))) * std::pow(unit, k - j);
    tol *= 1e3;
    if (e(k - 1) < -tol) {
      std::ostringstream msg;
      msg << "Bezoutian invariant e_" << k << " = " << e(k - 1) << " is negative";
      target.diagnostics.push_back(msg.str());
    }
  }
  if (!target.diagnostics.empty()) return target;
  target.admissible = true;

  const Eigen::VectorXcd roots = polynomial_roots(a);
  std::vector<cplx> root_list(roots.data(), roots.data() + roots.size());
  const auto clusters = cluster_roots(root_list, a);
  const int distinct = static_cast<int>(clusters.size());
  if (distinct != target.bezoutian_rank) {
    std::ostringstream msg;
    msg << "Bezoutian numeric rank " << target.bezoutian_rank << " differs from " << distinct
        << " distinct roots; reporting the root count";
    target.diagnostics.push_back(msg.str());
    target.bezoutian_rank = distinct;
  }
  VecX spectrum(d);
  std::vector<std::pair<double, int>> values;
  int pos = 0;
  for (const auto& cl : clusters) {
    cplx mean = std::accumulate(cl.begin(), cl.end(), cplx{0.0, 0.0}) / static_cast<double>(cl.size());
    if (std::abs(mean.imag()) > kImagTolerance) {
      target.consistent = false;
      target.diagnostics.push_back("numerical boundary: reconstructed root has imaginary part beyond 1e-8");
    }
    if (mean.real() < -kSpectrumTolerance || mean.real() > 1.0 + kSpectrumTolerance) {
      target.consistent = false;
      target.diagnostics.push_back("numerical boundary: reconstructed root outside [0, 1]");
    }
    values.emplace_back(mean.real(), static_cast<int>(cl.size()));
    for (std::size_t i = 0; i < cl.size(); ++i) spectrum(pos++) = mean.real();
  }
  if (std::abs(spectrum.sum() - 1.0) > kSpectrumTolerance) {
    target.consistent = false;
    target.diagnostics.push_back("numerical boundary: reconstructed spectrum does not sum to 1");
  }
  for (const auto& v : values) target.multiplicities.push_back(v.second);
  std::sort(target.multiplicities.begin(), target.multiplicities.end(), std::greater<>());
  std::sort(spectrum.data(), spectrum.data() + d);
  target.spectrum = spectrum;
  target.label = label_for(d, target.bezoutian_rank, target.multiplicities);
  return target;
}

std::vector<RegionPoint> region_sample(int resolution) {
  if (resolution < 2) throw Error(ErrorCode::invalid_argument, "region resolution must be at least 2");
  const double ub2 = coefficient_upper_bound(4, 2);
  const double ub3 = coefficient_upper_bound(4, 3);
  const double ub4 = coefficient_upper_bound(4, 4);
  const double steps = resolution - 1;
  std::vector<RegionPoint> out;
  out.reserve(static_cast<std::size_t>(resolution) * resolution * resolution);
  for (int i = 0; i < resolution; ++i)
    for (int j = 0; j < resolution; ++j)
      for (int k = 0; k < resolution; ++k) {
        RegionPoint p;
        p.c2 = ub2 * i / steps;
        p.c3 = ub3 * j / steps;
        p.c4 = ub4 * k / steps;
        const MixingTarget m = region_membership(make_target(p.c2, p.c3, p.c4));
        p.label = m.admissible ? m.label : RegionLabel::outside;
        p.bezoutian_rank = m.bezoutian_rank;
        out.push_back(p);
      }
  return out;
}

}  // namespace extremal
