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

#include "extremal/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "extremal/error.hpp"
#include "extremal/extremal_solver.hpp"
#include "extremal/spectral.hpp"

namespace extremal {
namespace {

constexpr double kPatternTolerance = 1e-9;
constexpr double kDualPathTolerance = 1e-10;

struct FamilyScalars {
  double delta2 = 0.0;  // Delta^2
  double omega2 = 0.0;
  double e2 = 0.0;      // E^2
  double q2 = 0.0;      // Delta^2 + omega^2
  double d2 = 0.0;      // delta^2
};

FamilyScalars family_scalars(const HamiltonianParams& p) {
  FamilyScalars f;
  f.delta2 = p.beta * p.beta + p.gamma * p.gamma;
  f.omega2 = p.sigma * p.sigma + p.epsilon * p.epsilon;
  f.d2 = p.delta * p.delta;
  f.q2 = f.delta2 + f.omega2;
  f.e2 = f.q2 + f.d2;
  if (!(f.delta2 > 0.0) || !(f.e2 > 0.0))
    throw Error(ErrorCode::invalid_argument, "closed forms need Delta > 0 and E > 0");
  return f;
}

}  // namespace

MixtureWeights MixtureWeights::from(const std::array<double, 4>& p) {
  double sum = 0.0;
  for (double v : p) {
    if (!std::isfinite(v) || v < -1e-12 || v > 1.0 + 1e-12)
      throw Error(ErrorCode::invalid_argument, "mixture weights must lie in [0, 1]");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw Error(ErrorCode::invalid_argument, "mixture weights must sum to 1");
  MixtureWeights w;
  w.p = p;
  return w;
}

PptCoefficients ppt_from_invariants(double a2, double a3, double a4, double det_c, double det_m,
                                    const PptConstants& k) {
  return {a2, a3 + k.det_c_weight * det_c, a4 + k.det_m_weight * det_m};
}

PptCoefficients ppt_coefficients_direct(const DensityState& rho) {
  const VecX a = char_poly_coeffs(MatXc(partial_transpose(rho.matrix(), Subsystem::A)));
  return {a(2), a(3), a(4)};
}

PptCoefficients ppt_coefficients(const DensityState& rho, const PptConstants& k) {
  const VecX a = char_poly_coeffs(MatXc(rho.matrix()));
  const PptCoefficients via = ppt_from_invariants(a(2), a(3), a(4), rho.correlation.determinant(),
                                                  rho.schlienz_mahler.determinant(), k);
  const PptCoefficients direct = ppt_coefficients_direct(rho);
  const double gap = std::max({std::abs(via.a2 - direct.a2), std::abs(via.a3 - direct.a3),
                               std::abs(via.a4 - direct.a4)});
  if (gap > kDualPathTolerance) {
    std::ostringstream msg;
    msg << "partial-transpose coefficients disagree between invariant and direct paths by " << gap;
    throw Error(ErrorCode::internal, msg.str());
  }
  return via;
}

std::string to_string(Separability s) {
  switch (s) {
    case Separability::separable: return "separable";
    case Separability::boundary_separable: return "boundary_separable";
    case Separability::entangled: return "entangled";
  }
  return "entangled";
}

std::string to_string(Table2Case c) {
  switch (c) {
    case Table2Case::maximal: return "maximal";
    case Table2Case::three_equal: return "three-equal";
    case Table2Case::two_pair: return "two-pair";
    case Table2Case::two_equal: return "two-equal";
    case Table2Case::all_distinct: return "all-distinct";
    case Table2Case::not_applicable: return "n/a";
  }
  return "n/a";
}

EntanglementVerdict classify(const DensityState& rho, const PptConstants& k) {
  EntanglementVerdict v;
  const PptCoefficients c = ppt_coefficients(rho, k);
  v.a2pt = c.a2;
  v.a3pt = c.a3;
  v.a4pt = c.a4;
  v.det_c = rho.correlation.determinant();
  v.det_m = rho.schlienz_mahler.determinant();
  v.beta = beta_measure(rho);
  v.linear_entropy = linear_entropy(rho, Subsystem::A);
  Eigen::SelfAdjointEigenSolver<Mat4c> es(partial_transpose(rho.matrix(), Subsystem::A), Eigen::EigenvaluesOnly);
  v.pt_min_eigenvalue = es.eigenvalues()(0);

  bool band = false;
  auto check = [&](double value, double bound, const char* name) {
    const double excess = std::max(-value, value - bound);
    if (excess > kPptTolerance)
      v.violated.emplace_back(name);
    else if (excess > 0.0)
      band = true;
  };
  check(v.a2pt, k.a2_bound, "a2pt");
  check(v.a3pt, k.a3_bound, "a3pt");
  check(v.a4pt, k.a4_bound, "a4pt");
  if (!v.violated.empty())
    v.label = Separability::entangled;
  else if (band)
    v.label = Separability::boundary_separable;
  return v;
}

double beta_measure(const DensityState& rho) {
  return 4.0 / 15.0 * (rho.schlienz_mahler.transpose() * rho.schlienz_mahler).trace();
}

double linear_entropy(const DensityState& rho, Subsystem subsystem) {
  const Vec3& tau = subsystem == Subsystem::A ? rho.tau_a : rho.tau_b;
  return (1.0 - tau.squaredNorm()) / 2.0;
}

DetCM det_cm_closed_forms(const HamiltonianParams& params, const MixtureWeights& weights) {
  const FamilyScalars f = family_scalars(params);
  const double x = weights.x(), y = weights.y(), z = weights.z();
  DetCM out;
  out.det_c = -f.omega2 / f.q2 * x * y * z;
  out.det_m = f.omega2 / (f.e2 * f.q2 * f.q2) *
              (f.delta2 * f.q2 * x * x * y * y + f.d2 * f.delta2 * y * y * z * z - f.e2 * f.q2 * x * y * z);
  return out;
}

Table2Case table2_case_of(const MixtureWeights& weights, std::array<int, 4>* permutation) {
  std::array<int, 4> order{0, 1, 2, 3};
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return weights.p[static_cast<std::size_t>(a)] > weights.p[static_cast<std::size_t>(b)]; });
  if (permutation) *permutation = order;
  std::array<double, 4> w{};
  for (std::size_t i = 0; i < 4; ++i) w[i] = weights.p[static_cast<std::size_t>(order[i])];
  auto eq = [&](int i, int j) { return std::abs(w[static_cast<std::size_t>(i)] - w[static_cast<std::size_t>(j)]) <= kPatternTolerance; };
  if (eq(0, 3)) return Table2Case::maximal;
  if (eq(0, 2) || eq(1, 3)) return Table2Case::three_equal;
  if (eq(0, 1) && eq(2, 3)) return Table2Case::two_pair;
  if (eq(0, 1) || eq(1, 2) || eq(2, 3)) return Table2Case::two_equal;
  return Table2Case::all_distinct;
}

PptCoefficients table2_row(int row, const HamiltonianParams& params, const MixtureWeights& weights) {
  if (row == 1) return {3.0 / 8.0, 1.0 / 16.0, 1.0 / 256.0};
  const FamilyScalars f = family_scalars(params);
  const double k3 = f.omega2 / (4.0 * f.q2);
  const double k4 = f.omega2 / (16.0 * f.e2 * f.q2 * f.q2);
  const double dd = f.d2 * f.delta2;  // delta^2 Delta^2
  const auto& p = weights.p;
  switch (row) {
    case 2: {
      const double b = p[1];
      const double u = 1.0 - 4.0 * b;
      return {3.0 * (1.0 - 2.0 * b) * b, (3.0 - 8.0 * b) * b * b - k3 * u * u * u,
              (1.0 - 3.0 * b) * b * b * b + k4 * (u * u * u * (u * dd - f.q2 * (-u * f.delta2 + f.e2)))};
    }
    case 3: {
      const double b = p[2];
      return {0.25 + b - 2.0 * b * b, (1.0 - 2.0 * b) * b / 2.0, (b - 0.5) * (b - 0.5) * b * b};
    }
    case 4: {
      const double b = p[1], c = p[2];
      const double u = 2.0 * b + 2.0 * c - 1.0;
      const double v = 4.0 * c - 1.0;
      return {-b * b - 2.0 * b * c + b + c * (2.0 - 3.0 * c),
              c * (c - 4.0 * b * c - 2.0 * (b - 1.0) * b - 2.0 * c * c) - k3 * (1.0 - 4.0 * c) * u * u,
              b * c * c * (1.0 - b - 2.0 * c) + k4 * (u * u * (dd * u * u + v * f.q2 * (v * f.delta2 + f.e2)))};
    }
    case 5: {
      const double b = p[1], c = p[2], d = p[3];
      const double ubc = 1.0 - 2.0 * b - 2.0 * c;
      const double ubd = 1.0 - 2.0 * b - 2.0 * d;
      const double ucd = 1.0 - 2.0 * c - 2.0 * d;
      return {-b * b - d * (b + c) - b * c + b - c * c + c - d * d + d,
              b * (1.0 - c - d) * (c + d) + c * d * (1.0 - c - d) - b * b * (c + d) - k3 * ubc * ubd * ucd,
              b * c * d * (1.0 - b - c - d) +
                  k4 * (f.delta2 * f.q2 * ucd * ucd * ubd * ubd + dd * ubd * ubd * ubc * ubc -
                        f.e2 * f.q2 * ucd * ubd * ubc)};
    }
    default:
      throw Error(ErrorCode::invalid_argument, "mixture-table rows are numbered 1 to 5");
  }
}

Table2Result table2_classify(const MixtureWeights& weights, const HamiltonianParams& params) {
  Table2Result out;
  const Table2Case c = table2_case_of(weights, &out.permutation);
  const auto& p = weights.p;
  auto eq = [&](int i, int j) {
    return std::abs(p[static_cast<std::size_t>(i)] - p[static_cast<std::size_t>(j)]) <= kPatternTolerance;
  };
  switch (c) {
    case Table2Case::maximal: out.row = 1; break;
    case Table2Case::three_equal: out.row = 2; out.canonical = eq(1, 2) && eq(2, 3); break;
    case Table2Case::two_pair: out.row = 3; out.canonical = eq(0, 1) && eq(2, 3); break;
    case Table2Case::two_equal: out.row = 4; out.canonical = eq(2, 3); break;
    case Table2Case::all_distinct: out.row = 5; break;
    case Table2Case::not_applicable: throw Error(ErrorCode::internal, "weights match no mixture-table pattern");
  }
  // Row 5 is the general expression; it stands in for a row whose displayed order does not match.
  out.formula = table2_row(out.canonical ? out.row : 5, params, weights);

  const DensityState rho = closed_form_degenerate(params, weights);
  out.verdict = classify(rho);
  out.verdict.table2_case = c;
  out.formula_residual = std::max({std::abs(out.formula.a2 - out.verdict.a2pt),
                                   std::abs(out.formula.a3 - out.verdict.a3pt),
                                   std::abs(out.formula.a4 - out.verdict.a4pt)});
  out.t_residual = build_time_reversal().commutation_residual(rho.matrix());
  out.kramers_invariant = out.t_residual <= kPptTolerance;
  return out;
}

}  // namespace extremal
