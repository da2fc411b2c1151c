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

#include "extremal/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "extremal/error.hpp"
#include "extremal/extremal_solver.hpp"

namespace extremal {
namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kGateTolerance = 1e-12;
constexpr double kPropositionTolerance = 1e-10;

void require_finite(const HamiltonianParams& p) {
  for (double v : {p.beta, p.gamma, p.delta, p.epsilon, p.sigma, p.s})
    if (!std::isfinite(v)) throw Error(ErrorCode::invalid_argument, "Hamiltonian parameter is not finite");
}

double commutator_norm(const Mat4c& a, const Mat4c& b) {
  return max_abs(a * b - b * a);
}

}  // namespace

double HamiltonianParams::scale() const {
  return std::max({std::abs(beta), std::abs(gamma), std::abs(delta), std::abs(epsilon),
                   std::abs(sigma), std::abs(s), 1.0});
}

bool HamiltonianParams::is_kramers() const {
  return std::abs(s - sigma) <= kGateTolerance * scale();
}

bool HamiltonianParams::is_broken() const {
  return std::abs(s + sigma) <= kGateTolerance * scale();
}

double HamiltonianParams::big_delta() const { return std::hypot(beta, gamma); }

double HamiltonianParams::omega() const { return std::hypot(sigma, epsilon); }

double HamiltonianParams::kramers_energy() const {
  return std::sqrt(beta * beta + gamma * gamma + sigma * sigma + epsilon * epsilon + delta * delta);
}

double HamiltonianParams::energy_plus() const {
  const double base = beta * beta + gamma * gamma + delta * delta + sigma * sigma + epsilon * epsilon;
  return std::sqrt(base + 2.0 * sigma * std::hypot(delta, epsilon));
}

double HamiltonianParams::energy_minus() const {
  const double base = beta * beta + gamma * gamma + delta * delta + sigma * sigma + epsilon * epsilon;
  return std::sqrt(std::max(0.0, base - 2.0 * sigma * std::hypot(delta, epsilon)));
}

void HamiltonianParams::set(const std::string& name, double value) {
  if (name == "beta") beta = value;
  else if (name == "gamma") gamma = value;
  else if (name == "delta") delta = value;
  else if (name == "epsilon") epsilon = value;
  else if (name == "sigma") sigma = value;
  else if (name == "s") s = value;
  else throw Error(ErrorCode::invalid_argument, "unknown Hamiltonian parameter '" + name + "'");
}

double HamiltonianParams::get(const std::string& name) const {
  if (name == "beta") return beta;
  if (name == "gamma") return gamma;
  if (name == "delta") return delta;
  if (name == "epsilon") return epsilon;
  if (name == "sigma") return sigma;
  if (name == "s") return s;
  throw Error(ErrorCode::invalid_argument, "unknown Hamiltonian parameter '" + name + "'");
}

Mat4c build_hamiltonian(const HamiltonianParams& p) {
  require_finite(p);
  const double b = p.beta, g = p.gamma, d = p.delta, e = p.epsilon, sg = p.sigma, s = p.s;
  Mat4c h;
  // clang-format off
  h << b,              0.0,            g - kI * s,   -e - kI * d,
       0.0,            b,              e - kI * d,    g + kI * sg,
       g + kI * s,     e + kI * d,    -b,             0.0,
      -e + kI * d,     g - kI * sg,    0.0,          -b;
  // clang-format on
  return h;
}

double TimeReversalOperator::commutation_residual(const Mat4c& x) const {
  return max_abs(unitary * x.conjugate() - x * unitary);
}

TimeReversalOperator build_time_reversal() {
  TimeReversalOperator t;
  t.unitary = Mat4c::Zero();
  for (int k = 0; k < 2; ++k) {
    // |psi_k> -> |T psi_k>, |T psi_k> -> -|psi_k>
    t.unitary(2 * k + 1, 2 * k) = 1.0;
    t.unitary(2 * k, 2 * k + 1) = -1.0;
  }
  return t;
}

CommutationCheck time_reversal_commutes(const Mat4c& h, const TimeReversalOperator& t) {
  const double residual = t.commutation_residual(h);
  return {residual <= kPropositionTolerance, residual};
}

Proposition1Report verify_proposition1(const Mat4c& h, std::span<const Mat4c> pure_states,
                                       const TimeReversalOperator& t) {
  const double h_scale = std::max(1.0, max_abs(h));
  if (t.commutation_residual(h) > kPropositionTolerance * h_scale)
    throw Error(ErrorCode::invalid_argument, "Hamiltonian is not time-reversal invariant");

  Proposition1Report report;
  report.holds = true;
  for (std::size_t i = 0; i < pure_states.size(); ++i) {
    const Mat4c& rho = pure_states[i];
    if (max_abs(rho * rho - rho) > 1e-8 || std::abs(rho.trace() - 1.0) > 1e-8)
      throw Error(ErrorCode::invalid_argument, "state " + std::to_string(i) + " is not a pure state");
    if (commutator_norm(rho, h) > 1e-8 * h_scale)
      throw Error(ErrorCode::invalid_argument, "state " + std::to_string(i) + " does not commute with H");

    Proposition1Entry entry;
    const Mat4c partner = t.conjugate(rho);
    entry.mean_value = (h * rho).trace().real();
    entry.t_residual = t.commutation_residual(rho);
    entry.partner_overlap = std::abs((rho * partner).trace());
    entry.partner_h_residual = commutator_norm(partner, h);
    entry.partner_mean_value = (h * partner).trace().real();
    entry.bounded_away = entry.t_residual >= 1e-6 * max_abs(rho);
    if (!entry.bounded_away) {
      std::ostringstream msg;
      msg << "state " << i << ": T-commutation residual " << entry.t_residual
          << " is not bounded away from zero (degenerate parameters?)";
      report.warnings.push_back(msg.str());
      report.holds = false;
    }
    if (entry.partner_overlap > kPropositionTolerance) report.holds = false;
    report.entries.push_back(entry);
  }
  return report;
}

Proposition2Report verify_proposition2(const Mat4c& h, std::span<const Mat4c> pure_states,
                                       const TimeReversalOperator& t) {
  const double h_scale = std::max(1.0, max_abs(h));
  if (t.commutation_residual(h) > kPropositionTolerance * h_scale)
    throw Error(ErrorCode::invalid_argument, "Hamiltonian is not time-reversal invariant");

  Proposition2Report report;
  report.holds = true;
  std::vector<Mat4c> distinct;
  for (const Mat4c& rho : pure_states) {
    const Mat4c p = rho + t.conjugate(rho);
    Proposition2Entry entry;
    entry.idempotency = max_abs(p * p - p);
    entry.trace = p.trace().real();
    entry.t_residual = t.commutation_residual(p);
    entry.h_residual = commutator_norm(p, h);
    report.holds = report.holds && entry.idempotency <= kPropositionTolerance &&
                   std::abs(entry.trace - 2.0) <= kPropositionTolerance &&
                   entry.t_residual <= kPropositionTolerance &&
                   entry.h_residual <= kPropositionTolerance * h_scale;
    report.entries.push_back(entry);
    const bool seen = std::any_of(distinct.begin(), distinct.end(),
                                  [&](const Mat4c& q) { return max_abs(q - p) < 1e-8; });
    if (!seen) distinct.push_back(p);
  }
  Mat4c sum = Mat4c::Zero();
  for (const Mat4c& p : distinct) sum += p;
  report.completeness = max_abs(sum - Mat4c::Identity());
  return report;
}

Proposition2Report verify_proposition2(const Mat4c& h) {
  const ExtremalStateSet pure = solve_pure_extremal(h);
  std::vector<Mat4c> states;
  for (const DensityState& s : pure.states) states.push_back(s.matrix());
  return verify_proposition2(h, states);
}

}  // namespace extremal
