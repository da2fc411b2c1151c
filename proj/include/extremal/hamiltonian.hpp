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

#pragma once

#include <span>
#include <string>
#include <vector>

#include "extremal/types.hpp"

namespace extremal {

/// Parameters of the traceless 4x4 Hamiltonian written in the time-reversal
/// adapted basis {psi_1, T psi_1, psi_2, T psi_2}.
struct HamiltonianParams {
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
  double epsilon = 0.0;
  double sigma = 0.0;
  double s = 0.0;

  bool kramers_flag() const { return s == sigma; }
  bool broken_flag() const { return s == -sigma; }

  /// |s - sigma| <= 1e-12 * scale; gates the Kramers closed forms.
  bool is_kramers() const;
  /// |s + sigma| <= 1e-12 * scale; gates the broken-symmetry closed forms.
  bool is_broken() const;
  double scale() const;

  /// sqrt(beta^2 + gamma^2)
  double big_delta() const;
  /// sqrt(sigma^2 + epsilon^2)
  double omega() const;
  /// sqrt(Delta^2 + omega^2 + delta^2); equals (det H)^(1/4) when s = sigma.
  double kramers_energy() const;
  /// E_+ and E_- of the s = -sigma spectrum.
  double energy_plus() const;
  double energy_minus() const;

  /// Setter by name ("beta", "gamma", "delta", "epsilon", "sigma", "s").
  void set(const std::string& name, double value);
  double get(const std::string& name) const;
};

Mat4c build_hamiltonian(const HamiltonianParams& p);

/// Antiunitary T = U K with K complex conjugation.
struct TimeReversalOperator {
  Mat4c unitary = Mat4c::Identity();

  Vec4c apply(const Vec4c& v) const { return unitary * v.conjugate(); }
  /// T X T^{-1} = U conj(X) U^dagger.
  Mat4c conjugate(const Mat4c& x) const { return unitary * x.conjugate() * unitary.adjoint(); }
  /// max |U conj(X) - X U|, zero iff [T, X] = 0.
  double commutation_residual(const Mat4c& x) const;
};

/// Block-symplectic U = diag([[0,-1],[1,0]], [[0,-1],[1,0]]).
TimeReversalOperator build_time_reversal();

struct CommutationCheck {
  bool commutes = false;
  double residual = 0.0;
};

CommutationCheck time_reversal_commutes(const Mat4c& h, const TimeReversalOperator& t);

struct Proposition1Entry {
  double mean_value = 0.0;
  double t_residual = 0.0;          // |U conj(rho) - rho U|
  double partner_overlap = 0.0;     // Tr(rho T rho T^-1)
  double partner_h_residual = 0.0;  // |[T rho T^-1, H]|
  double partner_mean_value = 0.0;  // Tr(H T rho T^-1)
  bool bounded_away = false;
};

struct Proposition1Report {
  std::vector<Proposition1Entry> entries;
  std::vector<std::string> warnings;
  bool holds = false;
};

/// Extremal pure states of a time-reversal invariant H are not T invariant and
/// are orthogonal to their Kramers partners.
Proposition1Report verify_proposition1(const Mat4c& h, std::span<const Mat4c> pure_states,
                                       const TimeReversalOperator& t = build_time_reversal());

struct Proposition2Entry {
  double idempotency = 0.0;  // |P^2 - P|
  double trace = 0.0;
  double t_residual = 0.0;   // |U conj(P) - P U|
  double h_residual = 0.0;   // |[P, H]|
};

struct Proposition2Report {
  std::vector<Proposition2Entry> entries;
  double completeness = 0.0;  // |sum of distinct P_k - I|
  bool holds = false;
};

/// Rank-two projectors P = rho + T rho T^-1 built from the supplied pure extremal states.
Proposition2Report verify_proposition2(const Mat4c& h, std::span<const Mat4c> pure_states,
                                       const TimeReversalOperator& t = build_time_reversal());

/// Same, with the pure extremal states obtained from the numeric solver.
Proposition2Report verify_proposition2(const Mat4c& h);

}  // namespace extremal
