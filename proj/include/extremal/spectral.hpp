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

#include <optional>
#include <string>
#include <vector>

#include "extremal/types.hpp"

namespace extremal {

// Coefficient vectors a hold (a_0, ..., a_d) with a_0 = 1 and
// P_d(x) = sum_k (-1)^k a_k x^(d-k), so a_k is the k-th elementary symmetric
// function of the roots. Power-sum vectors t hold (t_0, t_1, ...) with t_0 = d.

VecX char_poly_coeffs(const VecX& spectrum);
/// Coefficients of det(x I - m) for a square matrix, from the traces of its powers.
VecX char_poly_coeffs(const MatXc& m);

/// t_0 .. t_max_power of the roots of P_d, by Newton's identities.
VecX power_sums_from_coeffs(const VecX& a, int max_power);
/// a_0 .. a_d from t_1 .. t_d (t must have at least d + 1 entries).
VecX coeffs_from_power_sums(const VecX& t, int d);
VecX power_sums(const VecX& spectrum, int max_power);

/// Solutions q = (q_1, ..., q_k) of 1 q_1 + 2 q_2 + ... + k q_k = k.
std::vector<std::vector<int>> diophantine_partitions(int k);

/// a_k from t_1 .. t_k as a sum over the partitions of k.
double girard_waring(const VecX& t, int k);
/// t_k from a_1 .. a_k as a sum over the partitions of k.
double girard_waring_inverse(const VecX& a, int k);

/// a_k = det(T_k) / k! with T_k the Hessenberg matrix of power sums.
double plemelj_smithies_coeff(const VecX& t, int k);
/// t_k = det(A_k) with A_k the Hessenberg matrix of coefficients.
double plemelj_smithies_power_sum(const VecX& a, int k);

/// Hankel matrix B(i, j) = t_{i + j}, 0 <= i, j < d; needs t_0 .. t_{2(d-1)}.
MatX bezoutian(const VecX& t, int d);

/// e_1 .. e_d of the eigenvalues of a symmetric matrix, as principal-minor sums.
VecX bezoutian_invariants(const MatX& b);
/// Same quantities from traces of powers (Newton's identities on Tr B^k).
VecX bezoutian_invariants_from_traces(const MatX& b);

/// Numerical rank with singular values below 1e-9 sigma_max treated as zero.
int numeric_rank(const MatX& m, double relative_threshold = 1e-9);

/// Complex roots of the monic polynomial with coefficients a (companion eigenvalues).
Eigen::VectorXcd polynomial_roots(const VecX& a);

enum class RegionLabel {
  interior,
  two_fold_surface,
  three_fold_curve,
  two_pair_curve,
  maximally_mixed_vertex,
  degenerate,  // any other multiplicity pattern (d != 4)
  outside,
};

std::string to_string(RegionLabel label);

struct MixingTarget {
  int d = 4;
  VecX c;  // (c_2, ..., c_d)
  bool admissible = false;
  std::optional<VecX> spectrum;  // ascending, distinct values repeated by multiplicity
  std::vector<int> multiplicities;  // sorted descending
  int bezoutian_rank = 0;  // number of distinct roots, which is the rank of B
  double det_bezoutian = 0.0;
  RegionLabel label = RegionLabel::outside;
  bool consistent = true;  // false when the inequalities pass but root finding disagrees
  std::vector<std::string> diagnostics;

  /// (a_0, ..., a_d) = (1, 1, c_2, ..., c_d)
  VecX coefficients() const;
  bool is_pure() const;
};

/// Upper bound binom(d, k) / d^k of c_k.
double coefficient_upper_bound(int d, int k);

MixingTarget make_target(const VecX& c);
MixingTarget make_target(double c2, double c3, double c4);
/// Target whose characteristic polynomial has the given spectrum.
MixingTarget target_from_spectrum(const VecX& spectrum);

/// Bounds plus Bezoutian positivity; on acceptance reconstructs the spectrum.
MixingTarget region_membership(MixingTarget target);

struct RegionPoint {
  double c2 = 0.0;
  double c3 = 0.0;
  double c4 = 0.0;
  RegionLabel label = RegionLabel::outside;
  int bezoutian_rank = 0;
};

/// resolution points per axis over [0, 3/8] x [0, 1/16] x [0, 1/256], endpoints
/// included, c_2 outermost and c_4 innermost.
std::vector<RegionPoint> region_sample(int resolution);

}  // namespace extremal
