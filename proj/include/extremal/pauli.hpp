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

#include <array>
#include <string>
#include <vector>

#include "extremal/types.hpp"

namespace extremal {

/// Entrywise Hermiticity tolerance applied to user-supplied matrices.
inline constexpr double kHermitianTolerance = 1e-10;

/// sigma_p (x) sigma_q for p, q in {0, 1, 2, 3}; sigma_0 is the identity.
Mat4c dirac_basis_element(int p, int q);

/// All sixteen basis elements indexed by FanoIndex::flat().
const std::array<Mat4c, 16>& dirac_basis();

/// Product of two basis elements: D_a D_b = phase * D_index (flat indices).
struct DiracProduct {
  int index = 0;
  cplx phase{1.0, 0.0};
};
DiracProduct dirac_product(int a, int b);

/// Integer structure constant of the commutator: [D_a, D_b] = 2i * sign * D_index.
/// sign is 0 when the two elements commute.
struct DiracCommutator {
  int index = 0;
  int sign = 0;
};
DiracCommutator dirac_commutator(int a, int b);

double hermiticity_defect(const MatXc& m);

/// A two-qubit Hermitian operator (1/4) sum h_pq D_pq stored by its real coefficients.
struct FanoOperator {
  Mat4 coeffs = Mat4::Zero();

  double operator()(int p, int q) const { return coeffs(p, q); }
  double& operator()(int p, int q) { return coeffs(p, q); }
  double operator[](FanoIndex i) const { return coeffs(i.p, i.q); }
  double& operator[](FanoIndex i) { return coeffs(i.p, i.q); }
};

/// h_pq = Tr(H D_pq). Throws ErrorCode::non_hermitian if H is not Hermitian.
FanoOperator fano_decompose(const Mat4c& h);

/// (1/4) sum h_pq D_pq.
Mat4c fano_compose(const FanoOperator& f);

struct BlochCorrelations {
  Vec3 tau_a = Vec3::Zero();
  Vec3 tau_b = Vec3::Zero();
  Mat3 correlation = Mat3::Zero();
  Mat3 schlienz_mahler = Mat3::Zero();
};

/// Bloch vectors, correlation matrix C_st = r_st and M_st = C_st - r_s0 r_0t.
BlochCorrelations bloch_and_correlations(const FanoOperator& f);

/// A unit-trace two-qubit state in Fano form with its derived local and correlation data.
struct DensityState {
  FanoOperator fano;
  Vec3 tau_a = Vec3::Zero();
  Vec3 tau_b = Vec3::Zero();
  Mat3 correlation = Mat3::Zero();
  Mat3 schlienz_mahler = Mat3::Zero();

  /// Uses the given coefficients with r_00 overwritten by exactly 1.
  static DensityState from_fano(FanoOperator f);
  /// Requires a Hermitian matrix with unit trace (both to 1e-10).
  static DensityState from_matrix(const Mat4c& rho);
  static DensityState from_parts(const Vec3& tau_a, const Vec3& tau_b, const Mat3& correlation);
  static DensityState maximally_mixed();

  Mat4c matrix() const;
};

enum class Subsystem { A, B };

Mat4c partial_transpose(const Mat4c& rho, Subsystem subsystem);

struct IdentityCheck {
  std::string name;
  bool pass = false;
  double residual = 0.0;
};

/// Verifies orthogonality, the product rules and the commutator tables of the
/// Dirac basis by dense matrix arithmetic over every index combination.
std::vector<IdentityCheck> commutator_tables_check();

}  // namespace extremal
