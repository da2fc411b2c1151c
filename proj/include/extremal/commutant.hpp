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

#include <string>
#include <vector>

#include "extremal/pauli.hpp"
#include "extremal/types.hpp"

namespace extremal {

/// Relative singular-value threshold below which the commutator map is rank deficient.
inline constexpr double kRankThreshold = 1e-9;

/// One row of the stratification of d x d Hermitian matrices by eigenvalue multiplicities.
struct StratumDescriptor {
  int d = 0;
  std::vector<int> multiplicities;  // sorted descending, sums to d
  int k = 0;                        // number of distinct eigenvalues
  int codim = 0;                    // sum m_j^2 - k
  int dim = 0;                      // d^2 - codim
  int r = 0;                        // partial flag manifold dimension, dim - k
  int n = 0;                        // free parameters of an extremal state, (d^2 - 1) - r

  /// "Point" or U(d)/[U(m_1) x ... x U(m_k)].
  std::string flag_manifold() const;

  friend bool operator==(const StratumDescriptor&, const StratumDescriptor&) = default;
};

StratumDescriptor stratum_from_multiplicities(int d, std::vector<int> multiplicities);

/// Every stratum of dimension d, one per integer partition of d.
std::vector<StratumDescriptor> strata_table(int d);

/// Real 15 x 15 matrix L with L * (r_pq, (p,q) != (0,0)) = 0 iff [rho, H] = 0.
/// Row c collects the D_c component of [H, rho] / (2i) from the integer structure constants.
MatX commutator_constraint_matrix(const Mat4c& h);

struct RankInfo {
  int rank = 0;
  VecX singular_values;
  double threshold = 0.0;
  bool borderline = false;  // a singular value sits within two decades of the threshold
};

/// Rank of the commutator map X -> [X, H] on traceless Hermitian X; equals the
/// partial flag manifold dimension of the stratum of H.
RankInfo gram_rank_info(const MatXc& h);
int gram_rank(const MatXc& h);

/// Stratum of H from the rank alone (no eigensolve).
/// Throws ErrorCode::invalid_argument when the rank is borderline or maps to several strata.
StratumDescriptor stratum_of(const MatXc& h);

/// r_target = sum_i coefficient_i * r_free_i
struct LinearRelation {
  FanoIndex target;
  std::vector<std::pair<FanoIndex, double>> terms;

  double coefficient(FanoIndex free) const;
};

/// States commuting with H, parametrised in coefficient space (r_00 = 1 fixed).
struct CommutantSolution {
  /// Orthonormal basis of the traceless commutant; row i is coefficient flat index i + 1.
  MatX basis;
  std::vector<FanoIndex> free;
  std::vector<LinearRelation> dependent;  // empty when no well-conditioned pivot exists
  bool has_relations = false;
  StratumDescriptor stratum;
  std::vector<std::string> warnings;

  int dimension() const { return static_cast<int>(basis.cols()); }

  /// Fano coefficients (r_00 = 1) of the state with basis coordinates x.
  FanoOperator assemble(const VecX& x) const;
  /// Fano coefficients from values of the free coefficients, via the relations.
  FanoOperator assemble_free(const VecX& free_values) const;
  /// Basis coordinates of the orthogonal projection of f (r_00 ignored) onto the commutant.
  VecX project(const FanoOperator& f) const;
};

CommutantSolution solve_commutant(const Mat4c& h);

/// Coefficient vector (r_pq for flat index 1..15) of a Fano operator.
VecX traceless_coefficients(const FanoOperator& f);

}  // namespace extremal
