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

#include "extremal/hamiltonian.hpp"
#include "extremal/mixture.hpp"
#include "extremal/pauli.hpp"
#include "extremal/types.hpp"

namespace extremal {

/// An inequality counts as violated when it fails by more than this.
inline constexpr double kPptTolerance = 1e-10;

/// Constants of the partial-transpose coefficient relations and their bounds.
/// Exposed so verification runs can perturb them.
struct PptConstants {
  double det_c_weight = 1.0 / 4.0;
  double det_m_weight = 1.0 / 16.0;
  double a2_bound = 3.0 / 8.0;
  double a3_bound = 1.0 / 16.0;
  double a4_bound = 1.0 / 256.0;
};

struct PptCoefficients {
  double a2 = 0.0;
  double a3 = 0.0;
  double a4 = 0.0;
};

/// a_2^PT = a_2, a_3^PT = a_3 + det C / 4, a_4^PT = a_4 + det M / 16.
PptCoefficients ppt_from_invariants(double a2, double a3, double a4, double det_c, double det_m,
                                    const PptConstants& k = {});

/// Characteristic coefficients of the explicit partial transpose over A.
PptCoefficients ppt_coefficients_direct(const DensityState& rho);

/// Invariant path; throws ErrorCode::internal when it disagrees with the direct path by more than 1e-10.
PptCoefficients ppt_coefficients(const DensityState& rho, const PptConstants& k = {});

enum class Separability { separable, boundary_separable, entangled };

enum class Table2Case { maximal, three_equal, two_pair, two_equal, all_distinct, not_applicable };

std::string to_string(Separability s);
std::string to_string(Table2Case c);

struct EntanglementVerdict {
  double a2pt = 0.0;
  double a3pt = 0.0;
  double a4pt = 0.0;
  double det_c = 0.0;
  double det_m = 0.0;
  double beta = 0.0;
  double linear_entropy = 0.0;  // subsystem A
  double pt_min_eigenvalue = 0.0;
  Separability label = Separability::separable;
  std::vector<std::string> violated;  // subset of {"a2pt", "a3pt", "a4pt"}
  Table2Case table2_case = Table2Case::not_applicable;

  bool is_separable() const { return label != Separability::entangled; }
};

EntanglementVerdict classify(const DensityState& rho, const PptConstants& k = {});

/// (4/15) Tr(M^T M)
double beta_measure(const DensityState& rho);

/// (1 - |tau|^2) / 2 for the chosen subsystem.
double linear_entropy(const DensityState& rho, Subsystem subsystem);

struct DetCM {
  double det_c = 0.0;
  double det_m = 0.0;
};

/// det C and det M of the Kramers-family mixture in terms of x, y, z.
/// Throws ErrorCode::invalid_argument when Delta = 0 or E = 0.
DetCM det_cm_closed_forms(const HamiltonianParams& params, const MixtureWeights& weights);

struct Table2Result {
  EntanglementVerdict verdict;   // from the assembled mixture
  PptCoefficients formula;       // closed-form row values
  int row = 0;                   // 1..5, the row whose formula was evaluated
  std::array<int, 4> permutation{0, 1, 2, 3};  // sorted position -> original index
  bool canonical = true;         // weights already in the row's displayed order
  double formula_residual = 0.0; // max |formula - assembled|
  bool kramers_invariant = false;
  double t_residual = 0.0;
};

/// Case of the sorted weights: all equal, three equal, two pairs, one pair, all distinct (1e-9).
Table2Case table2_case_of(const MixtureWeights& weights, std::array<int, 4>* permutation = nullptr);

/// Closed-form row value; row 5 is valid for any weights, rows 2-4 for their displayed pattern.
PptCoefficients table2_row(int row, const HamiltonianParams& params, const MixtureWeights& weights);

Table2Result table2_classify(const MixtureWeights& weights, const HamiltonianParams& params);

}  // namespace extremal
