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
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "extremal/hamiltonian.hpp"
#include "extremal/mixture.hpp"
#include "extremal/pauli.hpp"
#include "extremal/spectral.hpp"
#include "extremal/types.hpp"

namespace extremal {

enum class PurityClass { pure, mixed };

std::string to_string(PurityClass p);

/// Weights Tr(rho Pi_j) of a state on the reference rank-one projectors Pi_j
/// (eigenprojectors of H, or gauge-fixed projectors when H is degenerate),
/// ordered by ascending mean value of Pi_j.
struct BranchLabel {
  std::vector<double> weights;
};

struct ExtremalStateSet {
  std::vector<DensityState> states;
  std::vector<double> mean_values;
  PurityClass purity_class = PurityClass::pure;
  std::vector<BranchLabel> branch_labels;
  std::vector<double> commutation_residuals;  // max |[rho, H]|
  std::vector<double> coefficient_residuals;  // max_k |a_k(rho) - c_k|
  std::vector<double> min_eigenvalues;
  int family_dimension = 0;  // dimension of the continuous family each state belongs to
  bool complete = false;     // every isolated solution (under the gauge) was found
  std::string method;        // "closed_form" or "numeric"
  std::vector<std::string> notes;
};

struct SolverOptions {
  int seeds = 200;
  std::uint64_t seed = 0;  // offset into the quasi-random seed sequence
  int max_iterations = 100;
  double dedup_tolerance = 1e-7;
};

/// All rank-one projectors commuting with H (gauge-fixed when H is degenerate).
/// Throws ErrorCode::solver_failure when the multistart budget finds none.
ExtremalStateSet solve_pure_extremal(const Mat4c& h, const SolverOptions& options = {});

/// States commuting with H whose characteristic coefficients equal the target.
/// Throws ErrorCode::inadmissible_target or ErrorCode::solver_failure.
ExtremalStateSet solve_mixed_extremal(const Mat4c& h, const MixingTarget& target,
                                      const SolverOptions& options = {});

/// Pure extremal states of the s = -sigma family in closed form, ordered
/// (1+, 1-, 2+, 2-). Degenerate parameters (gamma = 0, delta = epsilon = 0) fall back
/// to the numeric path. Throws ErrorCode::invalid_argument unless s = -sigma.
ExtremalStateSet closed_form_nondegenerate(const HamiltonianParams& params);

/// Pure extremal states of the s = sigma family in the gauge r_02 = r_03 = 0,
/// ordered (1+, 2+, 1-, 2-) to match MixtureWeights.
/// Throws ErrorCode::invalid_argument unless s = sigma, Delta > 0 and E > 0.
ExtremalStateSet closed_form_kramers_pure(const HamiltonianParams& params);

/// sum_j P_j rho_j assembled from x, y, z.
DensityState closed_form_degenerate(const HamiltonianParams& params, const MixtureWeights& weights);

struct SweepPoint {
  double value = 0.0;
  std::vector<double> mean_values;  // indexed by branch
  std::vector<bool> separable;
  std::string error;
};

struct SweepResult {
  std::string parameter;
  std::vector<SweepPoint> points;
  int branches = 0;
  std::vector<std::string> crossings;
};

/// Extremal mean values along a parameter grid, with branches matched by nearest value.
SweepResult sweep_mean_values(const HamiltonianParams& base, const std::string& parameter, double start,
                              double stop, int steps, const MixingTarget& target,
                              const SolverOptions& options = {});

/// Rows (sweep_value, branch_index, mean_value, separable, error).
void write_sweep_csv(std::ostream& out, const SweepResult& sweep);

}  // namespace extremal
