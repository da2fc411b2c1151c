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

#include "extremal/commutant.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include "extremal/error.hpp"

namespace extremal {
namespace {

void partitions_into(int remaining, int max_part, std::vector<int>& current,
                     std::vector<std::vector<int>>& out) {
  if (remaining == 0) {
    out.push_back(current);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    current.push_back(part);
    partitions_into(remaining - part, part, current, out);
    current.pop_back();
  }
}

// Singular values at or below noise are rounding noise of the input, whatever their ratio to sigma_max.
RankInfo rank_from_singular_values(const VecX& sv, double noise) {
  RankInfo info;
  info.singular_values = sv;
  const double smax = sv.size() == 0 ? 0.0 : sv.maxCoeff();
  info.threshold = std::max(kRankThreshold * smax, noise);
  if (smax <= noise) return info;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > info.threshold) ++info.rank;
    if (sv(i) > noise && sv(i) > 1e-2 * info.threshold && sv(i) < 1e2 * info.threshold) info.borderline = true;
  }
  return info;
}

double noise_floor(const MatXc& h) {
  return 1e3 * std::numeric_limits<double>::epsilon() * static_cast<double>(h.rows()) * max_abs(h);
}

MatXc commutator_superoperator(const MatXc& h) {
  const Eigen::Index d = h.rows();
  const MatXc id = MatXc::Identity(d, d);
  // vec(H X - X H) = (I kron H - H^T kron I) vec(X), column-major vec.
  MatXc out(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      out.block(i * d, j * d, d, d) = id(i, j) * h - h(j, i) * id;
  return out;
}

// Free coefficient sets used by the closed-form solutions of the two-qubit Hamiltonian family.
std::vector<FanoIndex> preferred_free_set(int n) {
  if (n == 3) return {{1, 0}, {0, 2}, {1, 1}};
  if (n == 7) return {{1, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 1}, {1, 2}, {1, 3}};
  return {};
}

std::vector<FanoIndex> greedy_free_set(const MatX& basis) {
  std::vector<FanoIndex> free;
  MatX accepted(0, basis.cols());
  for (int k = 1; k < 16 && static_cast<Eigen::Index>(free.size()) < basis.cols(); ++k) {
    MatX trial(accepted.rows() + 1, basis.cols());
    trial << accepted, basis.row(k - 1);
    Eigen::JacobiSVD<MatX> svd(trial);
    const VecX sv = svd.singularValues();
    if (sv(sv.size() - 1) > 1e-6) {
      accepted = trial;
      free.push_back(FanoIndex::from_flat(k));
    }
  }
  return free;
}

double smallest_singular_value(const MatX& m) {
  if (m.size() == 0) return 1.0;
  Eigen::JacobiSVD<MatX> svd(m);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

}  // namespace

std::string StratumDescriptor::flag_manifold() const {
  if (k == 1) return "Point";
  std::vector<int> ascending(multiplicities.rbegin(), multiplicities.rend());
  std::ostringstream out;
  out << "U(" << d << ")/[";
  for (std::size_t i = 0; i < ascending.size(); ++i) {
    if (i) out << " x ";
    out << "U(" << ascending[i] << ")";
  }
  out << "]";
  return out.str();
}

StratumDescriptor stratum_from_multiplicities(int d, std::vector<int> multiplicities) {
  if (d < 1) throw Error(ErrorCode::invalid_argument, "dimension must be positive");
  if (std::any_of(multiplicities.begin(), multiplicities.end(), [](int m) { return m < 1; }) ||
      std::accumulate(multiplicities.begin(), multiplicities.end(), 0) != d)
    throw Error(ErrorCode::invalid_argument, "multiplicities must be positive and sum to d");
  std::sort(multiplicities.begin(), multiplicities.end(), std::greater<>());
  StratumDescriptor s;
  s.d = d;
  s.k = static_cast<int>(multiplicities.size());
  int squares = 0;
  for (int m : multiplicities) squares += m * m;
  s.multiplicities = std::move(multiplicities);
  s.codim = squares - s.k;
  s.dim = d * d - s.codim;
  s.r = s.dim - s.k;
  s.n = (d * d - 1) - s.r;
  return s;
}

std::vector<StratumDescriptor> strata_table(int d) {
  if (d < 1) throw Error(ErrorCode::invalid_argument, "dimension must be positive");
  std::vector<std::vector<int>> parts;
  std::vector<int> current;
  partitions_into(d, d, current, parts);
  std::vector<StratumDescriptor> table;
  table.reserve(parts.size());
  for (auto& p : parts) table.push_back(stratum_from_multiplicities(d, p));
  return table;
}

MatX commutator_constraint_matrix(const Mat4c& h) {
  const FanoOperator f = fano_decompose(h);
  MatX l = MatX::Zero(15, 15);
  for (int a = 1; a < 16; ++a) {
    const double ha = f.coeffs(a / 4, a % 4);
    if (ha == 0.0) continue;
    for (int b = 1; b < 16; ++b) {
      const DiracCommutator c = dirac_commutator(a, b);
      if (c.sign != 0) l(c.index - 1, b - 1) += ha * c.sign;
    }
  }
  return l;
}

RankInfo gram_rank_info(const MatXc& h) {
  if (h.rows() != h.cols() || h.rows() == 0)
    throw Error(ErrorCode::invalid_argument, "Hamiltonian must be a non-empty square matrix");
  if (h.rows() == 4) {
    const Mat4c h4 = h;
    Eigen::JacobiSVD<MatX> svd(commutator_constraint_matrix(h4));
    return rank_from_singular_values(svd.singularValues(), noise_floor(h));
  }
  const double defect = hermiticity_defect(h);
  if (!(defect <= kHermitianTolerance))
    throw Error(ErrorCode::non_hermitian, "matrix is not Hermitian");
  Eigen::JacobiSVD<MatXc> svd(commutator_superoperator(h));
  return rank_from_singular_values(svd.singularValues(), noise_floor(h));
}

int gram_rank(const MatXc& h) {
  return gram_rank_info(h).rank;
}

StratumDescriptor stratum_of(const MatXc& h) {
  const RankInfo info = gram_rank_info(h);
  if (info.borderline) {
    std::ostringstream msg;
    msg << "numerically borderline commutator rank " << info.rank
        << " (a singular value lies within two decades of the threshold)";
    throw Error(ErrorCode::invalid_argument, msg.str());
  }
  const int d = static_cast<int>(h.rows());
  std::vector<StratumDescriptor> matches;
  for (const auto& s : strata_table(d))
    if (s.r == info.rank) matches.push_back(s);
  if (matches.size() != 1) {
    std::ostringstream msg;
    msg << "rank " << info.rank << " matches " << matches.size() << " strata for d = " << d;
    throw Error(ErrorCode::invalid_argument, msg.str());
  }
  return matches.front();
}

double LinearRelation::coefficient(FanoIndex free) const {
  for (const auto& [idx, c] : terms)
    if (idx == free) return c;
  return 0.0;
}

VecX traceless_coefficients(const FanoOperator& f) {
  VecX v(15);
  for (int k = 1; k < 16; ++k) v(k - 1) = f.coeffs(k / 4, k % 4);
  return v;
}

FanoOperator CommutantSolution::assemble(const VecX& x) const {
  const VecX v = basis * x;
  FanoOperator f;
  f(0, 0) = 1.0;
  for (int k = 1; k < 16; ++k) f.coeffs(k / 4, k % 4) = v(k - 1);
  return f;
}

FanoOperator CommutantSolution::assemble_free(const VecX& free_values) const {
  if (free_values.size() != static_cast<Eigen::Index>(free.size()))
    throw Error(ErrorCode::invalid_argument, "wrong number of free coefficient values");
  if (!has_relations && !free.empty())
    throw Error(ErrorCode::invalid_argument, "no affine relations available for this commutant");
  FanoOperator f;
  f(0, 0) = 1.0;
  for (std::size_t i = 0; i < free.size(); ++i) f[free[i]] = free_values(static_cast<Eigen::Index>(i));
  for (const auto& rel : dependent) {
    double v = 0.0;
    for (const auto& [idx, c] : rel.terms) v += c * f[idx];
    f[rel.target] = v;
  }
  return f;
}

VecX CommutantSolution::project(const FanoOperator& f) const {
  return basis.transpose() * traceless_coefficients(f);
}

CommutantSolution solve_commutant(const Mat4c& h) {
  CommutantSolution sol;
  const MatX l = commutator_constraint_matrix(h);
  Eigen::JacobiSVD<MatX> svd(l, Eigen::ComputeFullV);
  const RankInfo info = rank_from_singular_values(svd.singularValues(), noise_floor(MatXc(h)));
  // Singular values are sorted descending, so the trailing columns of V span the nullspace.
  sol.basis = svd.matrixV().rightCols(15 - info.rank);

  try {
    sol.stratum = stratum_of(h);
  } catch (const Error& e) {
    sol.warnings.push_back(e.what());
    sol.stratum.d = 4;
    sol.stratum.r = info.rank;
    sol.stratum.n = 15 - info.rank;
  }
  if (info.borderline) sol.warnings.push_back("commutator rank is numerically borderline");
  if (sol.dimension() != sol.stratum.n) {
    std::ostringstream msg;
    msg << "commutant dimension " << sol.dimension() << " differs from (d^2 - 1) - r = " << sol.stratum.n;
    sol.warnings.push_back(msg.str());
  }

  const int n = sol.dimension();
  std::vector<FanoIndex> free = preferred_free_set(n);
  auto rows_of = [&](const std::vector<FanoIndex>& idx) {
    MatX m(static_cast<Eigen::Index>(idx.size()), n);
    for (std::size_t i = 0; i < idx.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = sol.basis.row(idx[i].flat() - 1);
    return m;
  };
  if (!free.empty() && smallest_singular_value(rows_of(free)) < 1e-6) {
    sol.warnings.push_back("preferred free coefficients are ill-conditioned; relations omitted");
    sol.free = free;
    return sol;
  }
  if (free.empty()) free = greedy_free_set(sol.basis);
  sol.free = free;
  if (static_cast<int>(free.size()) != n) {
    sol.warnings.push_back("no complete pivot set found; relations omitted");
    return sol;
  }

  const MatX nf = rows_of(free);
  const MatX coeffs = nf.transpose().partialPivLu().solve(sol.basis.transpose()).transpose();
  for (int k = 1; k < 16; ++k) {
    const FanoIndex target = FanoIndex::from_flat(k);
    if (std::find(free.begin(), free.end(), target) != free.end()) continue;
    LinearRelation rel;
    rel.target = target;
    const double scale = std::max(1.0, max_abs(coeffs.row(k - 1)));
    for (int j = 0; j < n; ++j) {
      const double c = coeffs(k - 1, j);
      if (std::abs(c) > 1e-12 * scale) rel.terms.emplace_back(free[static_cast<std::size_t>(j)], c);
    }
    sol.dependent.push_back(std::move(rel));
  }
  sol.has_relations = true;
  return sol;
}

}  // namespace extremal
