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

#include "extremal/extremal_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "extremal/commutant.hpp"
#include "extremal/entanglement.hpp"
#include "extremal/error.hpp"
#include "extremal/format.hpp"
#include "extremal/random.hpp"

namespace extremal {
namespace {

constexpr double kCommutationTolerance = 1e-9;
constexpr double kCoefficientTolerance = 1e-9;
constexpr double kPositivityTolerance = -1e-10;
constexpr double kConvergedResidual = 1e-12;

double fano_component(const Mat4c& x, int k) {
  return (x.transpose().cwiseProduct(dirac_basis()[static_cast<std::size_t>(k)])).sum().real();
}

// rho(x) = I/4 + sum_i x_i g_i over a basis of the traceless commutant; roots of
// q(rho) = prod_i (rho - mu_i) together with the power sums of the target spectrum.
struct Problem {
  std::vector<Mat4c> g;
  MatX basis;                // 15 x m coefficient basis
  std::vector<double> mu;    // distinct target eigenvalues
  VecX power;                // t_2 .. t_4 of the target
  MatX gauge;                // linear gauge rows acting on x

  int dim() const { return static_cast<int>(g.size()); }

  Mat4c rho(const VecX& x) const {
    Mat4c r = Mat4c::Identity() / 4.0;
    for (int i = 0; i < dim(); ++i) r += x(i) * g[static_cast<std::size_t>(i)];
    return r;
  }

  int rows() const { return 16 + static_cast<int>(power.size()) + static_cast<int>(gauge.rows()); }

  void evaluate(const VecX& x, VecX& f, MatX* jac) const {
    const int m = dim();
    const int k = static_cast<int>(mu.size());
    const Mat4c r = rho(x);
    std::vector<Mat4c> factor(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) factor[static_cast<std::size_t>(i)] = r - mu[static_cast<std::size_t>(i)] * Mat4c::Identity();
    std::vector<Mat4c> prefix(static_cast<std::size_t>(k + 1), Mat4c::Identity());
    std::vector<Mat4c> suffix(static_cast<std::size_t>(k + 1), Mat4c::Identity());
    for (int i = 0; i < k; ++i) prefix[static_cast<std::size_t>(i + 1)] = prefix[static_cast<std::size_t>(i)] * factor[static_cast<std::size_t>(i)];
    for (int i = k - 1; i >= 0; --i) suffix[static_cast<std::size_t>(i)] = factor[static_cast<std::size_t>(i)] * suffix[static_cast<std::size_t>(i + 1)];
    const Mat4c& q = prefix[static_cast<std::size_t>(k)];

    f.resize(rows());
    for (int c = 0; c < 16; ++c) f(c) = fano_component(q, c);
    std::vector<Mat4c> rpow(static_cast<std::size_t>(power.size()) + 2, Mat4c::Identity());
    for (std::size_t p = 1; p < rpow.size(); ++p) rpow[p] = rpow[p - 1] * r;
    for (int p = 0; p < power.size(); ++p) f(16 + p) = rpow[static_cast<std::size_t>(p + 2)].trace().real() - power(p);
    const int grow = 16 + static_cast<int>(power.size());
    if (gauge.rows() > 0) f.segment(grow, gauge.rows()) = gauge * x;
    if (!jac) return;

    jac->resize(rows(), m);
    for (int i = 0; i < m; ++i) {
      const Mat4c& gi = g[static_cast<std::size_t>(i)];
      Mat4c dq = Mat4c::Zero();
      for (int j = 0; j < k; ++j) dq += prefix[static_cast<std::size_t>(j)] * gi * suffix[static_cast<std::size_t>(j + 1)];
      for (int c = 0; c < 16; ++c) (*jac)(c, i) = fano_component(dq, c);
      // d Tr(rho^n) = n Tr(rho^(n-1) g_i)
      for (int p = 0; p < power.size(); ++p) {
        const int n = p + 2;
        (*jac)(16 + p, i) = n * (rpow[static_cast<std::size_t>(n - 1)] * gi).trace().real();
      }
    }
    if (gauge.rows() > 0) jac->bottomRows(gauge.rows()) = gauge;
  }
};

Problem make_problem(const MatX& basis, const VecX& spectrum, const MatX& coefficient_gauge) {
  Problem p;
  p.basis = basis;
  const auto& d = dirac_basis();
  for (Eigen::Index i = 0; i < basis.cols(); ++i) {
    Mat4c gi = Mat4c::Zero();
    for (int c = 1; c < 16; ++c) gi += basis(c - 1, i) * d[static_cast<std::size_t>(c)];
    p.g.push_back(gi / 4.0);
  }
  std::vector<double> values(spectrum.data(), spectrum.data() + spectrum.size());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  p.mu = values;
  const VecX t = power_sums(spectrum, 4);
  p.power = t.segment(2, 3);
  p.gauge = coefficient_gauge.rows() > 0 ? MatX(coefficient_gauge * basis) : MatX(0, basis.cols());
  return p;
}

struct NewtonResult {
  bool converged = false;
  VecX x;
  double residual = 0.0;
};

VecX least_squares_step(const MatX& j, const VecX& f) {
  Eigen::JacobiSVD<MatX> svd(j, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-10);
  return svd.solve(-f);
}

// Gauss-Newton on the deflated residual prod_j (1/|x - y_j|^2 + 1) F(x), then undeflated polish.
NewtonResult newton(const Problem& p, VecX x, const std::vector<VecX>& roots, int max_iterations) {
  NewtonResult out;
  VecX f;
  MatX j;
  auto deflated = [&](const VecX& at, VecX& fd, MatX* jd) {
    p.evaluate(at, fd, jd);
    double m = 1.0;
    VecX grad = VecX::Zero(at.size());
    for (const auto& y : roots) {
      const VecX diff = at - y;
      const double d2 = std::max(diff.squaredNorm(), 1e-300);
      const double term = 1.0 / d2 + 1.0;
      m *= term;
      grad += -2.0 * diff / (d2 * d2 + d2);
    }
    if (jd) *jd = m * (*jd) + (fd * (m * grad).transpose());
    fd *= m;
  };

  bool reached = false;
  for (int it = 0; it < max_iterations; ++it) {
    p.evaluate(x, f, nullptr);
    if (f.norm() < 1e-10) {
      reached = true;
      break;
    }
    VecX fd;
    deflated(x, fd, &j);
    const VecX dx = least_squares_step(j, fd);
    const double base = fd.norm();
    double t = 1.0;
    bool accepted = false;
    while (t > 1e-4) {
      const VecX xn = x + t * dx;
      VecX fn;
      deflated(xn, fn, nullptr);
      if (fn.norm() < base) {
        x = xn;
        accepted = true;
        break;
      }
      t /= 2.0;
    }
    if (!accepted || x.norm() > 10.0) return out;
  }
  if (!reached) return out;

  double prev = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 20; ++it) {
    p.evaluate(x, f, &j);
    const double r = f.norm();
    if (!(r < prev)) break;
    prev = r;
    const VecX dx = least_squares_step(j, f);
    x += dx;
    if (dx.norm() < 1e-15) break;
  }
  p.evaluate(x, f, nullptr);
  out.residual = f.norm();
  out.converged = out.residual < kConvergedResidual;
  out.x = x;
  return out;
}

double commutation_residual(const Mat4c& a, const Mat4c& b) {
  return max_abs(MatXc(a * b - b * a));
}

double hamiltonian_scale(const Mat4c& h) {
  return max_abs(h);
}

struct Candidate {
  DensityState state;
  double mean = 0.0;
  double commutation = 0.0;
  double coefficient = 0.0;
  double min_eigenvalue = 0.0;
};

// Least-squares coordinates of a Hermitian matrix in the span of p.g.
VecX coordinates(const Problem& p, const Mat4c& m) {
  const int n = p.dim();
  MatX gram(n, n);
  VecX rhs(n);
  const Mat4c shifted = m - Mat4c::Identity() / 4.0;
  for (int i = 0; i < n; ++i) {
    rhs(i) = (p.g[static_cast<std::size_t>(i)] * shifted).trace().real();
    for (int j = 0; j < n; ++j)
      gram(i, j) = (p.g[static_cast<std::size_t>(i)] * p.g[static_cast<std::size_t>(j)]).trace().real();
  }
  return gram.ldlt().solve(rhs);
}

std::vector<Candidate> multistart(const Mat4c& h, const Problem& p, const VecX& target_coeffs, int expected,
                                  const SolverOptions& options, const std::vector<VecX>& initial = {}) {
  std::vector<VecX> roots;
  std::vector<Candidate> found;
  const double hs = hamiltonian_scale(h);
  const int total = static_cast<int>(initial.size()) + options.seeds;
  for (int s = 0; s < total && static_cast<int>(found.size()) < expected; ++s) {
    const int halton = s - static_cast<int>(initial.size());
    const VecX x0 = halton < 0 ? initial[static_cast<std::size_t>(s)]
                               : VecX(2.0 * halton_point(options.seed + static_cast<std::uint64_t>(halton) + 1, p.dim()).array() - 1.0);
    // Targeted start points are refined without deflation; duplicates are dropped below.
    const NewtonResult nr = newton(p, x0, halton < 0 ? std::vector<VecX>{} : roots, options.max_iterations);
    if (!nr.converged) continue;
    const bool known = std::any_of(roots.begin(), roots.end(),
                                   [&](const VecX& y) { return (y - nr.x).norm() < options.dedup_tolerance; });
    if (known) continue;
    roots.push_back(nr.x);

    Candidate c;
    const Mat4c rho = p.rho(nr.x);
    c.state = DensityState::from_fano(fano_decompose(rho));
    const Mat4c dense = c.state.matrix();
    c.mean = (h * dense).trace().real();
    c.commutation = commutation_residual(dense, h);
    const VecX a = char_poly_coeffs(MatXc(dense));
    c.coefficient = (a.tail(3) - target_coeffs.tail(3)).cwiseAbs().maxCoeff();
    Eigen::SelfAdjointEigenSolver<Mat4c> es(dense, Eigen::EigenvaluesOnly);
    c.min_eigenvalue = es.eigenvalues()(0);
    if (c.commutation > kCommutationTolerance * hs + 1e-15) continue;
    if (c.coefficient > kCoefficientTolerance) continue;
    if (c.min_eigenvalue < kPositivityTolerance) continue;
    const bool duplicate = std::any_of(found.begin(), found.end(), [&](const Candidate& o) {
      return (o.state.fano.coeffs - c.state.fano.coeffs).norm() < options.dedup_tolerance;
    });
    if (!duplicate) found.push_back(std::move(c));
  }
  std::sort(found.begin(), found.end(), [](const Candidate& a, const Candidate& b) {
    if (a.mean != b.mean) return a.mean < b.mean;
    return std::lexicographical_compare(a.state.fano.coeffs.data(), a.state.fano.coeffs.data() + 16,
                                        b.state.fano.coeffs.data(), b.state.fano.coeffs.data() + 16);
  });
  return found;
}

MatX nullspace(const MatX& l) {
  Eigen::JacobiSVD<MatX> svd(l, Eigen::ComputeFullV);
  const VecX sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > kRankThreshold * smax && smax > 0.0) ++rank;
  return svd.matrixV().rightCols(l.cols() - rank);
}

// Traceless commutant of both H and K.
MatX joint_commutant(const Mat4c& h, const Mat4c& k) {
  MatX l(30, 15);
  l << commutator_constraint_matrix(h), commutator_constraint_matrix(k);
  return nullspace(l);
}

// Fixed generic Hermitian matrix; its pinching onto the commutant of H breaks degeneracies.
Mat4c generic_reference() {
  FanoOperator f;
  for (int c = 1; c < 16; ++c) f.coeffs(c / 4, c % 4) = std::sin(1.0 + 2.718281828 * c) + 0.1 * c;
  return fano_compose(f);
}

Mat4c pinch(const CommutantSolution& sol, const Mat4c& g) {
  const VecX x = sol.project(fano_decompose(g));
  FanoOperator f = sol.assemble(x);
  f(0, 0) = 0.0;
  return fano_compose(f);
}

double multinomial(const std::vector<int>& mult) {
  double r = 24.0;
  for (int m : mult)
    for (int i = 2; i <= m; ++i) r /= i;
  return r;
}

int largest_multiplicity(const StratumDescriptor& s) {
  return s.multiplicities.empty() ? 4 : s.multiplicities.front();
}

ExtremalStateSet to_set(const std::vector<Candidate>& found, PurityClass purity) {
  ExtremalStateSet set;
  set.purity_class = purity;
  set.method = "numeric";
  for (const auto& c : found) {
    set.states.push_back(c.state);
    set.mean_values.push_back(c.mean);
    set.commutation_residuals.push_back(c.commutation);
    set.coefficient_residuals.push_back(c.coefficient);
    set.min_eigenvalues.push_back(c.min_eigenvalue);
  }
  return set;
}

void label_branches(ExtremalStateSet& set, const std::vector<DensityState>& reference) {
  set.branch_labels.clear();
  for (const auto& s : set.states) {
    BranchLabel b;
    const Mat4c rho = s.matrix();
    for (const auto& r : reference) b.weights.push_back((rho * r.matrix()).trace().real());
    set.branch_labels.push_back(std::move(b));
  }
}

bool is_complete_projector_set(const std::vector<Candidate>& found) {
  if (found.size() != 4) return false;
  Mat4c sum = Mat4c::Zero();
  for (const auto& c : found) sum += c.state.matrix();
  return max_abs(MatXc(sum - Mat4c::Identity())) <= 1e-10;
}

VecX pure_spectrum() {
  return VecX{{1.0, 0.0, 0.0, 0.0}};
}

void check_hamiltonian(const Mat4c& h) {
  if (!h.allFinite()) throw Error(ErrorCode::invalid_argument, "Hamiltonian has non-finite entries");
  const double defect = hermiticity_defect(h);
  if (!(defect <= kHermitianTolerance)) throw Error(ErrorCode::non_hermitian, "Hamiltonian is not Hermitian");
}

void finish_closed_form(ExtremalStateSet& set, const Mat4c& h, const VecX& target_coeffs) {
  set.method = "closed_form";
  set.complete = true;
  for (const auto& s : set.states) {
    const Mat4c rho = s.matrix();
    set.mean_values.push_back((h * rho).trace().real());
    set.commutation_residuals.push_back(commutation_residual(rho, h));
    const VecX a = char_poly_coeffs(MatXc(rho));
    set.coefficient_residuals.push_back((a.tail(3) - target_coeffs.tail(3)).cwiseAbs().maxCoeff());
    Eigen::SelfAdjointEigenSolver<Mat4c> es(rho, Eigen::EigenvaluesOnly);
    set.min_eigenvalues.push_back(es.eigenvalues()(0));
  }
  std::vector<std::size_t> order(set.states.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return set.mean_values[a] < set.mean_values[b]; });
  std::vector<DensityState> reference;
  for (auto i : order) reference.push_back(set.states[i]);
  label_branches(set, reference);
}

}  // namespace

std::string to_string(PurityClass p) {
  return p == PurityClass::pure ? "pure" : "mixed";
}

ExtremalStateSet solve_pure_extremal(const Mat4c& h, const SolverOptions& options) {
  check_hamiltonian(h);
  const CommutantSolution sol = solve_commutant(h);
  const VecX spectrum = pure_spectrum();
  const VecX target = char_poly_coeffs(spectrum);
  ExtremalStateSet set;

  if (sol.stratum.r == 12) {
    const Problem p = make_problem(sol.basis, spectrum, MatX(0, 15));
    set = to_set(multistart(h, p, target, 4, options), PurityClass::pure);
    set.complete = set.states.size() == 4;
  } else {
    bool done = false;
    if (sol.stratum.multiplicities == std::vector<int>{2, 2}) {
      MatX gauge = MatX::Zero(2, 15);
      gauge(0, FanoIndex{0, 2}.flat() - 1) = 1.0;
      gauge(1, FanoIndex{0, 3}.flat() - 1) = 1.0;
      const Problem p = make_problem(sol.basis, spectrum, gauge);
      const auto found = multistart(h, p, target, 4, options);
      if (is_complete_projector_set(found)) {
        set = to_set(found, PurityClass::pure);
        set.complete = true;
        set.notes.push_back(
            "pure extremal states form a 2-parameter family (free r_02, r_03); shown in the gauge r_02 = r_03 = 0");
        done = true;
      }
    }
    if (!done) {
      const Mat4c k = pinch(sol, generic_reference());
      const Problem p = make_problem(joint_commutant(h, k), spectrum, MatX(0, 15));
      set = to_set(multistart(h, p, target, 4, options), PurityClass::pure);
      set.complete = set.states.size() == 4;
      std::ostringstream note;
      note << "H is degenerate; pure extremal states form a family of dimension "
           << 2 * (largest_multiplicity(sol.stratum) - 1)
           << ", shown as the eigenbasis of a fixed generic element of the commutant";
      set.notes.push_back(note.str());
    }
    set.family_dimension = 2 * (largest_multiplicity(sol.stratum) - 1);
  }
  for (const auto& w : sol.warnings) set.notes.push_back(w);
  if (set.states.empty()) throw Error(ErrorCode::solver_failure, "no pure extremal state found within the multistart budget");
  if (!set.complete) {
    std::ostringstream note;
    note << "found " << set.states.size() << " of 4 pure extremal states";
    set.notes.push_back(note.str());
  }
  label_branches(set, set.states);
  return set;
}

ExtremalStateSet solve_mixed_extremal(const Mat4c& h, const MixingTarget& requested, const SolverOptions& options) {
  check_hamiltonian(h);
  if (requested.d != 4) throw Error(ErrorCode::invalid_argument, "mixing target must have d = 4");
  const MixingTarget target = region_membership(requested);
  if (!target.admissible || !target.spectrum) {
    std::ostringstream msg;
    msg << "mixing target is not admissible";
    for (const auto& d : target.diagnostics) msg << "; " << d;
    throw Error(ErrorCode::inadmissible_target, msg.str());
  }
  if (target.is_pure()) return solve_pure_extremal(h, options);

  const ExtremalStateSet pure = solve_pure_extremal(h, options);
  if (!pure.complete) throw Error(ErrorCode::solver_failure, "pure extremal states incomplete; cannot fix the mixed gauge");
  // K = sum_j j Pi_j has the pure extremal projectors as its eigenprojectors.
  Mat4c k = Mat4c::Zero();
  for (std::size_t j = 0; j < pure.states.size(); ++j) k += static_cast<double>(j + 1) * pure.states[j].matrix();
  const Problem p = make_problem(joint_commutant(h, k), *target.spectrum, MatX(0, 15));
  const int expected = static_cast<int>(std::lround(multinomial(target.multiplicities)));
  // Start points: each arrangement of the target spectrum on the eigenbasis of K, slightly perturbed.
  std::vector<VecX> initial;
  const Eigen::SelfAdjointEigenSolver<Mat4c> es(k);
  std::vector<double> values(target.spectrum->data(), target.spectrum->data() + 4);
  std::sort(values.begin(), values.end());
  double gap = 1.0;
  for (std::size_t j = 1; j < values.size(); ++j)
    if (values[j] > values[j - 1]) gap = std::min(gap, values[j] - values[j - 1]);
  std::uint64_t index = options.seed + 1;
  do {
    Mat4c m = Mat4c::Zero();
    for (int j = 0; j < 4; ++j) m += values[static_cast<std::size_t>(j)] * es.eigenvectors().col(j) * es.eigenvectors().col(j).adjoint();
    const VecX jitter = halton_point(index++, p.dim()).array() - 0.5;
    initial.push_back(coordinates(p, m) + 0.05 * gap * jitter);
  } while (std::next_permutation(values.begin(), values.end()));
  ExtremalStateSet set = to_set(multistart(h, p, target.coefficients(), expected, options, initial), PurityClass::mixed);
  set.complete = static_cast<int>(set.states.size()) == expected;
  set.family_dimension = pure.family_dimension;
  if (pure.family_dimension > 0)
    set.notes.push_back("H is degenerate; mixed states are built on the gauge-fixed pure extremal states");
  if (set.states.empty()) throw Error(ErrorCode::solver_failure, "no mixed extremal state found within the multistart budget");
  if (!set.complete) {
    std::ostringstream note;
    note << "found " << set.states.size() << " of " << expected << " mixed extremal states";
    set.notes.push_back(note.str());
  }
  label_branches(set, pure.states);
  return set;
}

ExtremalStateSet closed_form_nondegenerate(const HamiltonianParams& params) {
  if (!params.is_broken()) throw Error(ErrorCode::invalid_argument, "closed form needs s = -sigma");
  const double r = std::hypot(params.delta, params.epsilon);
  const double ep = params.energy_plus();
  const double em = params.energy_minus();
  if (params.gamma == 0.0 || r == 0.0 || !(ep > 0.0) || !(em > 0.0)) {
    ExtremalStateSet set = solve_pure_extremal(build_hamiltonian(params));
    set.notes.push_back("degenerate parameters (gamma = 0 or delta = epsilon = 0); numeric path used");
    return set;
  }
  ExtremalStateSet set;
  const Vec3 tb1 = -Vec3(params.delta, params.epsilon, 0.0) / r;
  const Vec3 tb2 = Vec3(params.delta, params.epsilon, 0.0) / r;
  const Vec3 ta1 = Vec3(params.gamma, -(r + params.sigma), params.beta) / ep;
  const Vec3 ta2 = Vec3(params.gamma, r - params.sigma, params.beta) / em;
  for (const auto& [ta, tb] : {std::pair{ta1, tb1}, std::pair{Vec3(-ta1), tb1}, std::pair{ta2, tb2},
                               std::pair{Vec3(-ta2), tb2}})
    set.states.push_back(DensityState::from_parts(ta, tb, ta * tb.transpose()));
  finish_closed_form(set, build_hamiltonian(params), char_poly_coeffs(pure_spectrum()));
  return set;
}

ExtremalStateSet closed_form_kramers_pure(const HamiltonianParams& params) {
  if (!params.is_kramers()) throw Error(ErrorCode::invalid_argument, "closed form needs s = sigma");
  ExtremalStateSet set;
  for (const auto& p : {std::array<double, 4>{1, 0, 0, 0}, std::array<double, 4>{0, 1, 0, 0},
                        std::array<double, 4>{0, 0, 1, 0}, std::array<double, 4>{0, 0, 0, 1}})
    set.states.push_back(closed_form_degenerate(params, MixtureWeights::from(p)));
  finish_closed_form(set, build_hamiltonian(params), char_poly_coeffs(pure_spectrum()));
  set.family_dimension = 2;
  set.notes.push_back("pure extremal states form a 2-parameter family (free r_02, r_03); shown in the gauge r_02 = r_03 = 0");
  return set;
}

DensityState closed_form_degenerate(const HamiltonianParams& params, const MixtureWeights& weights) {
  const double d2 = params.beta * params.beta + params.gamma * params.gamma;
  const double big_delta = std::sqrt(d2);
  const double q2 = d2 + params.sigma * params.sigma + params.epsilon * params.epsilon;
  const double q = std::sqrt(q2);
  const double e = std::sqrt(q2 + params.delta * params.delta);
  if (!(big_delta > 0.0) || !(e > 0.0)) throw Error(ErrorCode::invalid_argument, "closed form needs Delta > 0 and E > 0");
  const double x = weights.x(), y = weights.y(), z = weights.z();
  const double b = params.beta, g = params.gamma, dl = params.delta, ep = params.epsilon, sg = params.sigma;

  const Vec3 tau_a(x * g / e, -dl * z * big_delta / (e * q), x * b / e);
  const Vec3 tau_b(-y * big_delta / q, 0.0, 0.0);
  Mat3 c;
  c << -z * g * q2, z * g * dl * ep + y * b * e * sg, z * g * dl * sg - y * b * e * ep,
      x * dl * big_delta * q, x * ep * big_delta * q, x * sg * big_delta * q,
      -z * b * q2, z * b * dl * ep - y * g * e * sg, z * b * dl * sg + y * g * e * ep;
  c /= e * big_delta * q;
  return DensityState::from_parts(tau_a, tau_b, c);
}

SweepResult sweep_mean_values(const HamiltonianParams& base, const std::string& parameter, double start,
                              double stop, int steps, const MixingTarget& target, const SolverOptions& options) {
  if (steps < 2) throw Error(ErrorCode::invalid_argument, "sweep needs at least 2 steps");
  SweepResult out;
  out.parameter = parameter;
  HamiltonianParams p = base;
  p.get(parameter);  // validates the name
  std::vector<double> previous;
  double previous_value = 0.0;
  for (int i = 0; i < steps; ++i) {
    SweepPoint pt;
    pt.value = start + (stop - start) * i / (steps - 1);
    p.set(parameter, pt.value);
    try {
      const Mat4c h = build_hamiltonian(p);
      const ExtremalStateSet set = target.is_pure() ? solve_pure_extremal(h, options)
                                                    : solve_mixed_extremal(h, target, options);
      if (!set.complete) throw Error(ErrorCode::solver_failure, "incomplete solution set");
      std::vector<std::size_t> idx(set.mean_values.size());
      std::iota(idx.begin(), idx.end(), 0);
      std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return set.mean_values[a] < set.mean_values[b]; });
      if (out.branches == 0) out.branches = static_cast<int>(idx.size());
      if (static_cast<int>(idx.size()) != out.branches) throw Error(ErrorCode::solver_failure, "branch count changed");

      std::vector<std::size_t> assign(idx.size());
      if (previous.empty()) {
        assign = idx;
      } else {
        // Greedy nearest-value matching, branch by branch.
        std::vector<bool> used(idx.size(), false);
        for (std::size_t b = 0; b < previous.size(); ++b) {
          std::size_t best = 0;
          double best_gap = std::numeric_limits<double>::infinity();
          for (auto j : idx) {
            const double gap = std::abs(set.mean_values[j] - previous[b]);
            if (!used[j] && gap < best_gap) {
              best_gap = gap;
              best = j;
            }
          }
          used[best] = true;
          assign[b] = best;
        }
      }
      for (auto j : assign) {
        pt.mean_values.push_back(set.mean_values[j]);
        pt.separable.push_back(classify(set.states[j]).is_separable());
      }
      if (!previous.empty()) {
        for (std::size_t a = 0; a < previous.size(); ++a)
          for (std::size_t b = a + 1; b < previous.size(); ++b)
            if ((previous[a] - previous[b]) * (pt.mean_values[a] - pt.mean_values[b]) < 0.0) {
              std::ostringstream msg;
              msg << "branches " << a << " and " << b << " cross between " << format_double(previous_value)
                  << " and " << format_double(pt.value);
              out.crossings.push_back(msg.str());
            }
      }
      previous = pt.mean_values;
      previous_value = pt.value;
    } catch (const Error& e) {
      pt.mean_values.clear();
      pt.separable.clear();
      pt.error = e.what();
    }
    out.points.push_back(std::move(pt));
  }
  return out;
}

void write_sweep_csv(std::ostream& out, const SweepResult& sweep) {
  auto quoted = [](const std::string& s) {
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  };
  out << "sweep_value,branch_index,mean_value,separable,error\n";
  for (const auto& pt : sweep.points) {
    if (!pt.error.empty()) {
      out << format_double(pt.value) << ",,,," << quoted(pt.error) << "\n";
      continue;
    }
    for (std::size_t b = 0; b < pt.mean_values.size(); ++b)
      out << format_double(pt.value) << ',' << b << ',' << format_double(pt.mean_values[b]) << ','
          << (pt.separable[b] ? "true" : "false") << ",\n";
  }
}

}  // namespace extremal
