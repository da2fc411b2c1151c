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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "extremal/entanglement.hpp"
#include "extremal/error.hpp"
#include "extremal/extremal_solver.hpp"
#include "extremal/hamiltonian.hpp"
#include "extremal/random.hpp"
#include "extremal/spectral.hpp"
#include "oracles.hpp"

using namespace extremal;

namespace {

std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

void check_close(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  REQUIRE(a.size() == b.size());
  const auto sa = sorted(a), sb = sorted(b);
  for (std::size_t i = 0; i < sa.size(); ++i) CHECK(std::abs(sa[i] - sb[i]) <= tol);
}

void check_state_invariants(const ExtremalStateSet& set, const Mat4c& h, const VecX& c) {
  const auto ev = oracle::eigenvalues(h);
  const double hn = std::max(1.0, max_abs(MatXc(h)));
  for (std::size_t i = 0; i < set.states.size(); ++i) {
    const Mat4c rho = set.states[i].matrix();
    CHECK(set.states[i].fano(0, 0) == 1.0);
    CHECK(max_abs(MatXc(rho * h - h * rho)) <= 1e-9 * hn);
    const auto rev = oracle::eigenvalues(rho);
    CHECK(rev.front() >= -1e-10);
    for (int k = 2; k <= 4; ++k) CHECK(std::abs(oracle::elementary(rev, k) - c(k - 2)) <= 1e-9);
    const double m = (h * rho).trace().real();
    CHECK(m == doctest::Approx(set.mean_values[i]).epsilon(1e-10));
    CHECK(m >= ev.front() - 1e-9);
    CHECK(m <= ev.back() + 1e-9);
  }
}

HamiltonianParams random_params(Rng& rng, int sign) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  HamiltonianParams p{u(rng), u(rng), u(rng), u(rng), u(rng), 0.0};
  p.s = sign * p.sigma;
  return p;
}

}  // namespace

TEST_CASE("pure extremal states of the broken-symmetry family") {
  const Mat4c h = build_hamiltonian({1, 1, 1, 1, 1, -1});
  const ExtremalStateSet set = solve_pure_extremal(h);
  REQUIRE(set.states.size() == 4);
  CHECK(set.purity_class == PurityClass::pure);
  CHECK(set.complete);
  const double ep = std::sqrt(5.0 + 2.0 * std::sqrt(2.0)), em = std::sqrt(5.0 - 2.0 * std::sqrt(2.0));
  check_close(set.mean_values, {-ep, -em, em, ep}, 1e-10);
  check_close(set.mean_values, oracle::eigenvalues(h), 1e-10);
  check_state_invariants(set, h, VecX::Zero(3));
  Mat4c sum = Mat4c::Zero();
  for (std::size_t i = 0; i < 4; ++i) {
    sum += set.states[i].matrix();
    for (std::size_t j = i + 1; j < 4; ++j)
      CHECK(std::abs((set.states[i].matrix() * set.states[j].matrix()).trace()) <= 1e-10);
  }
  CHECK(max_abs(MatXc(sum - Mat4c::Identity())) <= 1e-10);
}

TEST_CASE("pure extremal states of the Kramers family") {
  const HamiltonianParams p{1, 1, 1, 1, 1, 1};
  const Mat4c h = build_hamiltonian(p);
  const ExtremalStateSet set = solve_pure_extremal(h);
  REQUIRE(set.states.size() == 4);
  const double e = std::sqrt(5.0);
  check_close(set.mean_values, {-e, -e, e, e}, 1e-10);
  CHECK(std::pow(h.determinant().real(), 0.25) == doctest::Approx(e));
  CHECK(set.family_dimension == 2);
  CHECK_FALSE(set.notes.empty());
  check_state_invariants(set, h, VecX::Zero(3));
  // The gauge of the closed form.
  for (const auto& s : set.states) {
    CHECK(std::abs(s.fano(0, 2)) <= 1e-9);
    CHECK(std::abs(s.fano(0, 3)) <= 1e-9);
  }
  Mat4c sum = Mat4c::Zero();
  for (const auto& s : set.states) sum += s.matrix();
  CHECK(max_abs(MatXc(sum - Mat4c::Identity())) <= 1e-10);
}

TEST_CASE("pure extremal states of a diagonal Hamiltonian") {
  Mat4c h = Mat4c::Zero();
  h.diagonal() << 1.0, 1.0, -1.0, -1.0;
  const ExtremalStateSet set = solve_pure_extremal(h);
  REQUIRE(set.states.size() == 4);
  check_close(set.mean_values, {-1, -1, 1, 1}, 1e-10);
  check_state_invariants(set, h, VecX::Zero(3));
}

TEST_CASE("pure extremal mean values equal the eigenvalues") {
  Rng rng(61);
  for (int i = 0; i < 60; ++i) {
    const Mat4c h = i < 20 ? build_hamiltonian(random_params(rng, 1))
                    : i < 40 ? build_hamiltonian(random_params(rng, -1))
                             : Mat4c(random_hermitian(4, rng));
    SolverOptions opt;
    opt.seed = static_cast<std::uint64_t>(i);
    const ExtremalStateSet set = solve_pure_extremal(h, opt);
    check_close(set.mean_values, oracle::eigenvalues(h), 1e-8);
  }
}

TEST_CASE("mixed extremal states at the figure target") {
  const Mat4c h = build_hamiltonian({1, 1, 1, 1, 1, -1});
  const MixingTarget target = region_membership(make_target(59.0 / 200.0, 9.0 / 400.0, 81.0 / 160000.0));
  const ExtremalStateSet set = solve_mixed_extremal(h, target);
  CHECK(set.purity_class == PurityClass::mixed);
  CHECK(set.complete);
  REQUIRE(set.states.size() == 6);
  const double ep = std::sqrt(5.0 + 2.0 * std::sqrt(2.0)), em = std::sqrt(5.0 - 2.0 * std::sqrt(2.0));
  check_close(set.mean_values, {-0.4 * (ep + em), -0.4 * (ep - em), 0.0, 0.0, 0.4 * (ep - em), 0.4 * (ep + em)}, 1e-9);
  check_close(set.mean_values, oracle::assignment_means(oracle::eigenvalues(h), {0.45, 0.45, 0.05, 0.05}), 1e-9);
  check_state_invariants(set, h, target.c);
  CHECK(std::count_if(set.mean_values.begin(), set.mean_values.end(), [](double m) { return std::abs(m) <= 1e-9; }) == 2);
}

TEST_CASE("mixed targets at the vertices") {
  const Mat4c h = build_hamiltonian({1, 1, 1, 1, 1, -1});
  const ExtremalStateSet pure = solve_mixed_extremal(h, region_membership(make_target(0.0, 0.0, 0.0)));
  check_close(pure.mean_values, solve_pure_extremal(h).mean_values, 1e-10);

  const ExtremalStateSet mm = solve_mixed_extremal(h, region_membership(make_target(3.0 / 8.0, 1.0 / 16.0, 1.0 / 256.0)));
  REQUIRE(mm.states.size() == 1);
  CHECK(std::abs(mm.mean_values[0]) <= 1e-12);
  CHECK(max_abs(MatXc(mm.states[0].matrix() - Mat4c::Identity() / 4.0)) <= 1e-12);
}

TEST_CASE("inadmissible mixing target") {
  const Mat4c h = build_hamiltonian({1, 1, 1, 1, 1, -1});
  try {
    solve_mixed_extremal(h, region_membership(make_target(0.5, 0.0, 0.0)));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::inadmissible_target);
  }
}

TEST_CASE("mixed extremal mean values match the assignment oracle") {
  Rng rng(62);
  for (int i = 0; i < 12; ++i) {
    const int kind = i % 3;
    const Mat4c h = kind == 0   ? build_hamiltonian(random_params(rng, -1))
                    : kind == 1 ? build_hamiltonian(random_params(rng, 1))
                                : Mat4c(random_hermitian(4, rng));
    const VecX spec = random_spectrum(4, rng);
    const MixingTarget target = region_membership(target_from_spectrum(spec));
    REQUIRE(target.admissible);
    SolverOptions opt;
    opt.seed = static_cast<std::uint64_t>(100 + i);
    const ExtremalStateSet set = solve_mixed_extremal(h, target, opt);
    CHECK(set.complete);
    const auto expected = oracle::assignment_means(oracle::eigenvalues(h), {spec.data(), spec.data() + 4});
    INFO("kind " << kind << " i " << i << " spec " << spec.transpose());
    check_close(set.mean_values, expected, 1e-8);
    check_state_invariants(set, h, target.c);
  }
}

TEST_CASE("closed form for the broken-symmetry family") {
  const HamiltonianParams p{1, 1, 1, 1, 1, -1};
  const ExtremalStateSet cf = closed_form_nondegenerate(p);
  REQUIRE(cf.states.size() == 4);
  CHECK(cf.method == "closed_form");
  const Vec3 tau = -Vec3(p.delta, p.epsilon, 0.0) / std::hypot(p.delta, p.epsilon);
  CHECK(max_abs(MatX(cf.states[0].tau_b - tau)) <= 1e-12);
  CHECK(max_abs(MatX(cf.states[1].tau_b - tau)) <= 1e-12);
  for (const auto& s : cf.states) CHECK(max_abs(MatX(s.schlienz_mahler)) <= 1e-12);

  const ExtremalStateSet num = solve_pure_extremal(build_hamiltonian(p));
  for (std::size_t i = 0; i < 4; ++i) {
    double best = 1e9;
    for (const auto& s : num.states) best = std::min(best, max_abs(MatX(s.fano.coeffs - cf.states[i].fano.coeffs)));
    CHECK(best <= 1e-10);
  }
  const double ep = p.energy_plus(), em = p.energy_minus();
  CHECK(cf.mean_values[0] == doctest::Approx(ep));
  CHECK(cf.mean_values[1] == doctest::Approx(-ep));
  CHECK(cf.mean_values[2] == doctest::Approx(em));
  CHECK(cf.mean_values[3] == doctest::Approx(-em));

  CHECK_THROWS_AS(closed_form_nondegenerate({1, 1, 1, 1, 1, 1}), Error);
  const ExtremalStateSet fallback = closed_form_nondegenerate({1, 0, 1, 1, 1, -1});
  CHECK(fallback.method == "numeric");
  CHECK(fallback.states.size() == 4);
}

TEST_CASE("closed form for the Kramers family") {
  Rng rng(63);
  for (int i = 0; i < 100; ++i) {
    const HamiltonianParams p = random_params(rng, 1);
    const Mat4c h = build_hamiltonian(p);
    const ExtremalStateSet set = closed_form_kramers_pure(p);
    REQUIRE(set.states.size() == 4);
    const double e4 = h.determinant().real();
    const double e = p.kramers_energy();
    CHECK(std::abs(std::pow(e, 4) - e4) <= 1e-10 * e4);
    CHECK(set.mean_values[0] == doctest::Approx(e).epsilon(1e-10));
    CHECK(set.mean_values[1] == doctest::Approx(e).epsilon(1e-10));
    CHECK(set.mean_values[2] == doctest::Approx(-e).epsilon(1e-10));
    CHECK(set.mean_values[3] == doctest::Approx(-e).epsilon(1e-10));
    check_state_invariants(set, h, VecX::Zero(3));
  }
  CHECK_THROWS_AS(closed_form_kramers_pure({1, 1, 1, 1, 1, -1}), Error);
}

TEST_CASE("degenerate-case mixtures") {
  const HamiltonianParams p{1, 1, 1, 1, 1, 1};
  const ExtremalStateSet pure = closed_form_kramers_pure(p);
  const DensityState first = closed_form_degenerate(p, MixtureWeights::from({1, 0, 0, 0}));
  CHECK(max_abs(MatX(first.fano.coeffs - pure.states[0].fano.coeffs)) <= 1e-12);

  const DensityState uniform = closed_form_degenerate(p, MixtureWeights::from({0.25, 0.25, 0.25, 0.25}));
  CHECK(max_abs(MatXc(uniform.matrix() - Mat4c::Identity() / 4.0)) <= 1e-12);
  CHECK(uniform.correlation.isZero(1e-15));
  CHECK(uniform.schlienz_mahler.isZero(1e-15));

  Rng rng(64);
  for (int i = 0; i < 200; ++i) {
    const HamiltonianParams q = random_params(rng, 1);
    const ExtremalStateSet ps = closed_form_kramers_pure(q);
    const VecX r = random_spectrum(4, rng);
    const MixtureWeights w = MixtureWeights::from({r(0), r(1), r(2), r(3)});
    Mat4c mix = Mat4c::Zero();
    for (int j = 0; j < 4; ++j) mix += r(j) * ps.states[static_cast<std::size_t>(j)].matrix();
    CHECK(max_abs(MatXc(closed_form_degenerate(q, w).matrix() - mix)) <= 1e-10);
  }
}

TEST_CASE("sweeps") {
  HamiltonianParams base{1, 1, 0, 1, 1, -1};
  const SweepResult pure = sweep_mean_values(base, "delta", -3.0, 3.0, 7, make_target(0, 0, 0));
  REQUIRE(pure.points.size() == 7);
  CHECK(pure.branches == 4);
  const SweepPoint& mid = pure.points[3];
  CHECK(mid.value == doctest::Approx(0.0));
  check_close(mid.mean_values, {-std::sqrt(6.0), -std::sqrt(2.0), std::sqrt(2.0), std::sqrt(6.0)}, 1e-10);
  for (const auto& pt : pure.points) {
    HamiltonianParams q = base;
    q.delta = pt.value;
    check_close(pt.mean_values, oracle::eigenvalues(build_hamiltonian(q)), 1e-8);
  }

  const SweepResult mixed =
      sweep_mean_values(base, "delta", -3.0, 3.0, 5, make_target(59.0 / 200.0, 9.0 / 400.0, 81.0 / 160000.0));
  CHECK(mixed.branches == 6);
  for (const auto& pt : mixed.points) {
    CHECK(pt.error.empty());
    REQUIRE(pt.mean_values.size() == 6);
    CHECK(std::count_if(pt.mean_values.begin(), pt.mean_values.end(), [](double m) { return std::abs(m) <= 1e-9; }) == 2);
    for (bool s : pt.separable) CHECK(s);
  }

  std::ostringstream csv;
  write_sweep_csv(csv, pure);
  const std::string text = csv.str();
  CHECK(text.rfind("sweep_value,branch_index,mean_value,separable,error\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 7 * 4);

  CHECK_THROWS_AS(sweep_mean_values(base, "delta", -3.0, 3.0, 1, make_target(0, 0, 0)), Error);
  CHECK_THROWS_AS(sweep_mean_values(base, "zeta", -3.0, 3.0, 5, make_target(0, 0, 0)), Error);
}

TEST_CASE("solver output is deterministic") {
  const Mat4c h = build_hamiltonian({0.3, -1.2, 0.8, 0.5, -0.4, 0.7});
  const MixingTarget t = region_membership(target_from_spectrum((VecX(4) << 0.5, 0.3, 0.15, 0.05).finished()));
  const ExtremalStateSet a = solve_mixed_extremal(h, t), b = solve_mixed_extremal(h, t);
  REQUIRE(a.states.size() == b.states.size());
  for (std::size_t i = 0; i < a.states.size(); ++i) CHECK(a.states[i].fano.coeffs == b.states[i].fano.coeffs);
}
