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

#include <cmath>
#include <limits>
#include <vector>

#include "extremal/error.hpp"
#include "extremal/extremal_solver.hpp"
#include "extremal/hamiltonian.hpp"
#include "extremal/random.hpp"
#include "oracles.hpp"

using namespace extremal;

namespace {

HamiltonianParams random_params(Rng& rng, bool kramers) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  HamiltonianParams p{u(rng), u(rng), u(rng), u(rng), u(rng), 0.0};
  p.s = kramers ? p.sigma : -p.sigma;
  return p;
}

Vec4c random_vector(Rng& rng) {
  std::normal_distribution<double> n;
  Vec4c v;
  for (int i = 0; i < 4; ++i) v(i) = cplx(n(rng), n(rng));
  return v;
}

std::vector<Mat4c> matrices(const ExtremalStateSet& set) {
  std::vector<Mat4c> out;
  for (const auto& s : set.states) out.push_back(s.matrix());
  return out;
}

}  // namespace

TEST_CASE("build_hamiltonian examples") {
  CHECK(build_hamiltonian({}) == Mat4c::Zero());

  Mat4c diag = Mat4c::Zero();
  diag.diagonal() << 1.0, 1.0, -1.0, -1.0;
  CHECK(build_hamiltonian({1, 0, 0, 0, 0, 0}) == diag);

  const HamiltonianParams p{1, 1, 1, 1, 1, 1};
  const auto ev = oracle::eigenvalues(build_hamiltonian(p));
  const double e = std::sqrt(5.0);
  CHECK(ev[0] == doctest::Approx(-e).epsilon(1e-13));
  CHECK(ev[1] == doctest::Approx(-e).epsilon(1e-13));
  CHECK(ev[2] == doctest::Approx(e).epsilon(1e-13));
  CHECK(ev[3] == doctest::Approx(e).epsilon(1e-13));
  CHECK(p.big_delta() == doctest::Approx(std::sqrt(2.0)));
  CHECK(p.omega() == doctest::Approx(std::sqrt(2.0)));
  CHECK(p.kramers_energy() == doctest::Approx(e));
  const double det = build_hamiltonian(p).determinant().real();
  CHECK(std::pow(det, 0.25) == doctest::Approx(e).epsilon(1e-13));
}

TEST_CASE("build_hamiltonian entries") {
  const HamiltonianParams p{0.3, -0.7, 1.1, 0.4, -0.9, 0.25};
  const Mat4c h = build_hamiltonian(p);
  const cplx i(0.0, 1.0);
  CHECK(h(0, 0) == cplx(p.beta));
  CHECK(h(3, 3) == cplx(-p.beta));
  CHECK(h(0, 1) == cplx(0.0));
  CHECK(h(0, 2) == p.gamma - i * p.s);
  CHECK(h(0, 3) == -p.epsilon - i * p.delta);
  CHECK(h(1, 2) == p.epsilon - i * p.delta);
  CHECK(h(1, 3) == p.gamma + i * p.sigma);
  CHECK(h(2, 3) == cplx(0.0));
}

TEST_CASE("build_hamiltonian rejects non-finite parameters") {
  HamiltonianParams p{1, 1, 1, 1, 1, 1};
  p.delta = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(build_hamiltonian(p), Error);
  p.delta = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(build_hamiltonian(p), Error);
}

TEST_CASE("parameter access by name") {
  HamiltonianParams p;
  for (const char* name : {"beta", "gamma", "delta", "epsilon", "sigma", "s"}) {
    p.set(name, 0.5);
    CHECK(p.get(name) == 0.5);
  }
  CHECK(p.kramers_flag());
  CHECK_FALSE(p.broken_flag());
  CHECK_THROWS(p.set("alpha", 1.0));
}

TEST_CASE("Hamiltonian family is traceless Hermitian") {
  Rng rng(21);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 1000; ++i) {
    const HamiltonianParams p{u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
    const Mat4c h = build_hamiltonian(p);
    CHECK(h == Mat4c(h.adjoint()));
    CHECK(std::abs(h.trace()) <= 1e-14);
  }
}

TEST_CASE("Kramers spectrum and determinant") {
  Rng rng(22);
  for (int i = 0; i < 500; ++i) {
    const HamiltonianParams p = random_params(rng, true);
    const Mat4c h = build_hamiltonian(p);
    const double e = p.kramers_energy();
    const double det = h.determinant().real();
    CHECK(std::abs(det - std::pow(e, 4)) <= 1e-10 * std::pow(e, 4));
    const auto ev = oracle::eigenvalues(h);
    CHECK(ev[0] == doctest::Approx(-e).epsilon(1e-10));
    CHECK(ev[1] == doctest::Approx(-e).epsilon(1e-10));
    CHECK(ev[2] == doctest::Approx(e).epsilon(1e-10));
    CHECK(ev[3] == doctest::Approx(e).epsilon(1e-10));
  }
}

TEST_CASE("broken-symmetry spectrum") {
  Rng rng(23);
  for (int i = 0; i < 500; ++i) {
    const HamiltonianParams p = random_params(rng, false);
    const auto ev = oracle::eigenvalues(build_hamiltonian(p));
    const double ep = p.energy_plus(), em = p.energy_minus();
    std::vector<double> expected{-ep, -em, em, ep};
    std::sort(expected.begin(), expected.end());
    for (int k = 0; k < 4; ++k) CHECK(ev[k] == doctest::Approx(expected[k]).epsilon(1e-9));
    for (int k = 0; k + 1 < 4; ++k) CHECK(ev[k + 1] - ev[k] > 1e-8);
  }
}

TEST_CASE("time reversal operator") {
  const TimeReversalOperator t = build_time_reversal();
  CHECK(max_abs(MatXc(t.unitary * t.unitary.conjugate() + Mat4c::Identity())) == 0.0);
  CHECK(max_abs(MatXc(t.unitary * t.unitary.adjoint() - Mat4c::Identity())) == 0.0);
  Rng rng(24);
  for (int i = 0; i < 100; ++i) {
    const Vec4c v = random_vector(rng), w = random_vector(rng);
    CHECK(max_abs(MatXc(t.apply(t.apply(v)) + v)) <= 1e-12);
    const cplx lhs = t.apply(v).dot(t.apply(w));
    CHECK(std::abs(lhs - std::conj(v.dot(w))) <= 1e-12);
    CHECK(std::abs(v.dot(t.apply(v))) <= 1e-12);
  }
}

TEST_CASE("time reversal commutation") {
  const TimeReversalOperator t = build_time_reversal();
  CHECK(time_reversal_commutes(build_hamiltonian({1, 1, 1, 1, 1, 1}), t).commutes);
  const CommutationCheck broken = time_reversal_commutes(build_hamiltonian({1, 1, 1, 1, 1, -1}), t);
  CHECK_FALSE(broken.commutes);
  CHECK(broken.residual > 1.0);
  CHECK(time_reversal_commutes(Mat4c::Zero(), t).commutes);

  Rng rng(25);
  for (int i = 0; i < 200; ++i) {
    const HamiltonianParams p = random_params(rng, true);
    CHECK(time_reversal_commutes(build_hamiltonian(p), t).commutes);
  }
}

TEST_CASE("time reversal maps the commutant to itself") {
  const TimeReversalOperator t = build_time_reversal();
  Rng rng(26);
  for (int i = 0; i < 50; ++i) {
    const Mat4c h = build_hamiltonian(random_params(rng, true));
    Eigen::SelfAdjointEigenSolver<Mat4c> es(h);
    const Mat4c u = es.eigenvectors();
    Vec4c w;
    std::uniform_real_distribution<double> r(-1.0, 1.0);
    for (int k = 0; k < 4; ++k) w(k) = r(rng);
    // A generic element of the commutant: block-diagonal in the eigenbasis.
    Mat4c x = Mat4c::Zero();
    x.block<2, 2>(0, 0) = MatXc(random_hermitian(2, rng));
    x.block<2, 2>(2, 2) = MatXc(random_hermitian(2, rng));
    const Mat4c rho = u * x * u.adjoint();
    REQUIRE(max_abs(MatXc(rho * h - h * rho)) <= 1e-10);
    const Mat4c trt = t.conjugate(rho);
    CHECK(max_abs(MatXc(trt * h - h * trt)) <= 1e-10);
  }
}

TEST_CASE("Proposition 1 on the closed-form pure states") {
  const HamiltonianParams p{1, 1, 1, 1, 1, 1};
  const Mat4c h = build_hamiltonian(p);
  const ExtremalStateSet set = closed_form_kramers_pure(p);
  REQUIRE(set.states.size() == 4);
  const auto states = matrices(set);
  const Proposition1Report rep = verify_proposition1(h, states);
  CHECK(rep.holds);
  REQUIRE(rep.entries.size() == 4);
  const TimeReversalOperator t = build_time_reversal();
  for (std::size_t k = 0; k < 4; ++k) {
    const auto& e = rep.entries[k];
    CHECK(e.bounded_away);
    CHECK(e.t_residual >= 1e-6);
    CHECK(std::abs(e.partner_overlap) <= 1e-10);
    CHECK(e.partner_h_residual <= 1e-10);
    CHECK(e.partner_mean_value == doctest::Approx(e.mean_value).epsilon(1e-10));
    // Independent recomputation.
    const Mat4c partner = t.conjugate(states[k]);
    CHECK(std::abs((states[k] * partner).trace()) <= 1e-10);
    CHECK(max_abs(MatXc(partner * h - h * partner)) <= 1e-10);
    CHECK(std::abs((h * partner).trace().real() - (h * states[k]).trace().real()) <= 1e-10);
    CHECK(max_abs(MatXc(t.unitary * states[k].conjugate() - states[k] * t.unitary)) > 1e-6);
  }
}

TEST_CASE("Proposition 1 rejects mixed input") {
  const Mat4c h = build_hamiltonian({1, 1, 1, 1, 1, 1});
  const std::vector<Mat4c> mixed{Mat4c::Identity() / 4.0};
  CHECK_THROWS_AS(verify_proposition1(h, mixed), Error);
}

TEST_CASE("Proposition 2 projectors") {
  const HamiltonianParams p{1, 1, 1, 1, 1, 1};
  const Mat4c h = build_hamiltonian(p);
  const auto states = matrices(closed_form_kramers_pure(p));
  const Proposition2Report rep = verify_proposition2(h, states);
  CHECK(rep.holds);
  CHECK(rep.completeness <= 1e-10);
  const TimeReversalOperator t = build_time_reversal();
  std::vector<Mat4c> distinct;
  for (const auto& rho : states) {
    const Mat4c proj = rho + t.conjugate(rho);
    bool seen = false;
    for (const auto& q : distinct) seen = seen || max_abs(MatXc(q - proj)) <= 1e-8;
    if (!seen) distinct.push_back(proj);
  }
  REQUIRE(distinct.size() == 2);
  Mat4c sum = Mat4c::Zero();
  for (const auto& proj : distinct) {
    CHECK(max_abs(MatXc(proj * proj - proj)) <= 1e-10);
    CHECK(proj.trace().real() == doctest::Approx(2.0));
    CHECK(max_abs(MatXc(t.unitary * proj.conjugate() - proj * t.unitary)) <= 1e-10);
    CHECK(max_abs(MatXc(proj * h - h * proj)) <= 1e-12);
    sum += proj;
  }
  CHECK(max_abs(MatXc(sum - Mat4c::Identity())) <= 1e-10);

  Rng rng(27);
  for (int i = 0; i < 20; ++i) {
    const Proposition2Report r = verify_proposition2(build_hamiltonian(random_params(rng, true)));
    CHECK(r.holds);
  }
}
