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

#include "extremal/pauli.hpp"

#include <cmath>
#include <sstream>

#include "extremal/error.hpp"

namespace extremal {
namespace {

constexpr cplx kI{0.0, 1.0};

Eigen::Matrix2cd pauli(int k) {
  Eigen::Matrix2cd s;
  switch (k) {
    case 0: s << 1, 0, 0, 1; break;
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -kI, kI, 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: throw Error(ErrorCode::invalid_argument, "Pauli index out of range");
  }
  return s;
}

int levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  // (1,2,3) and its cyclic shifts are even.
  return ((i == 1 && j == 2) || (i == 2 && j == 3) || (i == 3 && j == 1)) ? 1 : -1;
}

// sigma_i sigma_j = phase * sigma_k
std::pair<int, cplx> pauli_product(int i, int j) {
  if (i == 0) return {j, 1.0};
  if (j == 0) return {i, 1.0};
  if (i == j) return {0, 1.0};
  const int k = 6 - i - j;
  return {k, kI * static_cast<double>(levi_civita(i, j, k))};
}

Mat4c kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Mat4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

std::array<Mat4c, 16> make_basis() {
  std::array<Mat4c, 16> basis;
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q) basis[4 * p + q] = kron(pauli(p), pauli(q));
  return basis;
}

void check_index(int p, int q) {
  if (p < 0 || p > 3 || q < 0 || q > 3) {
    std::ostringstream msg;
    msg << "Dirac basis index (" << p << ", " << q << ") out of range";
    throw Error(ErrorCode::invalid_argument, msg.str());
  }
}

}  // namespace

Mat4c dirac_basis_element(int p, int q) {
  check_index(p, q);
  return dirac_basis()[4 * p + q];
}

const std::array<Mat4c, 16>& dirac_basis() {
  static const std::array<Mat4c, 16> basis = make_basis();
  return basis;
}

DiracProduct dirac_product(int a, int b) {
  const auto [ka, pa] = pauli_product(a / 4, b / 4);
  const auto [kb, pb] = pauli_product(a % 4, b % 4);
  return {4 * ka + kb, pa * pb};
}

DiracCommutator dirac_commutator(int a, int b) {
  const DiracProduct ab = dirac_product(a, b);
  const DiracProduct ba = dirac_product(b, a);
  const cplx diff = ab.phase - ba.phase;  // 0 or +-2i
  return {ab.index, static_cast<int>(std::lround(diff.imag() / 2.0))};
}

double hermiticity_defect(const MatXc& m) {
  return max_abs(m - m.adjoint());
}

FanoOperator fano_decompose(const Mat4c& h) {
  const double defect = hermiticity_defect(h);
  if (!(defect <= kHermitianTolerance)) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian (max |H - H^dagger| = " << defect << ")";
    throw Error(ErrorCode::non_hermitian, msg.str());
  }
  FanoOperator f;
  const auto& basis = dirac_basis();
  for (int k = 0; k < 16; ++k) {
    // Tr(H D) without forming the product.
    f.coeffs(k / 4, k % 4) = (h.transpose().cwiseProduct(basis[k])).sum().real();
  }
  return f;
}

Mat4c fano_compose(const FanoOperator& f) {
  Mat4c out = Mat4c::Zero();
  const auto& basis = dirac_basis();
  for (int k = 0; k < 16; ++k) {
    const double c = f.coeffs(k / 4, k % 4);
    if (c != 0.0) out += c * basis[k];
  }
  return out / 4.0;
}

BlochCorrelations bloch_and_correlations(const FanoOperator& f) {
  BlochCorrelations out;
  for (int s = 1; s <= 3; ++s) {
    out.tau_a(s - 1) = f(s, 0);
    out.tau_b(s - 1) = f(0, s);
  }
  for (int s = 1; s <= 3; ++s)
    for (int t = 1; t <= 3; ++t) {
      out.correlation(s - 1, t - 1) = f(s, t);
      out.schlienz_mahler(s - 1, t - 1) = f(s, t) - f(s, 0) * f(0, t);
    }
  return out;
}

DensityState DensityState::from_fano(FanoOperator f) {
  f(0, 0) = 1.0;
  const BlochCorrelations bc = bloch_and_correlations(f);
  DensityState s;
  s.fano = f;
  s.tau_a = bc.tau_a;
  s.tau_b = bc.tau_b;
  s.correlation = bc.correlation;
  s.schlienz_mahler = bc.schlienz_mahler;
  return s;
}

DensityState DensityState::from_matrix(const Mat4c& rho) {
  const FanoOperator f = fano_decompose(rho);
  if (std::abs(f(0, 0) - 1.0) > kHermitianTolerance) {
    std::ostringstream msg;
    msg << "density matrix trace is " << f(0, 0) << ", expected 1";
    throw Error(ErrorCode::invalid_argument, msg.str());
  }
  return from_fano(f);
}

DensityState DensityState::from_parts(const Vec3& tau_a, const Vec3& tau_b, const Mat3& correlation) {
  FanoOperator f;
  for (int s = 1; s <= 3; ++s) {
    f(s, 0) = tau_a(s - 1);
    f(0, s) = tau_b(s - 1);
    for (int t = 1; t <= 3; ++t) f(s, t) = correlation(s - 1, t - 1);
  }
  return from_fano(f);
}

DensityState DensityState::maximally_mixed() {
  return from_fano(FanoOperator{});
}

Mat4c DensityState::matrix() const {
  return fano_compose(fano);
}

Mat4c partial_transpose(const Mat4c& rho, Subsystem subsystem) {
  Mat4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          if (subsystem == Subsystem::A)
            out(2 * i + k, 2 * j + l) = rho(2 * j + k, 2 * i + l);
          else
            out(2 * i + k, 2 * j + l) = rho(2 * i + l, 2 * j + k);
        }
  return out;
}

std::vector<IdentityCheck> commutator_tables_check() {
  const auto& D = dirac_basis();
  auto at = [&](int p, int q) -> const Mat4c& { return D[4 * p + q]; };
  auto comm = [](const Mat4c& a, const Mat4c& b) -> Mat4c { return a * b - b * a; };
  std::vector<IdentityCheck> checks;
  auto record = [&](std::string name, double residual) {
    checks.push_back({std::move(name), residual == 0.0, residual});
  };

  double r = 0.0;
  for (int a = 0; a < 16; ++a)
    for (int b = 0; b < 16; ++b) {
      const cplx tr = (D[a] * D[b]).trace();
      r = std::max(r, std::abs(tr - cplx(a == b ? 4.0 : 0.0)));
    }
  record("orthogonality Tr(D_jk D_mn) = 4 delta_jm delta_kn", r);

  r = 0.0;
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q) {
      r = std::max(r, max_abs(at(p, 0) * at(0, q) - at(p, q)));
      r = std::max(r, max_abs(at(0, q) * at(p, 0) - at(p, q)));
    }
  record("D_p0 D_0q = D_0q D_p0 = D_pq", r);

  double ra = 0.0;
  double rb = 0.0;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      Mat4c ea = (i == j ? 1.0 : 0.0) * at(0, 0);
      Mat4c eb = ea;
      for (int k = 1; k <= 3; ++k) {
        ea += kI * static_cast<double>(levi_civita(i, j, k)) * at(k, 0);
        eb += kI * static_cast<double>(levi_civita(i, j, k)) * at(0, k);
      }
      ra = std::max(ra, max_abs(at(i, 0) * at(j, 0) - ea));
      rb = std::max(rb, max_abs(at(0, i) * at(0, j) - eb));
    }
  record("D_i0 D_j0 = i eps_ijk D_k0 + delta_ij D_00", ra);
  record("D_0i D_0j = i eps_ijk D_0k + delta_ij D_00", rb);

  ra = 0.0;
  rb = 0.0;
  for (int j = 1; j <= 3; ++j)
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n) {
        Mat4c ea = Mat4c::Zero();
        Mat4c eb = Mat4c::Zero();
        for (int q = 1; q <= 3; ++q) {
          if (m > 0) ea += 2.0 * kI * static_cast<double>(levi_civita(j, m, q)) * at(q, n);
          if (n > 0) eb += 2.0 * kI * static_cast<double>(levi_civita(j, n, q)) * at(m, q);
        }
        ra = std::max(ra, max_abs(comm(at(j, 0), at(m, n)) - ea));
        rb = std::max(rb, max_abs(comm(at(0, j), at(m, n)) - eb));
      }
  record("[D_j0, D_mn] = 2i eps_jmq D_qn", ra);
  record("[D_0j, D_mn] = 2i eps_jnq D_mq", rb);

  r = 0.0;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      for (int p = 1; p <= 3; ++p)
        for (int q = 1; q <= 3; ++q) {
          Mat4c e = Mat4c::Zero();
          for (int l = 1; l <= 3; ++l) {
            if (i == p) e += 2.0 * kI * static_cast<double>(levi_civita(j, q, l)) * at(0, l);
            if (j == q) e += 2.0 * kI * static_cast<double>(levi_civita(i, p, l)) * at(l, 0);
          }
          r = std::max(r, max_abs(comm(at(i, j), at(p, q)) - e));
        }
  record("[D_ij, D_pq] = 2i (delta_ip eps_jql D_0l + delta_jq eps_ipk D_k0)", r);

  r = 0.0;
  for (int a = 0; a < 16; ++a)
    for (int b = 0; b < 16; ++b) {
      const DiracProduct prod = dirac_product(a, b);
      const DiracCommutator c = dirac_commutator(a, b);
      r = std::max(r, max_abs(D[a] * D[b] - prod.phase * D[prod.index]));
      r = std::max(r, max_abs(comm(D[a], D[b]) - 2.0 * kI * static_cast<double>(c.sign) * D[c.index]));
    }
  record("structure-constant tables match dense products", r);

  return checks;
}

}  // namespace extremal
