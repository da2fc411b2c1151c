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

#include "extremal/random.hpp"

#include <array>

#include "extremal/error.hpp"

namespace extremal {
namespace {

constexpr std::array<int, 16> kPrimes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

MatXc ginibre(int d, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  MatXc g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const double re = n(rng);
      const double im = n(rng);
      g(i, j) = cplx(re, im);
    }
  return g;
}

}  // namespace

double halton(std::uint64_t index, int base) {
  double f = 1.0;
  double r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % static_cast<std::uint64_t>(base));
    index /= static_cast<std::uint64_t>(base);
  }
  return r;
}

VecX halton_point(std::uint64_t index, int dim) {
  if (dim < 0 || dim > static_cast<int>(kPrimes.size()))
    throw Error(ErrorCode::invalid_argument, "Halton dimension out of range");
  VecX p(dim);
  for (int i = 0; i < dim; ++i) p(i) = halton(index, kPrimes[static_cast<std::size_t>(i)]);
  return p;
}

MatXc random_density_matrix(int d, Rng& rng) {
  const MatXc g = ginibre(d, rng);
  const MatXc rho = g * g.adjoint();
  return rho / rho.trace().real();
}

MatXc random_unitary(int d, Rng& rng) {
  Eigen::HouseholderQR<MatXc> qr(ginibre(d, rng));
  MatXc q = qr.householderQ();
  const MatXc r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const cplx rjj = r(j, j);
    if (std::abs(rjj) > 0.0) q.col(j) *= rjj / std::abs(rjj);
  }
  return q;
}

MatXc random_hermitian(int d, Rng& rng) {
  const MatXc g = ginibre(d, rng);
  return (g + g.adjoint()) / 2.0;
}

VecX random_spectrum(int d, Rng& rng) {
  std::exponential_distribution<double> e(1.0);
  VecX v(d);
  for (int i = 0; i < d; ++i) v(i) = e(rng);
  return v / v.sum();
}

}  // namespace extremal
