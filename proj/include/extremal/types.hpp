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

#include <complex>
#include <compare>

#include <Eigen/Dense>

namespace extremal {

using cplx = std::complex<double>;

using Mat4c = Eigen::Matrix4cd;
using Vec4c = Eigen::Vector4cd;
using Mat4 = Eigen::Matrix4d;
using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;
using MatXc = Eigen::MatrixXcd;
using MatX = Eigen::MatrixXd;
using VecX = Eigen::VectorXd;

/// Position (p, q) of a coefficient in the two-qubit Dirac basis sigma_p (x) sigma_q.
struct FanoIndex {
  int p = 0;
  int q = 0;

  constexpr int flat() const { return 4 * p + q; }
  static constexpr FanoIndex from_flat(int k) { return {k / 4, k % 4}; }

  friend constexpr auto operator<=>(const FanoIndex&, const FanoIndex&) = default;
};

/// Largest absolute entry; the entrywise norm used for every tolerance check.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace extremal
