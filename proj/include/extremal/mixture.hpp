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

namespace extremal {

/// Probabilities of the four Kramers-family pure states, ordered
/// (rho_1+, rho_2+, rho_1-, rho_2-).
struct MixtureWeights {
  std::array<double, 4> p{1.0, 0.0, 0.0, 0.0};

  /// Throws ErrorCode::invalid_argument unless p is a probability vector (to 1e-12).
  static MixtureWeights from(const std::array<double, 4>& p);

  double x() const { return p[0] + p[1] - p[2] - p[3]; }
  double y() const { return p[0] - p[1] + p[2] - p[3]; }
  double z() const { return p[0] - p[1] - p[2] + p[3]; }
};

}  // namespace extremal
