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

#include <cstdint>
#include <random>

#include "extremal/types.hpp"

namespace extremal {

using Rng = std::mt19937_64;

/// Radical inverse of index in the given base, in [0, 1).
double halton(std::uint64_t index, int base);
/// Point `index` of the Halton sequence in [0, 1)^dim (dim <= 16).
VecX halton_point(std::uint64_t index, int dim);

/// G G^dagger / Tr(G G^dagger) with G complex standard normal.
MatXc random_density_matrix(int d, Rng& rng);
/// Haar unitary from the QR decomposition of a complex Ginibre matrix.
MatXc random_unitary(int d, Rng& rng);
/// (G + G^dagger) / 2 with G complex standard normal.
MatXc random_hermitian(int d, Rng& rng);
/// Uniform point of the probability simplex.
VecX random_spectrum(int d, Rng& rng);

}  // namespace extremal
