// Copyright 2026 The bzxz Authors
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

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "bzxz/linalg.hpp"

namespace bzxz {

using Rng = std::mt19937_64;

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases of
/// diag(R) divided out.
inline Matrix random_unitary(std::size_t n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto d = static_cast<Eigen::Index>(n);
  Matrix z(d, d);
  for (Eigen::Index c = 0; c < d; ++c)
    for (Eigen::Index r = 0; r < d; ++r) z(r, c) = Complex(normal(rng), normal(rng));
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < d; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

inline Matrix random_unitary(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return random_unitary(n, rng);
}

/// mapping[col] = row of the 1 entry.
inline std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

inline Matrix permutation_matrix(const std::vector<std::size_t>& mapping) {
  const auto n = static_cast<Eigen::Index>(mapping.size());
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index c = 0; c < n; ++c) m(static_cast<Eigen::Index>(mapping[c]), c) = 1.0;
  return m;
}

}  // namespace bzxz
