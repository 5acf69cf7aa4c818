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

// Decomposes the two-spin exchange unitary for a few angles and prints the
// four block factors together with their reconstruction error.

#include <cmath>
#include <cstdio>
#include <numbers>

#include "bzxz/bzxz.hpp"

namespace {

bzxz::Matrix spin_exchange(double t) {
  bzxz::Matrix u = bzxz::Matrix::Identity(4, 4);
  u(1, 1) = u(2, 2) = std::cos(t);
  u(1, 2) = std::sin(t);
  u(2, 1) = -std::sin(t);
  return u;
}

void show(const char* name, const bzxz::Matrix& m) {
  std::printf("  %s =", name);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    std::printf(r ? "\n       " : " ");
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      std::printf(" %+.3f%+.3fi", m(r, c).real(), m(r, c).imag());
    }
  }
  std::printf("\n");
}

}  // namespace

int main() {
  using namespace bzxz;
  for (double t : {std::numbers::pi / 6, std::numbers::pi / 4, std::numbers::pi / 3}) {
    const UnitaryMatrix u = UnitaryMatrix::validate(spin_exchange(t));
    for (Variant v : {Variant::v1, Variant::v2}) {
      DecompositionOptions opts;
      opts.variant = v;
      opts.polar.completion = CompletionRule::canonical_classical(SlotRole::x_type);
      const BlockFactors f = block_zxz(u, opts);
      std::printf("t = %.4f, variant %s, residual %.2e\n", t, to_string(v), f.residual);
      show("A", f.a);
      show("B", f.b);
      show("C", f.c);
      show("D", f.d);
    }
  }
  return 0;
}
