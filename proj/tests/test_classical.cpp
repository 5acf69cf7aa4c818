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

#include <gtest/gtest.h>

#include "bzxz/classical.hpp"
#include "bzxz/random.hpp"
#include "bzxz/synthesis.hpp"

namespace bzxz {
namespace {

const std::vector<std::size_t> kExample = {2, 0, 3, 1};

bool only_nots(const Circuit& c) {
  for (const Gate& g : c.gates)
    if (g.kind != GateKind::not_gate) return false;
  return true;
}

TEST(Permutation, Detection) {
  const PermutationProfile p = is_permutation(permutation_matrix(kExample));
  EXPECT_TRUE(p.is_permutation);
  EXPECT_EQ(p.mapping, kExample);
  Matrix m = permutation_matrix(kExample);
  m(2, 0) = kI;
  EXPECT_FALSE(is_permutation(m).is_permutation);
  m(2, 0) = 1.0;
  m(0, 0) = 1.0;
  EXPECT_FALSE(is_permutation(m).is_permutation);
}

TEST(PhasedPermutation, AlgebraMatchesMatrices) {
  Rng rng(4);
  std::uniform_int_distribution<int> ph(0, 3);
  for (int k = 0; k < 20; ++k) {
    PhasedPermutation x{random_permutation(6, rng), std::vector<std::uint8_t>(6)};
    PhasedPermutation y{random_permutation(6, rng), std::vector<std::uint8_t>(6)};
    for (auto& p : x.phase) p = static_cast<std::uint8_t>(ph(rng));
    for (auto& p : y.phase) p = static_cast<std::uint8_t>(ph(rng));
    EXPECT_EQ((x * y).to_matrix(), x.to_matrix() * y.to_matrix());
    EXPECT_EQ(x.adjoint().to_matrix(), x.to_matrix().adjoint());
    EXPECT_TRUE((x.adjoint() * x).is_real_permutation());
  }
}

TEST(Birkhoff, ExampleFactors) {
  const BirkhoffFactors f = birkhoff_permutations(kExample);
  EXPECT_EQ(f.a, (std::vector<std::size_t>{1, 0}));
  EXPECT_EQ(f.b, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(f.d, (std::vector<std::size_t>{1, 0}));
  EXPECT_EQ(f.c, (std::vector<int>{-1, 1}));
  EXPECT_EQ(f.weight11, 1u);
  EXPECT_EQ(f.weight12, 1u);
}

TEST(Birkhoff, FloatingPathWithCanonicalCompletionAgrees) {
  const UnitaryMatrix u = UnitaryMatrix::validate(permutation_matrix(kExample));
  DecompositionOptions o;
  o.polar.completion = CompletionRule::canonical_classical(SlotRole::x_type);
  const BlockFactors fl = block_zxz(u, o);
  const BlockFactors ex = birkhoff_block_zxz(u);
  EXPECT_EQ(fl.a, ex.a);
  EXPECT_EQ(fl.b, ex.b);
  EXPECT_EQ(fl.c, ex.c);
  EXPECT_EQ(fl.d, ex.d);
  EXPECT_EQ(ex.residual, 0.0);
}

TEST(Birkhoff, RandomEvenSizesAreExact) {
  Rng rng(12);
  for (std::size_t n = 2; n <= 40; n += 2) {
    for (int k = 0; k < 5; ++k) {
      const UnitaryMatrix u = UnitaryMatrix::validate(permutation_matrix(random_permutation(n, rng)));
      const BlockFactors f = birkhoff_block_zxz(u);
      EXPECT_TRUE(is_permutation(f.a, 0.0).is_permutation);
      EXPECT_TRUE(is_permutation(f.b, 0.0).is_permutation);
      EXPECT_TRUE(is_permutation(f.d, 0.0).is_permutation);
      for (Eigen::Index j = 0; j < f.c.rows(); ++j) EXPECT_EQ(std::abs(f.c(j, j).real()), 1.0);
      EXPECT_EQ(factor_product(f), u.matrix());
    }
  }
}

TEST(Birkhoff, Errors) {
  EXPECT_THROW(birkhoff_permutations({0, 2, 1}), Error);
  const UnitaryMatrix h = UnitaryMatrix::validate(Matrix(hadamard_matrix()));
  try {
    birkhoff_block_zxz(h);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::not_permutation);
  }
}

TEST(ClassicalCircuit, ExampleIsNotNetwork) {
  const Circuit c = classical_circuit_from_mapping(kExample);
  EXPECT_TRUE(only_nots(c));
  EXPECT_EQ(evaluate_circuit(c), permutation_matrix(kExample));
}

TEST(ClassicalCircuit, RandomPowersOfTwo) {
  Rng rng(13);
  for (std::size_t w = 1; w <= 6; ++w) {
    for (int k = 0; k < 5; ++k) {
      const auto mapping = random_permutation(std::size_t{1} << w, rng);
      const Circuit c = classical_circuit_from_mapping(mapping);
      EXPECT_TRUE(only_nots(c));
      EXPECT_EQ(evaluate_circuit(c), permutation_matrix(mapping));
    }
  }
}

TEST(ClassicalCircuit, IdentityNeedsNoGates) {
  const Circuit c = classical_circuit_from_mapping({0, 1, 2, 3, 4, 5, 6, 7});
  EXPECT_TRUE(c.gates.empty());
  EXPECT_GT(c.elided_identities, 0u);
}

TEST(ClassicalCircuit, TopNotIsSingleGate) {
  // NOT on wire 0 of two wires.
  const Circuit c = classical_circuit_from_mapping({2, 3, 0, 1});
  ASSERT_EQ(c.gates.size(), 1u);
  EXPECT_EQ(c.gates[0].target, 0u);
  EXPECT_TRUE(c.gates[0].controls.empty());
}

TEST(ClassicalCircuit, AutoLoweringRoutesPermutations) {
  const UnitaryMatrix u = UnitaryMatrix::validate(permutation_matrix(kExample));
  SynthesisOptions o;
  o.lowering = Lowering::classical_auto;
  const SynthesisResult r = synthesize_with_report(u, o);
  EXPECT_TRUE(r.classical_route);
  EXPECT_TRUE(only_nots(r.circuit));
  o.lowering = Lowering::u2;
  EXPECT_FALSE(synthesize_with_report(u, o).classical_route);
}

}  // namespace
}  // namespace bzxz
