// Copyright 2026 The branchcons Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "branchcons/scenarios/equivalence.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"

using namespace branchcons;

TEST(RunEquivalence, single_branch_is_product_state) {
  const auto r = run_equivalence(EquivalenceSpec{1.0, 0.0});
  const auto space = equivalence_space();
  EXPECT_EQ(r.final_state.amplitudes()(space.flat_index({0, 1, 1})), Complex(1.0, 0.0));
  EXPECT_TRUE(r.branch_correlation_check);
  EXPECT_EQ(r.position_branches.branches.size(), 1u);
}

TEST(RunEquivalence, equal_superposition_matches_correlated_state) {
  const auto r = run_equivalence(EquivalenceSpec{});
  EXPECT_GE(r.fidelity_to_expected, 1.0 - 1e-12);
  EXPECT_TRUE(r.branch_correlation_check);
  EXPECT_LE(r.max_cross_amplitude, 1e-12);
}

TEST(RunEquivalence, position_branches_carry_weights) {
  const Complex c1(0.6, 0.0), c2(0.0, 0.8);
  const auto r = run_equivalence(EquivalenceSpec{c1, c2});
  const auto& branches = r.position_branches.branches;
  ASSERT_EQ(branches.size(), 2u);
  EXPECT_NEAR(branches[0].eigenvalue, 1.0, 1e-12);
  EXPECT_NEAR(branches[0].weight, 0.36, 1e-12);
  EXPECT_NEAR(branches[1].weight, 0.64, 1e-12);
  // Each position branch is the full r_i g_i a_i record.
  const auto space = equivalence_space();
  EXPECT_NEAR(std::abs(branches[0].state.amplitudes()(space.flat_index({0, 1, 1}))), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(branches[1].state.amplitudes()(space.flat_index({1, 2, 2}))), 1.0, 1e-12);
}

TEST(RunEquivalence, random_amplitudes_stay_correlated) {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    Complex c1(g(rng), g(rng)), c2(g(rng), g(rng));
    const double n = std::sqrt(std::norm(c1) + std::norm(c2));
    const auto r = run_equivalence(EquivalenceSpec{c1 / n, c2 / n});
    EXPECT_NEAR(r.final_state.amplitudes().norm(), 1.0, 1e-12);
    EXPECT_TRUE(r.branch_correlation_check);
  }
}

TEST(Couplings, are_permutations) {
  EXPECT_LE(unitarity_defect(mass_to_field_coupling().matrix()), 1e-15);
  EXPECT_LE(unitarity_defect(field_to_test_coupling().matrix()), 1e-15);
}

TEST(EquivalenceSpec, validation) {
  EXPECT_THROW(run_equivalence(EquivalenceSpec{1.0, 1.0}), InvalidArgument);
}
