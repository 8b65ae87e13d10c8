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

#include "branchcons/scenarios/beamsplitter.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"

#include "oracles.hpp"

using namespace branchcons;
using branchcons::testing::coherent_overlap_magnitude;

namespace {

BeamsplitterSpec make_spec(Complex alpha, Complex kick) {
  BeamsplitterSpec s;
  s.alpha = alpha;
  s.kick = kick;
  s.fock_cutoff = minimum_fock_cutoff(alpha, kick);
  return s;
}

}  // namespace

TEST(CoherentOverlap, no_kick_is_one) {
  EXPECT_NEAR(std::abs(coherent_overlap({0.7, -0.3}, 0.0, 30)), 1.0, 1e-14);
}

TEST(CoherentOverlap, matches_closed_form) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (double mag : {0.5, 1.0, 2.0, 4.0}) {
    for (int trial = 0; trial < 5; ++trial) {
      const Complex alpha(u(rng), u(rng));
      const Complex kick = std::polar(mag, u(rng));
      const int cutoff = minimum_fock_cutoff(alpha, kick);
      EXPECT_NEAR(std::abs(coherent_overlap(alpha, kick, cutoff)), coherent_overlap_magnitude(kick), 1e-8);
    }
  }
}

TEST(CoherentOverlap, which_path_regime) {
  const Complex kick(6.0, 0.0);
  const double mag = std::abs(coherent_overlap(0.0, kick, minimum_fock_cutoff(0.0, kick)));
  EXPECT_LE(mag, 2e-8);
  EXPECT_NEAR(mag, std::exp(-18.0), 1e-12);
}

TEST(CoherentOverlap, truncation_inadequate) {
  EXPECT_THROW(coherent_overlap({3.0, 0.0}, {1.0, 0.0}, 10), TruncationInadequate);
}

TEST(Displacement, moves_vacuum_to_coherent_state) {
  const Complex beta(0.8, -0.4);
  const Eigen::Index dim = 40;
  Vector vacuum = Vector::Zero(dim);
  vacuum(0) = 1.0;
  const Vector displaced = displacement(beta, dim) * vacuum;
  EXPECT_LE((displaced - coherent_amplitudes(beta, dim)).norm(), 1e-10);
}

TEST(RunBeamsplitter, no_kick_leaves_photon_unentangled) {
  const auto r = run_beamsplitter(make_spec({1.0, 0.5}, 0.0));
  EXPECT_EQ(r.visibility, 1.0);
  EXPECT_EQ(r.per_branch_momentum().first, 0.0);
}

TEST(RunBeamsplitter, unit_kick_visibility) {
  const auto r = run_beamsplitter(make_spec({0.3, 0.2}, {1.0, 0.0}));
  EXPECT_NEAR(r.visibility, std::exp(-0.5), 1e-7);
  EXPECT_NEAR(r.visibility, 0.6065306597, 1e-9);
  EXPECT_LE(r.unitarity_defect, 1e-9);
}

TEST(RunBeamsplitter, final_state_has_branch_structure) {
  const auto spec = make_spec({0.5, 0.0}, {1.5, 0.5});
  const auto r = run_beamsplitter(spec);
  const auto space = spec.space();
  const Eigen::Index dim = spec.fock_cutoff + 1;
  const Vector expected_r = coherent_amplitudes(spec.alpha - spec.kick, dim);
  const Vector expected_t = coherent_amplitudes(spec.alpha, dim);
  // Up to the phase D(−δ) picks up, the r-branch pointer is |α − δ⟩.
  const Vector got_r = r.final_state.amplitudes().segment(kReflected * dim, dim) / spec.reflect;
  const Vector got_t = r.final_state.amplitudes().segment(kTransmitted * dim, dim) / spec.transmit;
  EXPECT_NEAR(std::abs(expected_r.dot(got_r)), 1.0, 1e-9);
  EXPECT_LE((got_t - expected_t).norm(), 1e-9);
  EXPECT_EQ(space.total_dim(), 2 * dim);
}

TEST(RunBeamsplitter, momentum_bookkeeping) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    const Complex kick(u(rng), u(rng));
    const auto r = run_beamsplitter(make_spec({u(rng), u(rng)}, kick));
    EXPECT_NEAR(r.per_branch_momentum().first, -kick.real(), 1e-6);
    EXPECT_EQ(r.per_branch_momentum().second, 0.0);
    EXPECT_TRUE(r.momentum_bookkeeping_ok);
    EXPECT_NEAR(r.branches[0].net_change, 0.0, 1e-6);
  }
}

TEST(RunBeamsplitter, visibility_independent_of_alpha) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const Complex kick(0.0, 1.3);
  const double reference = run_beamsplitter(make_spec(0.0, kick)).visibility;
  for (int trial = 0; trial < 10; ++trial) {
    EXPECT_NEAR(run_beamsplitter(make_spec({u(rng), u(rng)}, kick)).visibility, reference, 1e-7);
  }
}

TEST(BeamsplitterSpec, validation) {
  auto spec = make_spec({1.0, 0.0}, {1.0, 0.0});
  spec.fock_cutoff -= 1;
  EXPECT_THROW(spec.validate(), InvalidArgument);
  spec = make_spec({1.0, 0.0}, {1.0, 0.0});
  spec.reflect = 1.0;
  EXPECT_THROW(spec.validate(), InvalidArgument);
}
