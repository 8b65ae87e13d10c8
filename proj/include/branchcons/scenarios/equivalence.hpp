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

// Branch structure of a mass held in a superposition of two positions. The
// mass sources a field, the field accelerates a distant test particle, and
// each step is a controlled unitary, so every position branch carries its own
// field and its own acceleration. No dynamics: g_i and a_i are orthogonal
// labels.

#pragma once

#include <algorithm>
#include <cmath>

#include "branchcons/conservation.hpp"
#include "branchcons/errors.hpp"
#include "branchcons/hilbert.hpp"

namespace branchcons {

inline constexpr const char* kMassLabel = "mass";
inline constexpr const char* kGravityLabel = "field";
inline constexpr const char* kTestLabel = "test";

struct EquivalenceSpec {
  Complex c1{1.0 / std::sqrt(2.0), 0.0};
  Complex c2{1.0 / std::sqrt(2.0), 0.0};

  void validate() const {
    if (std::abs(std::norm(c1) + std::norm(c2) - 1.0) > 1e-10) {
      throw InvalidArgument("position amplitudes (c1, c2) must be normalized");
    }
  }
};

/// mass {r₁, r₂} ⊗ field {g₀, g₁, g₂} ⊗ test {a₀, a₁, a₂}.
inline HilbertSpace equivalence_space() {
  return HilbertSpace({{kMassLabel, 2}, {kGravityLabel, 3}, {kTestLabel, 3}});
}

namespace detail {

inline Matrix swap_with_ground(Eigen::Index level, Eigen::Index dim) {
  Matrix s = Matrix::Identity(dim, dim);
  if (level == 0) return s;
  s(0, 0) = s(level, level) = 0.0;
  s(0, level) = s(level, 0) = 1.0;
  return s;
}

inline Matrix projector(Eigen::Index level, Eigen::Index dim) {
  Matrix p = Matrix::Zero(dim, dim);
  p(level, level) = 1.0;
  return p;
}

}  // namespace detail

/// Mass at r_i flips the field g₀ ↔ g_i.
inline UnitaryOp mass_to_field_coupling() {
  Matrix u = Matrix::Zero(18, 18);
  for (Eigen::Index i = 0; i < 2; ++i) {
    u += tensor_product(tensor_product(detail::projector(i, 2), detail::swap_with_ground(i + 1, 3)),
                        Matrix::Identity(3, 3));
  }
  return UnitaryOp(equivalence_space(), std::move(u));
}

/// Field g_j flips the test particle a₀ ↔ a_j (g₀ does nothing).
inline UnitaryOp field_to_test_coupling() {
  Matrix u = Matrix::Zero(18, 18);
  for (Eigen::Index j = 0; j < 3; ++j) {
    u += tensor_product(Matrix::Identity(2, 2),
                        tensor_product(detail::projector(j, 3), detail::swap_with_ground(j, 3)));
  }
  return UnitaryOp(equivalence_space(), std::move(u));
}

/// Position observable of the mass with r₁ = 1, r₂ = 2 (arbitrary units).
inline Observable mass_position_observable() {
  Matrix r = Matrix::Zero(2, 2);
  r(0, 0) = 1.0;
  r(1, 1) = 2.0;
  const HilbertSpace space = equivalence_space();
  return Observable(space, embed(r, kMassLabel, space), "position");
}

/// c₁|r₁⟩|g₁⟩|a₁⟩ + c₂|r₂⟩|g₂⟩|a₂⟩.
inline QuantumState equivalence_expected_state(const EquivalenceSpec& spec) {
  const HilbertSpace space = equivalence_space();
  Vector v = Vector::Zero(space.total_dim());
  v(space.flat_index({0, 1, 1})) = spec.c1;
  v(space.flat_index({1, 2, 2})) = spec.c2;
  return QuantumState::normalized(space, std::move(v));
}

inline constexpr double kCrossBranchTol = 1e-12;

struct EquivalenceResult {
  QuantumState final_state;
  double max_cross_amplitude;     // largest |amplitude| on a mixed triple
  bool branch_correlation_check;  // max_cross_amplitude <= 1e-12
  double fidelity_to_expected;
  BranchDecomposition position_branches;
};

inline EquivalenceResult run_equivalence(const EquivalenceSpec& spec) {
  spec.validate();
  const HilbertSpace space = equivalence_space();
  Vector v = Vector::Zero(space.total_dim());
  v(space.flat_index({0, 0, 0})) = spec.c1;
  v(space.flat_index({1, 0, 0})) = spec.c2;
  const QuantumState initial = QuantumState::normalized(space, std::move(v));
  const QuantumState final_state =
      apply(field_to_test_coupling(), apply(mass_to_field_coupling(), initial));

  double worst = 0.0;
  for (Eigen::Index idx = 0; idx < space.total_dim(); ++idx) {
    const auto d = space.digits_of(idx);
    const bool aligned = d[1] == d[0] + 1 && d[2] == d[1];
    if (!aligned) worst = std::max(worst, std::abs(final_state.amplitudes()(idx)));
  }
  return {final_state, worst, worst <= kCrossBranchTol,
          fidelity(equivalence_expected_state(spec), final_state),
          spectral_branches(final_state, mass_position_observable())};
}

}  // namespace branchcons
