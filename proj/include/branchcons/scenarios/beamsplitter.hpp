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

// A photon meeting a recoiling beamsplitter. The path qubit (t, r) controls
// a displacement of the beamsplitter's pointer state: reflection kicks the
// pointer from |α⟩ to |α − δ⟩, transmission leaves it alone. The pointer is a
// coherent state in a truncated Fock space.
//
// Momentum convention: P = (a + a†)/2, so ⟨P⟩ = Re α on |α⟩ and the kick −δ
// shifts the pointer momentum by −Re δ.

#pragma once

#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "branchcons/errors.hpp"
#include "branchcons/hilbert.hpp"
#include "branchcons/numeric.hpp"

namespace branchcons {

inline constexpr const char* kPathLabel = "path";
inline constexpr const char* kPointerLabel = "pointer";
inline constexpr Eigen::Index kTransmitted = 0;
inline constexpr Eigen::Index kReflected = 1;

/// Smallest cutoff considered adequate for amplitudes α and kick δ.
inline int minimum_fock_cutoff(Complex alpha, Complex kick) {
  return static_cast<int>(std::ceil(4.0 * (std::norm(alpha) + std::norm(kick)))) + 20;
}

struct BeamsplitterSpec {
  Complex alpha{0.0, 0.0};
  Complex kick{1.0, 0.0};
  int fock_cutoff = 24;  // pointer levels 0..fock_cutoff
  Complex reflect{1.0 / std::sqrt(2.0), 0.0};
  Complex transmit{1.0 / std::sqrt(2.0), 0.0};

  HilbertSpace space() const {
    return HilbertSpace({{kPathLabel, 2}, {kPointerLabel, fock_cutoff + 1}});
  }

  void validate() const {
    if (std::abs(std::norm(reflect) + std::norm(transmit) - 1.0) > 1e-10) {
      throw InvalidArgument("path amplitudes (r, t) must be normalized");
    }
    if (fock_cutoff < minimum_fock_cutoff(alpha, kick)) {
      throw InvalidArgument("fock_cutoff must be >= " +
                            std::to_string(minimum_fock_cutoff(alpha, kick)));
    }
  }
};

inline Matrix annihilation(Eigen::Index dim) {
  Matrix a = Matrix::Zero(dim, dim);
  for (Eigen::Index n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

inline Matrix pointer_momentum(Eigen::Index dim) {
  const Matrix a = annihilation(dim);
  return 0.5 * (a + a.adjoint());
}

/// Truncated coherent-state amplitudes e^{−|α|²/2} αⁿ/√n!, n < dim. Not
/// renormalized, so the norm deficit measures the truncation error.
inline Vector coherent_amplitudes(Complex alpha, Eigen::Index dim) {
  Vector v(dim);
  v(0) = std::exp(-0.5 * std::norm(alpha));
  for (Eigen::Index n = 1; n < dim; ++n) v(n) = v(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  return v;
}

inline constexpr double kFockNormTol = 1e-10;

/// ⟨α − δ|α⟩ from truncated Fock vectors.
inline Complex coherent_overlap(Complex alpha, Complex kick, int fock_cutoff) {
  const Vector shifted = coherent_amplitudes(alpha - kick, fock_cutoff + 1);
  const Vector original = coherent_amplitudes(alpha, fock_cutoff + 1);
  for (const Vector* v : {&shifted, &original}) {
    if (std::abs(v->norm() - 1.0) > kFockNormTol) {
      throw TruncationInadequate("coherent_overlap: truncated coherent state has norm " +
                                 std::to_string(v->norm()) + " at cutoff " +
                                 std::to_string(fock_cutoff));
    }
  }
  return shifted.dot(original);
}

/// D(β) = exp(β a† − β* a), exponentiated in the truncated space.
inline Matrix displacement(Complex beta, Eigen::Index dim) {
  if (beta == Complex(0.0, 0.0)) return Matrix::Identity(dim, dim);
  const Matrix a = annihilation(dim);
  const Matrix generator = beta * a.adjoint() - std::conj(beta) * a;
  // exp(G) = exp(−i·H) with H = iG Hermitian.
  return unitary_from_hamiltonian(Complex(0.0, 1.0) * generator, 1.0);
}

struct PathBranchRow {
  std::string path;             // "r" or "t"
  double weight;
  double pointer_momentum_before;
  double pointer_momentum_after;
  double pointer_shift;
  double photon_momentum_change;
  double net_change;            // pointer_shift + photon_momentum_change
};

inline constexpr double kMomentumBookkeepingTol = 1e-6;

struct BeamsplitterResult {
  QuantumState final_state;
  double visibility;             // |⟨α|D(−δ)|α⟩|
  double closed_form_visibility; // exp(−|δ|²/2)
  double unitarity_defect;
  std::array<PathBranchRow, 2> branches;  // r first, then t
  bool momentum_bookkeeping_ok;

  /// (r-branch pointer shift, t-branch pointer shift).
  std::pair<double, double> per_branch_momentum() const {
    return {branches[0].pointer_shift, branches[1].pointer_shift};
  }
};

inline constexpr double kInteractionUnitaryTol = 1e-9;

/// U = |t⟩⟨t| ⊗ I + |r⟩⟨r| ⊗ D(−δ) on path ⊗ pointer.
inline UnitaryOp beamsplitter_interaction(const BeamsplitterSpec& spec) {
  const auto dim = static_cast<Eigen::Index>(spec.fock_cutoff) + 1;
  Matrix proj_t = Matrix::Zero(2, 2), proj_r = Matrix::Zero(2, 2);
  proj_t(kTransmitted, kTransmitted) = 1.0;
  proj_r(kReflected, kReflected) = 1.0;
  Matrix u = tensor_product(proj_t, Matrix::Identity(dim, dim)) +
             tensor_product(proj_r, displacement(-spec.kick, dim));
  const double defect = unitarity_defect(u);
  if (defect > kInteractionUnitaryTol) {
    throw TruncationInadequate("beamsplitter_interaction: ‖U†U − I‖_F = " +
                               std::to_string(defect));
  }
  return UnitaryOp(spec.space(), std::move(u));
}

inline BeamsplitterResult run_beamsplitter(const BeamsplitterSpec& spec) {
  spec.validate();
  const auto dim = static_cast<Eigen::Index>(spec.fock_cutoff) + 1;
  const Vector pointer = coherent_amplitudes(spec.alpha, dim);
  if (std::abs(pointer.norm() - 1.0) > kFockNormTol) {
    throw TruncationInadequate("run_beamsplitter: pointer state truncated too hard");
  }
  const UnitaryOp u = beamsplitter_interaction(spec);

  Vector path(2);
  path(kTransmitted) = spec.transmit;
  path(kReflected) = spec.reflect;
  const QuantumState initial =
      QuantumState::normalized(spec.space(), tensor_product_vector(path, Vector(pointer / pointer.norm())));
  const QuantumState final_state = apply(u, initial);

  const Vector ptr_t = pointer / pointer.norm();
  const Vector ptr_r = displacement(-spec.kick, dim) * ptr_t;
  if (std::abs(ptr_r.norm() - 1.0) > kFockNormTol) {
    throw TruncationInadequate("run_beamsplitter: displaced pointer leaks past the cutoff");
  }
  // Identical pointer states when there is no kick.
  const double visibility = spec.kick == Complex(0.0, 0.0) ? 1.0 : std::abs(ptr_r.dot(ptr_t));

  const Matrix p = pointer_momentum(dim);
  const double before = ptr_t.dot(p * ptr_t).real();
  const double after_r = ptr_r.dot(p * ptr_r).real();
  const double photon_change = spec.kick.real();

  BeamsplitterResult r{
      final_state,
      visibility,
      std::exp(-0.5 * std::norm(spec.kick)),
      unitarity_defect(u.matrix()),
      {PathBranchRow{"r", std::norm(spec.reflect), before, after_r, after_r - before,
                     photon_change, after_r - before + photon_change},
       PathBranchRow{"t", std::norm(spec.transmit), before, before, 0.0, 0.0, 0.0}},
      false};
  r.momentum_bookkeeping_ok = std::abs(r.branches[0].net_change) <= kMomentumBookkeepingTol;
  return r;
}

}  // namespace branchcons
