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

// A photon counter modeled as a quantum register. Each photon excites one
// electron, so the field/apparatus interaction moves |n⟩_f|k⟩_a to
// |0⟩_f|k+n⟩_a and the recorded energy shows up in the apparatus.

#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "branchcons/conservation.hpp"
#include "branchcons/errors.hpp"
#include "branchcons/hilbert.hpp"

namespace branchcons {

inline constexpr const char* kFieldLabel = "field";
inline constexpr const char* kApparatusLabel = "apparatus";

struct PhotonCountingSpec {
  int photon_cutoff = 10;                 // field levels 0..n_max
  double mode_energy = 1.0;               // ħω
  std::vector<Complex> field_amplitudes;  // over n = 0..n_max
  int apparatus_levels = 11;              // K
  double apparatus_base_energy = 0.0;     // E
  double excitation_energy = 1.0;         // e

  /// Equal superposition of vacuum and ten photons, e = ħω.
  static PhotonCountingSpec canonical() {
    PhotonCountingSpec s;
    s.photon_cutoff = 10;
    s.mode_energy = 1.0;
    s.field_amplitudes.assign(11, Complex(0.0, 0.0));
    s.field_amplitudes[0] = 1.0 / std::sqrt(2.0);
    s.field_amplitudes[10] = 1.0 / std::sqrt(2.0);
    s.apparatus_levels = 11;
    s.apparatus_base_energy = 1.0;
    s.excitation_energy = 1.0;
    return s;
  }

  HilbertSpace space() const {
    return HilbertSpace({{kFieldLabel, photon_cutoff + 1}, {kApparatusLabel, apparatus_levels}});
  }

  void validate() const {
    if (photon_cutoff < 1) throw InvalidArgument("photon_cutoff must be >= 1");
    if (!(mode_energy > 0.0)) throw InvalidArgument("mode_energy must be > 0");
    if (static_cast<int>(field_amplitudes.size()) != photon_cutoff + 1) {
      throw InvalidArgument("field_amplitudes must have photon_cutoff + 1 entries");
    }
    double norm2 = 0.0;
    for (const auto& c : field_amplitudes) norm2 += std::norm(c);
    if (std::abs(norm2 - 1.0) > 1e-10) throw InvalidArgument("field_amplitudes must be normalized");
    if (apparatus_levels < photon_cutoff + 1) {
      throw InvalidArgument("apparatus_levels must be >= photon_cutoff + 1");
    }
    if (!(apparatus_base_energy >= 0.0)) throw InvalidArgument("apparatus_base_energy must be >= 0");
    if (!(excitation_energy > 0.0)) throw InvalidArgument("excitation_energy must be > 0");
  }
};

/// ħω·n̂ on the field plus E + e·k̂ on the apparatus.
inline Observable photon_total_energy(const PhotonCountingSpec& spec) {
  const int nf = spec.photon_cutoff + 1;
  const int na = spec.apparatus_levels;
  RealVector field(nf), app(na);
  for (int n = 0; n < nf; ++n) field(n) = spec.mode_energy * n;
  for (int k = 0; k < na; ++k) app(k) = spec.apparatus_base_energy + spec.excitation_energy * k;
  const Observable q_s(HilbertSpace::single(kFieldLabel, nf),
                       field.cast<Complex>().asDiagonal().toDenseMatrix(), "energy");
  const Observable q_r(HilbertSpace::single(kApparatusLabel, na),
                       app.cast<Complex>().asDiagonal().toDenseMatrix(), "energy");
  return total_observable(q_s, q_r, spec.space());
}

/// Permutation of the joint basis that is block-diagonal in the shells
/// n + k = s. On each shell, |s⟩_f|0⟩_a → |0⟩_f|s⟩_a, and the remaining
/// sources are paired with the remaining targets in lexicographic (n, k)
/// order, which closes the shell into a single cycle.
inline UnitaryOp build_photon_counter(const PhotonCountingSpec& spec) {
  const int n_max = spec.photon_cutoff;
  const int levels = spec.apparatus_levels;
  const HilbertSpace space = spec.space();
  const auto d = space.total_dim();
  Matrix u = Matrix::Zero(d, d);
  auto index = [&](int n, int k) { return space.flat_index({n, k}); };

  for (int s = 0; s <= n_max + levels - 1; ++s) {
    std::vector<std::pair<int, int>> shell;  // ascending n is lexicographic order
    for (int n = 0; n <= n_max; ++n) {
      const int k = s - n;
      if (k >= 0 && k < levels) shell.emplace_back(n, k);
    }
    const bool has_source = s <= n_max;
    if (has_source && s > levels - 1) {
      throw OverflowUnrepresentable("build_photon_counter: " + std::to_string(s) +
                                    " photons cannot be recorded by " +
                                    std::to_string(levels) + " apparatus levels");
    }
    std::vector<std::pair<int, int>> sources, targets;
    for (const auto& nk : shell) {
      if (!has_source || nk != std::pair{s, 0}) sources.push_back(nk);
      if (!has_source || nk != std::pair{0, s}) targets.push_back(nk);
    }
    if (has_source) u(index(0, s), index(s, 0)) = 1.0;
    for (std::size_t i = 0; i < sources.size(); ++i) {
      u(index(targets[i].first, targets[i].second),
        index(sources[i].first, sources[i].second)) = 1.0;
    }
  }
  return UnitaryOp(space, std::move(u));
}

/// Field amplitudes ⊗ apparatus ground state.
inline QuantumState photon_initial_state(const PhotonCountingSpec& spec) {
  Vector field(spec.photon_cutoff + 1);
  for (int n = 0; n <= spec.photon_cutoff; ++n) field(n) = spec.field_amplitudes[n];
  Vector ground = Vector::Zero(spec.apparatus_levels);
  ground(0) = 1.0;
  return QuantumState::normalized(spec.space(), tensor_product_vector(field, ground));
}

/// Σ_n c_n |0⟩_f|n⟩_a: the field left in vacuum, the apparatus holding the count.
inline QuantumState photon_expected_final_state(const PhotonCountingSpec& spec) {
  const HilbertSpace space = spec.space();
  Vector v = Vector::Zero(space.total_dim());
  for (int n = 0; n <= spec.photon_cutoff; ++n) v(space.flat_index({0, n})) = spec.field_amplitudes[n];
  return QuantumState::normalized(space, std::move(v));
}

struct PhotonBranchRow {
  double total_energy;     // eigenvalue of the branch
  double weight;
  double leakage;
  double field_vacuum;     // probability the field is in |0⟩ within the final branch
  double apparatus_count;  // ⟨k̂⟩ within the final branch
};

struct PhotonCountingResult {
  ConservationReport report;
  QuantumState initial_state;
  QuantumState final_state;
  std::vector<PhotonBranchRow> branch_table;
  double energy_before;
  double energy_after;
  double fidelity_to_expected;  // |⟨expected|final⟩|²
};

inline PhotonCountingResult run_photon_counting(const PhotonCountingSpec& spec,
                                                const Tolerances& tol = {}) {
  spec.validate();
  const Observable energy = photon_total_energy(spec);
  const UnitaryOp counter = build_photon_counter(spec);
  const QuantumState initial = photon_initial_state(spec);
  const QuantumState final_state = apply(counter, initial);

  PhotonCountingResult r{conservation_report(initial, energy, counter, tol),
                         initial,
                         final_state,
                         {},
                         expectation(initial, energy),
                         expectation(final_state, energy),
                         fidelity(photon_expected_final_state(spec), final_state)};

  const HilbertSpace space = spec.space();
  const auto final_branches = spectral_branches(final_state, energy, tol.cluster, tol.weight_floor);
  for (const auto& row : r.report.branch_rows) {
    PhotonBranchRow out{row.eigenvalue, row.weight, row.leakage, 0.0, 0.0};
    for (const auto& b : final_branches.branches) {
      if (std::abs(b.eigenvalue - row.eigenvalue) > tol.cluster * std::max(1.0, energy.matrix().norm())) {
        continue;
      }
      for (Eigen::Index i = 0; i < space.total_dim(); ++i) {
        const double p = std::norm(b.state.amplitudes()(i));
        const auto digits = space.digits_of(i);
        if (digits[0] == 0) out.field_vacuum += p;
        out.apparatus_count += p * static_cast<double>(digits[1]);
      }
    }
    r.branch_table.push_back(out);
  }
  return r;
}

}  // namespace branchcons
