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

// Sudden expansion of an infinite square well, in units ħ = 1, 2m = 1 so
// that E_n = (nπ/L)². The particle starts in eigenstate n of a box of width
// L; the wall jumps to L' and the old wavefunction is re-expanded in the new
// eigenbasis.

#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "branchcons/errors.hpp"

namespace branchcons {

struct BoxExpansionSpec {
  double box_length = 1.0;
  int quantum_number = 1;
  double epsilon = 0.1;
  int truncation = 2000;  // number of post-expansion eigenstates kept

  /// λ = 2L/n.
  double wavelength() const { return 2.0 * box_length / quantum_number; }
  /// δL = (λ/2)(1 − ε).
  double expansion() const { return 0.5 * wavelength() * (1.0 - epsilon); }
  double expanded_length() const { return box_length + expansion(); }

  void validate() const {
    if (!(box_length > 0.0) || !std::isfinite(box_length)) {
      throw InvalidArgument("box_length must be > 0");
    }
    if (quantum_number < 1) throw InvalidArgument("quantum_number must be >= 1");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidArgument("epsilon must lie in (0, 1)");
    if (truncation < 10 * quantum_number) {
      throw InvalidArgument("truncation must be >= 10 * quantum_number");
    }
  }
};

namespace detail {

/// ∫₀^L cos(k·x) dx = L·sinc(kL), with a series near kL = 0.
inline double cos_integral(double k, double length) {
  const double z = k * length;
  if (std::abs(z) < 1e-4) {
    const double z2 = z * z;
    return length * (1.0 - z2 / 6.0 + z2 * z2 / 120.0);
  }
  return std::sin(z) / k;
}

}  // namespace detail

/// c_m = ∫₀^L √(2/L) sin(nπx/L) · √(2/L') sin(mπx/L') dx in closed form,
/// via sin·sin = ½[cos(a−b)x − cos(a+b)x]. The resonant case a = b is covered
/// by the sinc limit.
inline double box_overlap(int n, double length, int m, double expanded_length) {
  if (!(length > 0.0)) throw InvalidGeometry("box_overlap: L must be > 0");
  if (expanded_length < length) throw InvalidGeometry("box_overlap: L' must be >= L");
  if (n < 1 || m < 1) throw InvalidArgument("box_overlap: quantum numbers must be >= 1");
  if (expanded_length == length) return n == m ? 1.0 : 0.0;
  const double a = n * std::numbers::pi / length;
  const double b = m * std::numbers::pi / expanded_length;
  const double integral =
      0.5 * (detail::cos_integral(a - b, length) - detail::cos_integral(a + b, length));
  return 2.0 / std::sqrt(length * expanded_length) * integral;
}

struct WavelengthCheck {
  double new_wavelength;       // 2L'/(n+1)
  double predicted;            // λ(1 − ε/(n+1))
  double abs_error;
  bool passed;                 // abs_error <= 1e-12
};

inline WavelengthCheck box_wavelength_check(const BoxExpansionSpec& spec) {
  const int n = spec.quantum_number;
  const double lhs = 2.0 * spec.expanded_length() / (n + 1);
  const double rhs = spec.wavelength() * (1.0 - spec.epsilon / (n + 1));
  const double err = std::abs(lhs - rhs);
  return {lhs, rhs, err, err <= 1e-12};
}

struct BoxExpansionResult {
  int quantum_number;
  double box_length;
  double expanded_length;
  std::vector<double> coefficients;   // c_m for m = 1..M, index m−1
  std::vector<double> probabilities;  // |c_m|²
  int most_probable_m;
  bool tie;                           // another m matched the maximum
  double tail_mass;                   // 1 − Σ p_m
  double mean_energy_before;          // (nπ/L)²
  double mean_energy_after;           // Σ p_m (mπ/L')²

  double energy(int m) const {
    const double k = m * std::numbers::pi / expanded_length;
    return k * k;
  }
};

inline constexpr double kBoxTailLimit = 1e-6;

/// Probabilities over the first `truncation` eigenstates of the widened box.
/// Throws TruncationInadequate when more than 1e-6 of the mass is cut off.
inline BoxExpansionResult run_box_expansion(int n, double length, double expanded_length,
                                            int truncation) {
  if (truncation < 1) throw InvalidArgument("run_box_expansion: truncation must be >= 1");
  BoxExpansionResult r{n, length, expanded_length, {}, {}, 1, false, 0.0, 0.0, 0.0};
  r.coefficients.reserve(truncation);
  r.probabilities.reserve(truncation);
  double total = 0.0;
  double energy = 0.0;
  double best = -1.0;
  for (int m = 1; m <= truncation; ++m) {
    const double c = box_overlap(n, length, m, expanded_length);
    const double p = c * c;
    r.coefficients.push_back(c);
    r.probabilities.push_back(p);
    total += p;
    energy += p * r.energy(m);
    if (p > best * (1.0 + 1e-12)) {
      best = p;
      r.most_probable_m = m;
      r.tie = false;
    } else if (p >= best * (1.0 - 1e-12)) {
      r.tie = true;  // smaller m already holds the maximum
    }
  }
  r.tail_mass = 1.0 - total;
  const double k0 = n * std::numbers::pi / length;
  r.mean_energy_before = k0 * k0;
  r.mean_energy_after = energy;
  if (r.tail_mass > kBoxTailLimit) {
    throw TruncationInadequate("run_box_expansion: tail mass " + std::to_string(r.tail_mass) +
                               " above 1e-6 at M = " + std::to_string(truncation));
  }
  return r;
}

inline BoxExpansionResult run_box_expansion(const BoxExpansionSpec& spec) {
  spec.validate();
  return run_box_expansion(spec.quantum_number, spec.box_length, spec.expanded_length(),
                           spec.truncation);
}

struct ConvergenceRow {
  int truncation;
  double tail_mass;
  double mean_energy_after;
  double relative_error;  // |⟨H'⟩ − E_n| / E_n
};

/// Mean-energy error of the truncated re-expansion for each M in `truncations`.
inline std::vector<ConvergenceRow> box_energy_convergence(const BoxExpansionSpec& spec,
                                                          const std::vector<int>& truncations) {
  spec.validate();
  std::vector<ConvergenceRow> rows;
  for (int m : truncations) {
    const auto r = run_box_expansion(spec.quantum_number, spec.box_length,
                                     spec.expanded_length(), m);
    rows.push_back({m, r.tail_mass, r.mean_energy_after,
                    std::abs(r.mean_energy_after - r.mean_energy_before) /
                        r.mean_energy_before});
  }
  return rows;
}

}  // namespace branchcons
