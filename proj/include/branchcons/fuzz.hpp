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

// Seeded sweeps over conserving unitaries and over the average-only
// counterexample family.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "branchcons/conservation.hpp"
#include "branchcons/errors.hpp"

namespace branchcons {

enum class FuzzFamily { Conserving, AverageOnly };

inline std::string to_string(FuzzFamily f) {
  return f == FuzzFamily::Conserving ? "conserving" : "average-only";
}

inline std::optional<FuzzFamily> parse_family(const std::string& s) {
  if (s == "conserving") return FuzzFamily::Conserving;
  if (s == "average-only") return FuzzFamily::AverageOnly;
  return std::nullopt;
}

struct FuzzCampaign {
  std::uint64_t seed_first = 0;
  std::uint64_t seed_last = 99;
  int dim_min = 2;
  int dim_max = 12;
  FuzzFamily family = FuzzFamily::Conserving;
  std::optional<Verdict> expected;
  Tolerances tolerances;
  std::uint64_t salt = 0;  // mixed into every trial seed; 0 keeps trial seeds as given

  void validate() const {
    if (seed_first > seed_last) throw InvalidArgument("seed range is empty");
    if (dim_min > dim_max) throw InvalidArgument("dimension range is empty");
    const int floor = family == FuzzFamily::AverageOnly ? 2 : 1;
    if (dim_min < floor) {
      throw InvalidArgument("dimension range must start at >= " + std::to_string(floor) +
                            " for family " + to_string(family));
    }
  }
};

struct FuzzTrial {
  std::uint64_t seed;
  int dim;
  ConservationReport report;
  bool matches_expected;
};

struct FuzzSummary {
  std::vector<FuzzTrial> trials;
  std::map<Verdict, int> verdict_counts;
  double worst_commutator_defect = 0.0;
  double worst_average_defect = 0.0;
  double max_leakage = 0.0;
  double min_trial_max_leakage = 1.0;  // smallest per-trial max leakage
  int mismatches = 0;

  int count(Verdict v) const {
    const auto it = verdict_counts.find(v);
    return it == verdict_counts.end() ? 0 : it->second;
  }
};

/// One trial; the observable, unitary and state all derive from `seed`.
inline FuzzTrial run_fuzz_trial(std::uint64_t seed, const FuzzCampaign& c) {
  Rng rng(c.salt == 0 ? seed : seed ^ (c.salt * 0x9E3779B97F4A7C15ULL));
  std::uniform_int_distribution<int> pick_dim(c.dim_min, c.dim_max);
  const int dim = pick_dim(rng);
  auto report = [&]() {
    if (c.family == FuzzFamily::Conserving) {
      const Observable q = random_degenerate_observable(dim, rng);
      const UnitaryOp u = random_conserving_unitary(q, rng(), c.tolerances.cluster);
      const QuantumState psi(q.space(), random_state_vector(dim, rng));
      return conservation_report(psi, q, u, c.tolerances);
    }
    const auto triple = average_only_counterexample(rng(), dim);
    return conservation_report(triple.state, triple.observable, triple.unitary, c.tolerances);
  }();
  const bool ok = !c.expected || report.verdict == *c.expected;
  return {seed, dim, std::move(report), ok};
}

/// Runs every seed in order; results are deterministic given the campaign.
inline FuzzSummary run_fuzz(const FuzzCampaign& c) {
  c.validate();
  FuzzSummary s;
  for (std::uint64_t seed = c.seed_first;; ++seed) {
    FuzzTrial t = run_fuzz_trial(seed, c);
    s.verdict_counts[t.report.verdict]++;
    s.worst_commutator_defect = std::max(s.worst_commutator_defect, t.report.commutator_defect);
    s.worst_average_defect = std::max(s.worst_average_defect, t.report.average_defect);
    s.max_leakage = std::max(s.max_leakage, t.report.max_leakage());
    s.min_trial_max_leakage = std::min(s.min_trial_max_leakage, t.report.max_leakage());
    if (!t.matches_expected) ++s.mismatches;
    s.trials.push_back(std::move(t));
    if (seed == c.seed_last) break;
  }
  return s;
}

}  // namespace branchcons
