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

// Run configuration: one scenario per JSON file. Complex numbers are
// [re, im] pairs (a bare number is read as real). Every rejection names the
// offending field.

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "branchcons/conservation.hpp"
#include "branchcons/errors.hpp"
#include "branchcons/fuzz.hpp"
#include "branchcons/scenarios/beamsplitter.hpp"
#include "branchcons/scenarios/box.hpp"
#include "branchcons/scenarios/equivalence.hpp"
#include "branchcons/scenarios/photon.hpp"

namespace branchcons::runner {

using nlohmann::json;

class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class Scenario { Box, Photon, Beamsplitter, Equivalence, Fuzz };

inline std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::Box: return "box";
    case Scenario::Photon: return "photon";
    case Scenario::Beamsplitter: return "beamsplitter";
    case Scenario::Equivalence: return "equivalence";
    case Scenario::Fuzz: return "fuzz";
  }
  return "?";
}

struct BoxParams {
  BoxExpansionSpec spec;
  std::optional<double> expanded_length;  // replaces L + δL when set
  std::vector<int> convergence_truncations;
  std::vector<int> grid_quantum_numbers;
  std::vector<double> grid_epsilons;
};

struct BeamsplitterParams {
  BeamsplitterSpec spec;
  std::vector<Complex> kick_sweep;
};

struct OutputPaths {
  std::optional<std::string> dir;
  std::optional<std::string> report;
  std::optional<std::string> results;
  std::optional<std::string> csv;
};

struct RunConfig {
  Scenario scenario = Scenario::Box;
  std::variant<BoxParams, PhotonCountingSpec, BeamsplitterParams, EquivalenceSpec, FuzzCampaign>
      parameters;
  Tolerances tolerances;
  std::uint64_t seed = 0;
  std::optional<Verdict> expected;
  OutputPaths output;
};

namespace detail {

inline const char* type_name(const json& j) { return j.type_name(); }

inline void reject_unknown(const json& obj, const std::string& path,
                           const std::set<std::string>& allowed) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) {
      throw ConfigError(path + (path.empty() ? "" : ".") + key + ": unknown field");
    }
  }
}

inline std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

inline const json& require(const json& obj, const std::string& path, const std::string& key) {
  if (!obj.contains(key)) throw ConfigError(join(path, key) + ": required field is missing");
  return obj.at(key);
}

inline double number(const json& j, const std::string& where) {
  if (!j.is_number()) {
    throw ConfigError(where + ": expected a number, got " + type_name(j));
  }
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw ConfigError(where + ": must be finite");
  return x;
}

inline std::int64_t integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) {
    throw ConfigError(where + ": expected an integer, got " + type_name(j));
  }
  return j.get<std::int64_t>();
}

inline Complex complex_value(const json& j, const std::string& where) {
  if (j.is_number()) return {number(j, where), 0.0};
  if (!j.is_array() || j.size() != 2) {
    throw ConfigError(where + ": expected a complex number as [re, im]");
  }
  return {number(j[0], where + "[0]"), number(j[1], where + "[1]")};
}

inline std::vector<Complex> complex_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array");
  std::vector<Complex> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(complex_value(j[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

template <typename T, typename Read>
std::vector<T> list_of(const json& j, const std::string& where, Read read) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array");
  std::vector<T> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(static_cast<T>(read(j[i], where + "[" + std::to_string(i) + "]")));
  }
  return out;
}

/// "A..B" in a string, or a two-element [A, B] array.
inline std::pair<std::int64_t, std::int64_t> range(const json& j, const std::string& where) {
  if (j.is_array() && j.size() == 2) {
    return {integer(j[0], where + "[0]"), integer(j[1], where + "[1]")};
  }
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    const auto dots = s.find("..");
    try {
      if (dots != std::string::npos) {
        std::size_t used_a = 0, used_b = 0;
        const auto a = std::stoll(s.substr(0, dots), &used_a);
        const auto b = std::stoll(s.substr(dots + 2), &used_b);
        if (used_a == dots && used_b == s.size() - dots - 2) return {a, b};
      }
    } catch (const std::exception&) {
    }
  }
  throw ConfigError(where + ": expected a range \"A..B\" or [A, B]");
}

template <typename F>
void check(bool ok, const std::string& where, F&& message) {
  if (!ok) throw ConfigError(where + ": " + message());
}

/// Runs a spec's own validate() and reports failures against `path`.
template <typename Spec>
void validate_spec(const Spec& spec, const std::string& path) {
  try {
    spec.validate();
  } catch (const Error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

inline BoxParams parse_box(const json& p, const std::string& path) {
  reject_unknown(p, path, {"box_length", "quantum_number", "epsilon", "truncation",
                           "expanded_length", "convergence_truncations", "grid"});
  BoxParams out;
  auto& s = out.spec;
  s.box_length = number(require(p, path, "box_length"), join(path, "box_length"));
  check(s.box_length > 0.0, join(path, "box_length"), [] { return "must be > 0"; });
  s.quantum_number = static_cast<int>(integer(require(p, path, "quantum_number"), join(path, "quantum_number")));
  check(s.quantum_number >= 1, join(path, "quantum_number"), [] { return "must be >= 1"; });
  s.epsilon = number(require(p, path, "epsilon"), join(path, "epsilon"));
  check(s.epsilon > 0.0 && s.epsilon < 1.0, join(path, "epsilon"), [] { return "must lie in (0, 1)"; });
  if (p.contains("truncation")) {
    s.truncation = static_cast<int>(integer(p["truncation"], join(path, "truncation")));
  }
  check(s.truncation >= 10 * s.quantum_number, join(path, "truncation"),
        [] { return "must be >= 10 * quantum_number"; });
  if (p.contains("expanded_length")) {
    const double lp = number(p["expanded_length"], join(path, "expanded_length"));
    check(lp >= s.box_length, join(path, "expanded_length"), [] { return "must be >= box_length"; });
    out.expanded_length = lp;
  }
  if (p.contains("convergence_truncations")) {
    const auto where = join(path, "convergence_truncations");
    out.convergence_truncations = list_of<int>(p["convergence_truncations"], where, integer);
    for (int m : out.convergence_truncations) {
      check(m >= 1, where, [] { return "entries must be >= 1"; });
    }
  }
  if (p.contains("grid")) {
    const auto gpath = join(path, "grid");
    const json& g = p["grid"];
    check(g.is_object(), gpath, [] { return "expected an object"; });
    reject_unknown(g, gpath, {"quantum_numbers", "epsilons"});
    out.grid_quantum_numbers =
        list_of<int>(require(g, gpath, "quantum_numbers"), join(gpath, "quantum_numbers"), integer);
    out.grid_epsilons = list_of<double>(require(g, gpath, "epsilons"), join(gpath, "epsilons"), number);
    for (int n : out.grid_quantum_numbers) {
      check(n >= 1 && s.truncation >= 10 * n, join(gpath, "quantum_numbers"),
            [] { return "entries must be >= 1 and satisfy truncation >= 10 * n"; });
    }
    for (double e : out.grid_epsilons) {
      check(e > 0.0 && e < 1.0, join(gpath, "epsilons"), [] { return "entries must lie in (0, 1)"; });
    }
  }
  validate_spec(s, path);
  return out;
}

inline PhotonCountingSpec parse_photon(const json& p, const std::string& path) {
  reject_unknown(p, path, {"photon_cutoff", "mode_energy", "field_amplitudes", "apparatus_levels",
                           "apparatus_base_energy", "excitation_energy"});
  PhotonCountingSpec s;
  s.photon_cutoff = static_cast<int>(integer(require(p, path, "photon_cutoff"), join(path, "photon_cutoff")));
  check(s.photon_cutoff >= 1, join(path, "photon_cutoff"), [] { return "must be >= 1"; });
  s.mode_energy = number(require(p, path, "mode_energy"), join(path, "mode_energy"));
  check(s.mode_energy > 0.0, join(path, "mode_energy"), [] { return "must be > 0"; });
  s.field_amplitudes = complex_list(require(p, path, "field_amplitudes"), join(path, "field_amplitudes"));
  check(static_cast<int>(s.field_amplitudes.size()) == s.photon_cutoff + 1, join(path, "field_amplitudes"),
        [] { return "must have photon_cutoff + 1 entries"; });
  double norm2 = 0.0;
  for (const auto& c : s.field_amplitudes) norm2 += std::norm(c);
  check(std::abs(norm2 - 1.0) <= 1e-10, join(path, "field_amplitudes"),
        [&] { return "must be normalized (sum |c|^2 = " + std::to_string(norm2) + ")"; });
  s.apparatus_levels =
      static_cast<int>(p.contains("apparatus_levels")
                           ? integer(p["apparatus_levels"], join(path, "apparatus_levels"))
                           : s.photon_cutoff + 1);
  check(s.apparatus_levels >= s.photon_cutoff + 1, join(path, "apparatus_levels"),
        [] { return "must be >= photon_cutoff + 1"; });
  s.apparatus_base_energy = p.contains("apparatus_base_energy")
                                ? number(p["apparatus_base_energy"], join(path, "apparatus_base_energy"))
                                : 0.0;
  check(s.apparatus_base_energy >= 0.0, join(path, "apparatus_base_energy"), [] { return "must be >= 0"; });
  s.excitation_energy = p.contains("excitation_energy")
                            ? number(p["excitation_energy"], join(path, "excitation_energy"))
                            : s.mode_energy;
  check(s.excitation_energy > 0.0, join(path, "excitation_energy"), [] { return "must be > 0"; });
  validate_spec(s, path);
  return s;
}

inline BeamsplitterParams parse_beamsplitter(const json& p, const std::string& path) {
  reject_unknown(p, path, {"alpha", "kick", "fock_cutoff", "reflect", "transmit", "kick_sweep"});
  BeamsplitterParams out;
  auto& s = out.spec;
  s.alpha = complex_value(require(p, path, "alpha"), join(path, "alpha"));
  s.kick = complex_value(require(p, path, "kick"), join(path, "kick"));
  if (p.contains("reflect")) s.reflect = complex_value(p["reflect"], join(path, "reflect"));
  if (p.contains("transmit")) s.transmit = complex_value(p["transmit"], join(path, "transmit"));
  check(std::abs(std::norm(s.reflect) + std::norm(s.transmit) - 1.0) <= 1e-10, join(path, "reflect"),
        [] { return "path amplitudes (reflect, transmit) must be normalized"; });
  if (p.contains("kick_sweep")) out.kick_sweep = complex_list(p["kick_sweep"], join(path, "kick_sweep"));
  int needed = minimum_fock_cutoff(s.alpha, s.kick);
  for (const auto& k : out.kick_sweep) needed = std::max(needed, minimum_fock_cutoff(s.alpha, k));
  if (p.contains("fock_cutoff")) {
    s.fock_cutoff = static_cast<int>(integer(p["fock_cutoff"], join(path, "fock_cutoff")));
    check(s.fock_cutoff >= needed, join(path, "fock_cutoff"),
          [&] { return "must be >= " + std::to_string(needed) + " for these amplitudes"; });
  } else {
    s.fock_cutoff = needed;
  }
  validate_spec(s, path);
  return out;
}

inline EquivalenceSpec parse_equivalence(const json& p, const std::string& path) {
  reject_unknown(p, path, {"c1", "c2"});
  EquivalenceSpec s{complex_value(require(p, path, "c1"), join(path, "c1")),
                    complex_value(require(p, path, "c2"), join(path, "c2"))};
  validate_spec(s, path);
  return s;
}

inline FuzzCampaign parse_fuzz(const json& p, const std::string& path) {
  reject_unknown(p, path, {"seeds", "dims", "family"});
  FuzzCampaign c;
  const auto [s0, s1] = range(require(p, path, "seeds"), join(path, "seeds"));
  check(s0 >= 0, join(path, "seeds"), [] { return "seeds must be non-negative"; });
  check(s0 <= s1, join(path, "seeds"), [] { return "seed range is empty"; });
  c.seed_first = static_cast<std::uint64_t>(s0);
  c.seed_last = static_cast<std::uint64_t>(s1);
  const auto [d0, d1] = range(require(p, path, "dims"), join(path, "dims"));
  check(d0 <= d1, join(path, "dims"), [] { return "dimension range is empty"; });
  check(d0 >= 1 && d1 <= 256, join(path, "dims"), [] { return "dimensions must lie in [1, 256]"; });
  c.dim_min = static_cast<int>(d0);
  c.dim_max = static_cast<int>(d1);
  const json& fam = require(p, path, "family");
  const auto family = fam.is_string() ? parse_family(fam.get<std::string>()) : std::nullopt;
  check(family.has_value(), join(path, "family"), [] { return "must be \"conserving\" or \"average-only\""; });
  c.family = *family;
  validate_spec(c, path);
  return c;
}

inline Tolerances parse_tolerances(const json& t, const std::string& path) {
  check(t.is_object(), path, [] { return "expected an object"; });
  reject_unknown(t, path, {"exact_tol", "avg_tol", "cluster_tol", "weight_floor"});
  Tolerances tol;
  auto read = [&](const char* key, double& slot) {
    if (!t.contains(key)) return;
    slot = number(t[key], join(path, key));
    check(slot > 0.0, join(path, key), [] { return "must be > 0"; });
  };
  read("exact_tol", tol.exact);
  read("avg_tol", tol.average);
  read("cluster_tol", tol.cluster);
  read("weight_floor", tol.weight_floor);
  return tol;
}

}  // namespace detail

/// Builds a RunConfig from an already-parsed JSON document.
inline RunConfig parse_config(const json& doc) {
  using namespace detail;
  if (!doc.is_object()) throw ConfigError("config: top level must be a JSON object");
  reject_unknown(doc, "", {"scenario", "parameters", "tolerances", "seed", "assert", "output"});

  RunConfig cfg;
  const json& scen = require(doc, "", "scenario");
  const std::string name = scen.is_string() ? scen.get<std::string>() : "";
  const json empty = json::object();
  const json& params = doc.contains("parameters") ? doc["parameters"] : empty;
  check(params.is_object(), "parameters", [] { return "expected an object"; });

  if (doc.contains("tolerances")) cfg.tolerances = parse_tolerances(doc["tolerances"], "tolerances");
  if (doc.contains("seed")) {
    const auto seed = integer(doc["seed"], "seed");
    check(seed >= 0, "seed", [] { return "must be non-negative"; });
    cfg.seed = static_cast<std::uint64_t>(seed);
  }
  if (doc.contains("assert")) {
    const json& a = doc["assert"];
    cfg.expected = a.is_string() ? parse_verdict(a.get<std::string>()) : std::nullopt;
    check(cfg.expected.has_value(), "assert", [] { return "must be EXACT, AVERAGE_ONLY or VIOLATED"; });
  }

  if (name == "box") {
    cfg.scenario = Scenario::Box;
    cfg.parameters = parse_box(params, "parameters");
  } else if (name == "photon") {
    cfg.scenario = Scenario::Photon;
    cfg.parameters = parse_photon(params, "parameters");
  } else if (name == "beamsplitter") {
    cfg.scenario = Scenario::Beamsplitter;
    cfg.parameters = parse_beamsplitter(params, "parameters");
  } else if (name == "equivalence") {
    cfg.scenario = Scenario::Equivalence;
    cfg.parameters = parse_equivalence(params, "parameters");
  } else if (name == "fuzz") {
    cfg.scenario = Scenario::Fuzz;
    cfg.parameters = parse_fuzz(params, "parameters");
  } else {
    throw ConfigError("scenario: must be one of box, photon, beamsplitter, equivalence, fuzz");
  }
  if (cfg.expected && cfg.scenario != Scenario::Photon && cfg.scenario != Scenario::Fuzz) {
    throw ConfigError("assert: only the photon and fuzz scenarios produce a verdict");
  }

  if (doc.contains("output")) {
    const json& o = doc["output"];
    check(o.is_object(), "output", [] { return "expected an object"; });
    reject_unknown(o, "output", {"dir", "report", "results", "csv"});
    auto read = [&](const char* key, std::optional<std::string>& slot) {
      if (!o.contains(key)) return;
      check(o[key].is_string(), join("output", key), [] { return "expected a string"; });
      slot = o[key].get<std::string>();
    };
    read("dir", cfg.output.dir);
    read("report", cfg.output.report);
    read("results", cfg.output.results);
    read("csv", cfg.output.csv);
  }
  return cfg;
}

/// Parses JSON text; syntax errors report line and column.
inline RunConfig parse_config_text(const std::string& text, const std::string& source = "config") {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(source + ": " + e.what());
  }
  return parse_config(doc);
}

inline RunConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError(file.string() + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), file.string());
}

}  // namespace branchcons::runner
