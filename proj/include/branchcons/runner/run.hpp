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

// Executes a RunConfig. The machine-readable JSON is built first, with every
// number rounded to 12 significant digits; the human report is rendered from
// that JSON so the two cannot disagree.

#pragma once

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "branchcons/runner/config.hpp"
#include "branchcons/runner/format.hpp"

namespace branchcons::runner {

// Insertion-ordered so schema_version leads and field order is stable.
using ojson = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kOutputDirEnv = "BRANCHCONS_OUTPUT_DIR";

struct RunOutcome {
  int exit_code = 0;
  std::string report;
  ojson results;
  std::optional<std::string> csv;
};

namespace detail {

inline ojson num(double x) { return machine_round(x); }

inline ojson complex_json(Complex c) { return ojson::array({num(c.real()), num(c.imag())}); }

inline std::string h(const ojson& j) {
  if (j.is_null()) return "-";
  if (j.is_boolean()) return j.get<bool>() ? "yes" : "no";
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_number()) return human(j.get<double>());
  if (j.is_string()) return j.get<std::string>();
  if (j.is_array() && j.size() == 2 && j[0].is_number()) {
    return "(" + human(j[0].get<double>()) + ", " + human(j[1].get<double>()) + ")";
  }
  return j.dump();
}

/// RFC 4180: quote only when needed, double embedded quotes, CRLF line ends.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string csv_number(const ojson& j) {
  if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
  return j.dump();
}

inline std::string csv_table(const std::vector<std::string>& header, const ojson& rows) {
  std::ostringstream out;
  for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << csv_field(header[c]);
  out << "\r\n";
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < header.size(); ++c) {
      out << (c ? "," : "") << csv_number(row.at(header[c]));
    }
    out << "\r\n";
  }
  return out.str();
}

inline ojson branch_rows_json(const ConservationReport& r) {
  ojson rows = ojson::array();
  for (const auto& b : r.branch_rows) {
    rows.push_back({{"eigenvalue", num(b.eigenvalue)}, {"weight", num(b.weight)},
                    {"leakage", num(b.leakage)}});
  }
  return rows;
}

// Each scenario fills `parameters` and `results`, and appends to `failures`
// any asserted property that did not hold.
struct Sections {
  ojson parameters;
  ojson results;
  std::vector<std::string> failures;
  std::optional<std::string> csv;
};

inline Sections run_box(const BoxParams& p) {
  const auto& s = p.spec;
  Sections out;
  const double expanded = p.expanded_length.value_or(s.expanded_length());
  out.parameters = {{"box_length", num(s.box_length)},
                    {"quantum_number", s.quantum_number},
                    {"epsilon", num(s.epsilon)},
                    {"truncation", s.truncation},
                    {"expanded_length", num(expanded)}};

  const auto r = run_box_expansion(s.quantum_number, s.box_length, expanded, s.truncation);
  ojson& res = out.results;
  res["wavelength"] = num(s.wavelength());
  res["expansion"] = num(expanded - s.box_length);
  res["most_probable_m"] = r.most_probable_m;
  res["most_probable_tie"] = r.tie;
  res["nodes_after"] = r.most_probable_m - 1;
  res["predicted_m"] = s.quantum_number + 1;
  res["most_probable_probability"] = num(r.probabilities[r.most_probable_m - 1]);
  res["tail_mass"] = num(r.tail_mass);
  res["mean_energy_before"] = num(r.mean_energy_before);
  res["mean_energy_after"] = num(r.mean_energy_after);
  res["relative_energy_error"] =
      num(std::abs(r.mean_energy_after - r.mean_energy_before) / r.mean_energy_before);

  if (p.expanded_length) {
    res["wavelength_check"] = nullptr;  // only defined for δL = (λ/2)(1 − ε)
  } else {
    const auto w = box_wavelength_check(s);
    res["wavelength_check"] = {{"new_wavelength", num(w.new_wavelength)},
                               {"predicted", num(w.predicted)},
                               {"abs_error", num(w.abs_error)},
                               {"passed", w.passed}};
    if (!w.passed) out.failures.push_back("wavelength identity off by " + human(w.abs_error));
  }

  ojson conv = ojson::array();
  if (!p.convergence_truncations.empty()) {
    for (const auto& row : box_energy_convergence(s, p.convergence_truncations)) {
      conv.push_back({{"truncation", row.truncation},
                      {"tail_mass", num(row.tail_mass)},
                      {"mean_energy_after", num(row.mean_energy_after)},
                      {"relative_error", num(row.relative_error)}});
    }
  }
  res["convergence"] = conv;

  // Sweep results are reported, not asserted.
  ojson grid = ojson::array();
  for (int n : p.grid_quantum_numbers) {
    for (double eps : p.grid_epsilons) {
      BoxExpansionSpec g = s;
      g.quantum_number = n;
      g.epsilon = eps;
      const auto gr = run_box_expansion(g);
      grid.push_back({{"quantum_number", n},
                      {"epsilon", num(eps)},
                      {"most_probable_m", gr.most_probable_m},
                      {"predicted_m", n + 1},
                      {"agrees", gr.most_probable_m == n + 1 && !gr.tie}});
    }
  }
  res["grid"] = grid;

  ojson rows = ojson::array();
  for (int m = 1; m <= s.truncation; ++m) {
    rows.push_back({{"m", m},
                    {"coefficient", num(r.coefficients[m - 1])},
                    {"probability", num(r.probabilities[m - 1])},
                    {"energy", num(r.energy(m))}});
  }
  out.csv = csv_table({"m", "coefficient", "probability", "energy"}, rows);
  return out;
}

inline std::string box_report(const ojson& par, const ojson& res) {
  std::ostringstream o;
  o << "box: L = " << h(par["box_length"]) << ", n = " << h(par["quantum_number"])
    << ", epsilon = " << h(par["epsilon"]) << ", L' = " << h(par["expanded_length"])
    << ", M = " << h(par["truncation"]) << "\n\n";
  TextTable t({"quantity", "value"});
  for (const char* key : {"wavelength", "expansion", "most_probable_m", "most_probable_tie",
                          "nodes_after", "predicted_m", "most_probable_probability", "tail_mass",
                          "mean_energy_before", "mean_energy_after", "relative_energy_error"}) {
    t.add({key, h(res[key])});
  }
  const ojson& w = res["wavelength_check"];
  if (!w.is_null()) {
    t.add({"wavelength_after (2L'/(n+1))", h(w["new_wavelength"])});
    t.add({"wavelength_predicted", h(w["predicted"])});
    t.add({"wavelength_abs_error", h(w["abs_error"])});
    t.add({"wavelength_check", w["passed"].get<bool>() ? "PASS" : "FAIL"});
  }
  o << t.str();
  if (!res["convergence"].empty()) {
    TextTable c({"M", "tail_mass", "mean_energy_after", "relative_error"});
    for (const auto& row : res["convergence"]) {
      c.add({h(row["truncation"]), h(row["tail_mass"]), h(row["mean_energy_after"]),
             h(row["relative_error"])});
    }
    o << "\nmean-energy convergence\n" << c.str();
  }
  if (!res["grid"].empty()) {
    TextTable g({"n", "epsilon", "most_probable_m", "predicted_m", "agrees"});
    for (const auto& row : res["grid"]) {
      g.add({h(row["quantum_number"]), h(row["epsilon"]), h(row["most_probable_m"]),
             h(row["predicted_m"]), h(row["agrees"])});
    }
    o << "\nmost probable state over the grid\n" << g.str();
  }
  return o.str();
}

inline Sections run_photon(const PhotonCountingSpec& s, const Tolerances& tol,
                           const std::optional<Verdict>& expected) {
  Sections out;
  ojson amps = ojson::array();
  for (const auto& c : s.field_amplitudes) amps.push_back(complex_json(c));
  out.parameters = {{"photon_cutoff", s.photon_cutoff},
                    {"mode_energy", num(s.mode_energy)},
                    {"field_amplitudes", amps},
                    {"apparatus_levels", s.apparatus_levels},
                    {"apparatus_base_energy", num(s.apparatus_base_energy)},
                    {"excitation_energy", num(s.excitation_energy)}};

  const auto r = run_photon_counting(s, tol);
  ojson& res = out.results;
  res["verdict"] = to_string(r.report.verdict);
  res["commutator_defect"] = num(r.report.commutator_defect);
  res["average_defect"] = num(r.report.average_defect);
  res["energy_before"] = num(r.energy_before);
  res["energy_after"] = num(r.energy_after);
  res["fidelity_to_expected"] = num(r.fidelity_to_expected);
  ojson branches = ojson::array();
  for (const auto& b : r.branch_table) {
    branches.push_back({{"total_energy", num(b.total_energy)},
                        {"weight", num(b.weight)},
                        {"leakage", num(b.leakage)},
                        {"field_vacuum", num(b.field_vacuum)},
                        {"apparatus_count", num(b.apparatus_count)}});
  }
  res["branches"] = branches;
  if (expected && r.report.verdict != *expected) {
    out.failures.push_back("verdict " + to_string(r.report.verdict) + ", expected " +
                           to_string(*expected));
  }
  return out;
}

inline std::string photon_report(const ojson& par, const ojson& res) {
  std::ostringstream o;
  o << "photon counter: n_max = " << h(par["photon_cutoff"]) << ", hbar*omega = "
    << h(par["mode_energy"]) << ", K = " << h(par["apparatus_levels"])
    << ", E = " << h(par["apparatus_base_energy"]) << ", e = " << h(par["excitation_energy"])
    << "\n\n";
  TextTable t({"quantity", "value"});
  for (const char* key : {"verdict", "commutator_defect", "average_defect", "energy_before",
                          "energy_after", "fidelity_to_expected"}) {
    t.add({key, h(res[key])});
  }
  o << t.str() << "\nbranches of the total energy\n";
  TextTable b({"total_energy", "weight", "leakage", "field_vacuum", "apparatus_count"});
  for (const auto& row : res["branches"]) {
    b.add({h(row["total_energy"]), h(row["weight"]), h(row["leakage"]), h(row["field_vacuum"]),
           h(row["apparatus_count"])});
  }
  o << b.str();
  return o.str();
}

inline Sections run_beamsplitter_scenario(const BeamsplitterParams& p) {
  const auto& s = p.spec;
  Sections out;
  ojson sweep_in = ojson::array();
  for (const auto& k : p.kick_sweep) sweep_in.push_back(complex_json(k));
  out.parameters = {{"alpha", complex_json(s.alpha)},     {"kick", complex_json(s.kick)},
                    {"fock_cutoff", s.fock_cutoff},       {"reflect", complex_json(s.reflect)},
                    {"transmit", complex_json(s.transmit)}, {"kick_sweep", sweep_in}};

  const auto r = run_beamsplitter(s);
  ojson& res = out.results;
  res["visibility"] = num(r.visibility);
  res["closed_form_visibility"] = num(r.closed_form_visibility);
  res["unitarity_defect"] = num(r.unitarity_defect);
  res["momentum_bookkeeping_ok"] = r.momentum_bookkeeping_ok;
  ojson branches = ojson::array();
  for (const auto& b : r.branches) {
    branches.push_back({{"path", b.path},
                        {"weight", num(b.weight)},
                        {"pointer_momentum_before", num(b.pointer_momentum_before)},
                        {"pointer_momentum_after", num(b.pointer_momentum_after)},
                        {"pointer_shift", num(b.pointer_shift)},
                        {"photon_momentum_change", num(b.photon_momentum_change)},
                        {"net_change", num(b.net_change)}});
  }
  res["branches"] = branches;
  if (!r.momentum_bookkeeping_ok) {
    out.failures.push_back("momentum bookkeeping off by " + human(r.branches[0].net_change));
  }

  std::vector<Complex> kicks = p.kick_sweep;
  if (kicks.empty()) kicks.push_back(s.kick);
  ojson rows = ojson::array();
  for (const auto& k : kicks) {
    BeamsplitterSpec ks = s;
    ks.kick = k;
    const auto kr = run_beamsplitter(ks);
    rows.push_back({{"kick_re", num(k.real())},
                    {"kick_im", num(k.imag())},
                    {"kick_abs", num(std::abs(k))},
                    {"visibility", num(kr.visibility)},
                    {"closed_form", num(kr.closed_form_visibility)},
                    {"truncated_fock_overlap_abs",
                     num(std::abs(coherent_overlap(s.alpha, k, s.fock_cutoff)))},
                    {"r_branch_shift", num(kr.branches[0].pointer_shift)}});
    if (!kr.momentum_bookkeeping_ok) {
      out.failures.push_back("momentum bookkeeping fails for kick " + h(complex_json(k)));
    }
  }
  res["sweep"] = rows;
  out.csv = csv_table({"kick_re", "kick_im", "kick_abs", "visibility", "closed_form",
                       "truncated_fock_overlap_abs", "r_branch_shift"},
                      rows);
  return out;
}

inline std::string beamsplitter_report(const ojson& par, const ojson& res) {
  std::ostringstream o;
  o << "beamsplitter: alpha = " << h(par["alpha"]) << ", kick = " << h(par["kick"])
    << ", fock_cutoff = " << h(par["fock_cutoff"]) << "\n\n";
  TextTable t({"quantity", "value"});
  for (const char* key : {"visibility", "closed_form_visibility", "unitarity_defect",
                          "momentum_bookkeeping_ok"}) {
    t.add({key, h(res[key])});
  }
  o << t.str() << "\npath branches\n";
  TextTable b({"path", "weight", "p_before", "p_after", "pointer_shift", "photon_change", "net"});
  for (const auto& row : res["branches"]) {
    b.add({h(row["path"]), h(row["weight"]), h(row["pointer_momentum_before"]),
           h(row["pointer_momentum_after"]), h(row["pointer_shift"]),
           h(row["photon_momentum_change"]), h(row["net_change"])});
  }
  o << b.str() << "\nkick sweep\n";
  TextTable s({"kick_re", "kick_im", "|kick|", "visibility", "closed_form", "fock_overlap",
               "r_shift"});
  for (const auto& row : res["sweep"]) {
    s.add({h(row["kick_re"]), h(row["kick_im"]), h(row["kick_abs"]), h(row["visibility"]),
           h(row["closed_form"]), h(row["truncated_fock_overlap_abs"]), h(row["r_branch_shift"])});
  }
  o << s.str();
  return o.str();
}

inline Sections run_equivalence_scenario(const EquivalenceSpec& s) {
  Sections out;
  out.parameters = {{"c1", complex_json(s.c1)}, {"c2", complex_json(s.c2)}};
  const auto r = run_equivalence(s);
  ojson& res = out.results;
  res["fidelity_to_expected"] = num(r.fidelity_to_expected);
  res["max_cross_amplitude"] = num(r.max_cross_amplitude);
  res["branch_correlation_check"] = r.branch_correlation_check;
  ojson branches = ojson::array();
  for (const auto& b : r.position_branches.branches) {
    branches.push_back({{"position", num(b.eigenvalue)}, {"weight", num(b.weight)}});
  }
  res["position_branches"] = branches;
  if (!r.branch_correlation_check) {
    out.failures.push_back("cross-branch amplitude " + human(r.max_cross_amplitude));
  }
  return out;
}

inline std::string equivalence_report(const ojson& par, const ojson& res) {
  std::ostringstream o;
  o << "equivalence: c1 = " << h(par["c1"]) << ", c2 = " << h(par["c2"]) << "\n\n";
  TextTable t({"quantity", "value"});
  for (const char* key : {"fidelity_to_expected", "max_cross_amplitude",
                          "branch_correlation_check"}) {
    t.add({key, h(res[key])});
  }
  o << t.str() << "\nmass position branches\n";
  TextTable b({"position", "weight"});
  for (const auto& row : res["position_branches"]) b.add({h(row["position"]), h(row["weight"])});
  o << b.str();
  return o.str();
}

inline Sections run_fuzz_scenario(FuzzCampaign c, const Tolerances& tol, std::uint64_t salt,
                                  const std::optional<Verdict>& expected) {
  c.tolerances = tol;
  c.salt = salt;
  c.expected = expected;
  Sections out;
  out.parameters = {{"seeds", ojson::array({c.seed_first, c.seed_last})},
                    {"dims", ojson::array({c.dim_min, c.dim_max})},
                    {"family", to_string(c.family)}};
  const auto s = run_fuzz(c);
  ojson& res = out.results;
  res["trial_count"] = s.trials.size();
  ojson counts = ojson::object();
  for (Verdict v : {Verdict::Exact, Verdict::AverageOnly, Verdict::Violated}) {
    counts[to_string(v)] = s.count(v);
  }
  res["verdict_counts"] = counts;
  res["worst_commutator_defect"] = num(s.worst_commutator_defect);
  res["worst_average_defect"] = num(s.worst_average_defect);
  res["max_leakage"] = num(s.max_leakage);
  res["min_trial_max_leakage"] = num(s.min_trial_max_leakage);
  res["mismatches"] = s.mismatches;
  ojson trials = ojson::array();
  for (const auto& t : s.trials) {
    trials.push_back({{"seed", t.seed},
                      {"dim", t.dim},
                      {"verdict", to_string(t.report.verdict)},
                      {"commutator_defect", num(t.report.commutator_defect)},
                      {"average_defect", num(t.report.average_defect)},
                      {"max_leakage", num(t.report.max_leakage())},
                      {"branches", branch_rows_json(t.report)}});
  }
  res["trials"] = trials;
  if (s.mismatches > 0) {
    out.failures.push_back(std::to_string(s.mismatches) + " of " +
                           std::to_string(s.trials.size()) + " trials contradict " +
                           to_string(*expected));
  }
  return out;
}

inline std::string fuzz_report(const ojson& par, const ojson& res) {
  std::ostringstream o;
  o << "fuzz: family = " << h(par["family"]) << ", seeds " << h(par["seeds"][0]) << ".."
    << h(par["seeds"][1]) << ", dims " << h(par["dims"][0]) << ".." << h(par["dims"][1])
    << "\n\n";
  TextTable t({"quantity", "value"});
  t.add({"trials", h(res["trial_count"])});
  for (const auto& [verdict, count] : res["verdict_counts"].items()) t.add({verdict, h(count)});
  for (const char* key : {"worst_commutator_defect", "worst_average_defect", "max_leakage",
                          "min_trial_max_leakage", "mismatches"}) {
    t.add({key, h(res[key])});
  }
  o << t.str() << "\ntrials\n";
  TextTable tr({"seed", "dim", "verdict", "commutator_defect", "average_defect", "max_leakage"});
  for (const auto& row : res["trials"]) {
    tr.add({h(row["seed"]), h(row["dim"]), h(row["verdict"]), h(row["commutator_defect"]),
            h(row["average_defect"]), h(row["max_leakage"])});
  }
  o << tr.str();
  return o.str();
}

}  // namespace detail

/// Runs the configured scenario. Scenario errors propagate as branchcons::Error.
inline RunOutcome execute(const RunConfig& cfg) {
  using namespace detail;
  Sections sec;
  std::string (*render)(const ojson&, const ojson&) = nullptr;
  switch (cfg.scenario) {
    case Scenario::Box:
      sec = run_box(std::get<BoxParams>(cfg.parameters));
      render = box_report;
      break;
    case Scenario::Photon:
      sec = run_photon(std::get<PhotonCountingSpec>(cfg.parameters), cfg.tolerances, cfg.expected);
      render = photon_report;
      break;
    case Scenario::Beamsplitter:
      sec = run_beamsplitter_scenario(std::get<BeamsplitterParams>(cfg.parameters));
      render = beamsplitter_report;
      break;
    case Scenario::Equivalence:
      sec = run_equivalence_scenario(std::get<EquivalenceSpec>(cfg.parameters));
      render = equivalence_report;
      break;
    case Scenario::Fuzz:
      sec = run_fuzz_scenario(std::get<FuzzCampaign>(cfg.parameters), cfg.tolerances, cfg.seed,
                              cfg.expected);
      render = fuzz_report;
      break;
  }

  RunOutcome out;
  ojson& j = out.results;
  j["schema_version"] = kSchemaVersion;
  j["scenario"] = to_string(cfg.scenario);
  j["seed"] = cfg.seed;
  j["tolerances"] = {{"exact_tol", num(cfg.tolerances.exact)},
                     {"avg_tol", num(cfg.tolerances.average)},
                     {"cluster_tol", num(cfg.tolerances.cluster)},
                     {"weight_floor", num(cfg.tolerances.weight_floor)}};
  j["parameters"] = sec.parameters;
  j["results"] = sec.results;
  j["assertion"] = {{"expected", cfg.expected ? ojson(to_string(*cfg.expected)) : ojson(nullptr)},
                    {"passed", sec.failures.empty()},
                    {"failures", sec.failures}};
  out.exit_code = sec.failures.empty() ? 0 : 1;
  out.csv = std::move(sec.csv);

  std::ostringstream rep;
  rep << "scenario " << j["scenario"].get<std::string>() << "  seed " << cfg.seed
      << "  exact_tol " << h(j["tolerances"]["exact_tol"]) << "  avg_tol "
      << h(j["tolerances"]["avg_tol"]) << "  cluster_tol " << h(j["tolerances"]["cluster_tol"])
      << "\n";
  rep << render(j["parameters"], j["results"]) << "\n";
  const ojson& a = j["assertion"];
  rep << "assertion: " << (a["passed"].get<bool>() ? "PASS" : "FAIL");
  if (!a["expected"].is_null()) rep << " (expected verdict " << a["expected"].get<std::string>() << ")";
  rep << "\n";
  for (const auto& f : a["failures"]) rep << "  - " << f.get<std::string>() << "\n";
  out.report = rep.str();
  return out;
}

namespace detail {

// Floats print with %.12g rather than the library's shortest-form printer,
// which can emit 17 digits for values that round-trip in 12.
inline void emit(const ojson& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (const auto& [k, v] : j.items()) {
      if (!first) out += ",\n";
      first = false;
      out += pad + ojson(k).dump() + ": ";
      emit(v, indent + 2, out);
    }
    out += "\n" + close + "}";
  } else if (j.is_array()) {
    if (j.empty()) {
      out += "[]";
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ",\n";
      out += pad;
      emit(j[i], indent + 2, out);
    }
    out += "\n" + close + "]";
  } else if (j.is_number_float()) {
    const double x = j.get<double>();
    if (!std::isfinite(x)) {
      out += "null";
      return;
    }
    std::string s = format_sig(x, kMachineDigits);
    if (s.find_first_of(".e") == std::string::npos) s += ".0";
    out += s;
  } else {
    out += j.dump();
  }
}

}  // namespace detail

/// Serialized results: two-space indent, trailing newline, key order fixed.
inline std::string results_text(const RunOutcome& o) {
  std::string out;
  detail::emit(o.results, 0, out);
  return out + "\n";
}

struct ArtifactPaths {
  std::filesystem::path report;
  std::filesystem::path results;
  std::optional<std::filesystem::path> csv;
};

/// Output directory: config's output.dir, else $BRANCHCONS_OUTPUT_DIR, else ".".
/// Relative file names in the config resolve against that directory.
inline ArtifactPaths write_artifacts(const RunConfig& cfg, const RunOutcome& o) {
  namespace fs = std::filesystem;
  fs::path dir = ".";
  if (cfg.output.dir) {
    dir = *cfg.output.dir;
  } else if (const char* env = std::getenv(kOutputDirEnv); env && *env) {
    dir = env;
  }
  const std::string stem = to_string(cfg.scenario);
  auto resolve = [&](const std::optional<std::string>& name, const std::string& fallback) {
    const fs::path p = name ? fs::path(*name) : fs::path(fallback);
    return p.is_absolute() ? p : dir / p;
  };
  ArtifactPaths paths{resolve(cfg.output.report, stem + "_report.txt"),
                      resolve(cfg.output.results, stem + "_results.json"),
                      std::nullopt};
  if (o.csv) paths.csv = resolve(cfg.output.csv, stem + ".csv");

  auto write = [](const fs::path& p, const std::string& text) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    if (!f) throw Error("cannot write " + p.string());
    f << text;
  };
  write(paths.report, o.report);
  write(paths.results, results_text(o));
  if (paths.csv) write(*paths.csv, *o.csv);
  return paths;
}

}  // namespace branchcons::runner
