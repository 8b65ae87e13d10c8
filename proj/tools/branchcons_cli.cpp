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

// branchcons command-line runner.
//
//   branchcons run --config <path> [--seed N] [--csv <path>]
//                  [--tol-exact X] [--tol-avg X] [--tol-cluster X] [--out-dir D]
//   branchcons fuzz --dims A..B --seeds A..B --family conserving|average-only
//                   [--assert EXACT|AVERAGE_ONLY|VIOLATED] [tolerances] [--out-dir D]
//
// Exit status: 0 success, 1 an asserted property failed, 2 bad input.

#include <cstdint>
#include <iostream>
#include <optional>
#include <regex>
#include <string>

#include "CLI11.hpp"

#include "branchcons/runner/run.hpp"

namespace {

using namespace branchcons;
using namespace branchcons::runner;

struct ToleranceFlags {
  std::optional<double> exact, average, cluster;

  void add_to(CLI::App* app) {
    app->add_option("--tol-exact", exact, "commutator-defect tolerance for EXACT")
        ->check(CLI::PositiveNumber);
    app->add_option("--tol-avg", average, "relative tolerance on the change of <Q>")
        ->check(CLI::PositiveNumber);
    app->add_option("--tol-cluster", cluster, "relative eigenvalue clustering tolerance")
        ->check(CLI::PositiveNumber);
  }

  void apply(Tolerances& t) const {
    if (exact) t.exact = *exact;
    if (average) t.average = *average;
    if (cluster) t.cluster = *cluster;
  }
};

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text, const char* what) {
  static const std::regex re(R"(^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) {
    throw ConfigError(std::string("--") + what + ": expected A..B, got \"" + text + "\"");
  }
  return {std::stoll(m[1]), std::stoll(m[2])};
}

int finish(const RunConfig& cfg, const std::optional<std::string>& out_dir) {
  RunConfig c = cfg;
  if (out_dir) c.output.dir = out_dir;
  const RunOutcome o = execute(c);
  const ArtifactPaths paths = write_artifacts(c, o);
  std::cout << o.report;
  std::cout << "\nwrote " << paths.report.string() << "\n      " << paths.results.string() << "\n";
  if (paths.csv) std::cout << "      " << paths.csv->string() << "\n";
  return o.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Branch-by-branch conservation checks for finite quantum models"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run one scenario from a JSON config");
  std::string config_path;
  std::optional<std::int64_t> seed;
  std::optional<std::string> csv_path, run_out_dir;
  ToleranceFlags run_tol;
  run->add_option("--config", config_path, "scenario config (JSON)")->required();
  run->add_option("--seed", seed, "override the config seed")->check(CLI::NonNegativeNumber);
  run->add_option("--csv", csv_path, "path for the columnar data file");
  run->add_option("--out-dir", run_out_dir, "directory for artifacts");
  run_tol.add_to(run);

  auto* fuzz = app.add_subcommand("fuzz", "seeded sweep over random observables and unitaries");
  std::string dims = "2..12", seeds, family;
  std::optional<std::string> expected, fuzz_out_dir;
  ToleranceFlags fuzz_tol;
  fuzz->add_option("--dims", dims, "dimension range A..B")->capture_default_str();
  fuzz->add_option("--seeds", seeds, "seed range A..B")->required();
  fuzz->add_option("--family", family, "conserving or average-only")
      ->required()
      ->check(CLI::IsMember({"conserving", "average-only"}));
  fuzz->add_option("--assert", expected, "verdict every trial must reach")
      ->check(CLI::IsMember({"EXACT", "AVERAGE_ONLY", "VIOLATED"}));
  fuzz->add_option("--out-dir", fuzz_out_dir, "directory for artifacts");
  fuzz_tol.add_to(fuzz);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) {
      RunConfig cfg = load_config(config_path);
      if (seed) cfg.seed = static_cast<std::uint64_t>(*seed);
      if (csv_path) cfg.output.csv = csv_path;
      run_tol.apply(cfg.tolerances);
      return finish(cfg, run_out_dir);
    }
    // fuzz: assemble the same JSON a config file would hold, so validation is shared.
    const auto [s0, s1] = parse_range(seeds, "seeds");
    const auto [d0, d1] = parse_range(dims, "dims");
    json doc = {{"scenario", "fuzz"},
                {"parameters",
                 {{"seeds", json::array({s0, s1})}, {"dims", json::array({d0, d1})},
                  {"family", family}}}};
    if (expected) doc["assert"] = *expected;
    RunConfig cfg = parse_config(doc);
    fuzz_tol.apply(cfg.tolerances);
    return finish(cfg, fuzz_out_dir);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const branchcons::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
