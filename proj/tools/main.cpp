// Copyright 2026 The lgsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// lgsim run <config.json> [--out DIR] [--seed N] [--format csv|json|both] [--threads N]
// lgsim inspect <config.json>
//
// Exit status: 0 ok, 1 configuration error, 2 runtime error.

#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "lgsim/histories.hpp"
#include "lgsim/scenario.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kRuntimeError = 2;

struct RunArgs {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::string format;
  unsigned threads = 1;
};

int do_run(const RunArgs& args) {
  lgsim::ScenarioConfig config;
  try {
    config = lgsim::load_config(args.config);
    if (args.seed) config.monte_carlo.seed = *args.seed;
    if (!args.format.empty()) config.output.format = lgsim::output_format_from_string(args.format);
    if (!args.out.empty()) config.output.path = args.out;
  } catch (const std::exception& e) {
    std::cerr << "lgsim: config error: " << e.what() << "\n";
    return kConfigError;
  }
  try {
    const lgsim::ScenarioResult result = lgsim::run_scenario(config, {args.threads});
    for (const auto& p : lgsim::write_outputs(config, result, config.output.path)) {
      std::cout << p.string() << "\n";
    }
    for (const auto& row : result.rows) {
      if (row.report.flagged()) {
        std::cerr << "lgsim: tau=" << row.report.tau << " flagged: " << row.report.flag << "\n";
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "lgsim: runtime error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kOk;
}

int do_inspect(const std::string& path) {
  lgsim::ScenarioConfig config;
  double scale = 1.0;
  try {
    config = lgsim::load_config(path);
    if (!config.system) throw lgsim::ConfigError("system", "inspect needs a quantum system");
    scale = lgsim::time_scale(config);
  } catch (const std::exception& e) {
    std::cerr << "lgsim: config error: " << e.what() << "\n";
    return kConfigError;
  }
  try {
    const lgsim::QuantumSystem sys = lgsim::build_system(*config.system);
    const double t1 = config.times.t1 * scale;
    const double t2 = t1 + config.times.taus().front() * scale;
    const lgsim::TwoTimeFrame frame = lgsim::build_frame(sys.q, sys.h, t1, t2);
    lgsim::Json out = {{"t1", t1}, {"t2", t2}, {"frame", lgsim::frame_summary_json(frame, sys.state)}};
    if (sys.state.is_pure()) {
      const auto grid = lgsim::ProjectiveGrid::dichotomic(sys.q, {t1, t2});
      out["decoherence_functional"] =
          lgsim::decoherence_functional_json(lgsim::build_histories(grid, sys.h, sys.state));
    }
    std::cout << out.dump(2) << "\n";
  } catch (const std::exception& e) {
    std::cerr << "lgsim: runtime error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-time correlators and Leggett-Garg scans for dichotomic observables"};
  app.require_subcommand(1);

  RunArgs run;
  CLI::App* run_cmd = app.add_subcommand("run", "Run a scenario config and write reports");
  run_cmd->add_option("config", run.config, "Scenario JSON file")->required();
  run_cmd->add_option("--out", run.out, "Output directory (overrides output.path)");
  run_cmd->add_option("--seed", run.seed, "Monte Carlo seed (overrides monte_carlo.seed)");
  run_cmd->add_option("--format", run.format, "csv, json or both")
      ->check(CLI::IsMember({"csv", "json", "both"}));
  run_cmd->add_option("--threads", run.threads, "Worker threads")->check(CLI::PositiveNumber);

  std::string inspect_config;
  CLI::App* inspect_cmd =
      app.add_subcommand("inspect", "Print the two-time frame and decoherence functional");
  inspect_cmd->add_option("config", inspect_config, "Scenario JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  if (*run_cmd) return do_run(run);
  return do_inspect(inspect_config);
}
