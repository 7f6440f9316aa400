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

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lgsim/json_io.hpp"
#include "lgsim/lg.hpp"
#include "lgsim/macroreal.hpp"

namespace lgsim {

// ---- configuration ---------------------------------------------------------

struct SpinHamiltonian {
  double omega = 1.0;
};
struct PauliTriple {
  std::array<double, 3> c{};
};
struct ExplicitMatrix {
  Matrix m;
};
using HamiltonianSpec = std::variant<SpinHamiltonian, PauliTriple, ExplicitMatrix>;

struct Direction {
  std::array<double, 3> n{0.0, 0.0, 1.0};
};
using ObservableSpec = std::variant<Direction, ExplicitMatrix>;

struct NamedState {
  std::string name;
};
struct ExplicitKet {
  Ket ket;
};
struct ExplicitDensity {
  Matrix rho;
};
using StateSpec = std::variant<NamedState, ExplicitKet, ExplicitDensity>;

struct SystemSpec {
  std::size_t dimension = 2;
  HamiltonianSpec hamiltonian = SpinHamiltonian{};
  ObservableSpec observable = Direction{};
  StateSpec initial_state = NamedState{"up_z"};
};

enum class TimeUnits { OmegaT, Absolute };

struct TauRange {
  double start = 0.0;
  double stop = 0.0;
  std::size_t count = 2;  // inclusive of both ends
};

/// Exactly one of: explicit (t2, t3), tau_grid, tau_range. Equal spacing
/// t2 - t1 = t3 - t2 = tau for the grid forms.
struct TimesSpec {
  TimeUnits units = TimeUnits::OmegaT;
  double t1 = 0.0;
  std::optional<std::array<double, 2>> t2_t3;
  std::vector<double> tau_grid;
  std::optional<TauRange> tau_range;

  /// The grid of tau values in the configured units. For explicit times this
  /// is the single value t2 - t1.
  std::vector<double> taus() const;
};

struct ProtocolSpec {
  ProtocolChoice quantum;
  std::optional<HiddenModel> classical;  // set iff quantum.kind == Classical
};

struct MonteCarloSpec {
  std::uint64_t runs = 100000;
  std::uint64_t seed = 1;
};

enum class OutputFormat { Csv, Json, Both };

std::string to_string(OutputFormat f);
OutputFormat output_format_from_string(const std::string& s);

struct OutputSpec {
  std::string path = ".";
  OutputFormat format = OutputFormat::Csv;
  std::string stem = "lgsim";
};

struct ScenarioConfig {
  std::optional<SystemSpec> system;  // required for quantum protocols
  TimesSpec times;
  ProtocolSpec protocol;
  MonteCarloSpec monte_carlo;
  OutputSpec output;
};

/// Throws ConfigError naming the offending field.
ScenarioConfig parse_config(const Json& j);
ScenarioConfig load_config(const std::filesystem::path& path);
/// Canonical form; parse_config(serialize_config(c)) reproduces c.
Json serialize_config(const ScenarioConfig& c);

/// Materialized quantum system.
struct QuantumSystem {
  Operator q;
  Operator h;
  QuantumState state;
};
QuantumSystem build_system(const SystemSpec& spec);

/// Factor converting configured time values to absolute time.
double time_scale(const ScenarioConfig& c);

// ---- running ---------------------------------------------------------------

struct ClassicalErrors {
  double c12 = 0.0;
  double c23 = 0.0;
  double c13 = 0.0;
  double delta0 = 0.0;
  LgMargins standard;
  LgMargins modified;
};

struct ScenarioRow {
  LgReport report;  // report.tau is in the configured units
  std::optional<ClassicalErrors> errors;
};

struct RunOptions {
  unsigned threads = 1;
};

struct ScenarioResult {
  std::vector<ScenarioRow> rows;  // ordered as the tau grid
};

ScenarioResult run_scenario(const ScenarioConfig& c, const RunOptions& options = {});

/// {max_violation, argmax_tau, lower, upper, modified, delta0, flagged_rows, ...}.
Json summarize(const ScenarioConfig& c, const ScenarioResult& r);

/// One row per tau; floats with 12 significant digits. Classical runs add
/// *_stderr columns. A trailing flag column carries inapplicability notes.
std::string to_csv(const ScenarioResult& r);

/// Full per-row records including pair protocol records.
Json to_json(const ScenarioConfig& c, const ScenarioResult& r);

/// Writes <stem>.csv and/or <stem>.json plus <stem>_summary.json into dir.
/// Returns the written paths.
std::vector<std::filesystem::path> write_outputs(const ScenarioConfig& c, const ScenarioResult& r,
                                                 const std::filesystem::path& dir);

}  // namespace lgsim
