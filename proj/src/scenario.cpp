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

#include "lgsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "parallel.hpp"

namespace lgsim {

namespace {

void require_object(const Json& j, const std::string& field) {
  if (!j.is_object()) throw ConfigError(field, "expected an object");
}

void reject_unknown(const Json& j, const std::string& field,
                    std::initializer_list<const char*> known) {
  for (const auto& [key, _] : j.items()) {
    if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; })) {
      throw ConfigError(field.empty() ? key : field + "." + key, "unknown field");
    }
  }
}

std::string join(const std::string& field, const std::string& key) {
  return field.empty() ? key : field + "." + key;
}

const Json& required(const Json& j, const std::string& field, const char* key) {
  if (!j.contains(key)) throw ConfigError(join(field, key), "required field is missing");
  return j.at(key);
}

double get_number(const Json& j, const std::string& field) {
  if (!j.is_number()) throw ConfigError(field, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw ConfigError(field, "expected a finite number");
  return x;
}

std::uint64_t get_count(const Json& j, const std::string& field) {
  if (!j.is_number_unsigned()) throw ConfigError(field, "expected a nonnegative integer");
  return j.get<std::uint64_t>();
}

std::string get_string(const Json& j, const std::string& field) {
  if (!j.is_string()) throw ConfigError(field, "expected a string");
  return j.get<std::string>();
}

std::array<double, 3> get_triple(const Json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 3) throw ConfigError(field, "expected three numbers");
  return {get_number(j[0], field + "[0]"), get_number(j[1], field + "[1]"),
          get_number(j[2], field + "[2]")};
}

Json triple_json(const std::array<double, 3>& a) { return Json::array({a[0], a[1], a[2]}); }

// ---- system ----

HamiltonianSpec parse_hamiltonian(const Json& j, const std::string& f) {
  require_object(j, f);
  if (j.contains("spin_model")) {
    reject_unknown(j, f, {"spin_model"});
    const Json& s = j.at("spin_model");
    require_object(s, f + ".spin_model");
    reject_unknown(s, f + ".spin_model", {"omega"});
    const double omega = get_number(required(s, f + ".spin_model", "omega"), f + ".spin_model.omega");
    if (!(omega > 0.0)) throw ConfigError(f + ".spin_model.omega", "must be positive");
    return SpinHamiltonian{omega};
  }
  if (j.contains("pauli")) {
    reject_unknown(j, f, {"pauli"});
    return PauliTriple{get_triple(j.at("pauli"), f + ".pauli")};
  }
  if (j.contains("matrix")) {
    reject_unknown(j, f, {"matrix"});
    const Matrix m = matrix_from_json(j.at("matrix"), f + ".matrix");
    if (!Operator(m).is_hermitian()) throw ConfigError(f + ".matrix", "matrix is not hermitian");
    return ExplicitMatrix{m};
  }
  throw ConfigError(f, "expected one of spin_model, pauli, matrix");
}

ObservableSpec parse_observable(const Json& j, const std::string& f) {
  require_object(j, f);
  if (j.contains("direction")) {
    reject_unknown(j, f, {"direction"});
    const auto n = get_triple(j.at("direction"), f + ".direction");
    if (std::abs(std::hypot(n[0], n[1], n[2]) - 1.0) > 1e-12) {
      throw ConfigError(f + ".direction", "must be a unit vector");
    }
    return Direction{n};
  }
  if (j.contains("matrix")) {
    reject_unknown(j, f, {"matrix"});
    const Matrix m = matrix_from_json(j.at("matrix"), f + ".matrix");
    if (!Operator(m).is_dichotomic()) {
      throw ConfigError(f + ".matrix", "observable must be hermitian with Q^2 = I");
    }
    return ExplicitMatrix{m};
  }
  throw ConfigError(f, "expected one of direction, matrix");
}

StateSpec parse_state(const Json& j, const std::string& f) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (!is_named_qubit_state(name)) throw ConfigError(f, "unknown state name '" + name + "'");
    return NamedState{name};
  }
  require_object(j, f);
  reject_unknown(j, f, {"ket", "rho"});
  if (j.size() != 1) throw ConfigError(f, "expected exactly one of ket, rho");
  // Validate through QuantumState so bad normalization is a config error.
  const QuantumState s = state_from_json(j, f);
  if (j.contains("ket")) return ExplicitKet{s.ket()};
  return ExplicitDensity{s.density()};
}

std::size_t spec_dim(const HamiltonianSpec& h) {
  if (const auto* m = std::get_if<ExplicitMatrix>(&h)) return static_cast<std::size_t>(m->m.rows());
  return 2;
}
std::size_t spec_dim(const ObservableSpec& q) {
  if (const auto* m = std::get_if<ExplicitMatrix>(&q)) return static_cast<std::size_t>(m->m.rows());
  return 2;
}
std::size_t spec_dim(const StateSpec& s) {
  if (const auto* k = std::get_if<ExplicitKet>(&s)) return static_cast<std::size_t>(k->ket.size());
  if (const auto* r = std::get_if<ExplicitDensity>(&s)) return static_cast<std::size_t>(r->rho.rows());
  return 2;
}

SystemSpec parse_system(const Json& j) {
  const std::string f = "system";
  require_object(j, f);
  reject_unknown(j, f, {"dimension", "hamiltonian", "observable", "initial_state"});
  SystemSpec s;
  s.dimension = get_count(required(j, f, "dimension"), "system.dimension");
  if (s.dimension == 0) throw ConfigError("system.dimension", "must be positive");
  s.hamiltonian = parse_hamiltonian(required(j, f, "hamiltonian"), "system.hamiltonian");
  s.observable = j.contains("observable") ? parse_observable(j.at("observable"), "system.observable")
                                          : ObservableSpec{Direction{}};
  s.initial_state = parse_state(required(j, f, "initial_state"), "system.initial_state");
  const auto check = [&](std::size_t d, const char* field) {
    if (d != s.dimension) {
      throw ConfigError(field, "dimension " + std::to_string(d) + " does not match system.dimension " +
                                   std::to_string(s.dimension));
    }
  };
  check(spec_dim(s.hamiltonian), "system.hamiltonian");
  check(spec_dim(s.observable), "system.observable");
  check(spec_dim(s.initial_state), "system.initial_state");
  return s;
}

Json system_json(const SystemSpec& s) {
  Json h;
  if (const auto* sp = std::get_if<SpinHamiltonian>(&s.hamiltonian)) {
    h = {{"spin_model", {{"omega", sp->omega}}}};
  } else if (const auto* p = std::get_if<PauliTriple>(&s.hamiltonian)) {
    h = {{"pauli", triple_json(p->c)}};
  } else {
    h = {{"matrix", matrix_to_json(std::get<ExplicitMatrix>(s.hamiltonian).m)}};
  }
  Json q;
  if (const auto* d = std::get_if<Direction>(&s.observable)) {
    q = {{"direction", triple_json(d->n)}};
  } else {
    q = {{"matrix", matrix_to_json(std::get<ExplicitMatrix>(s.observable).m)}};
  }
  Json st;
  if (const auto* n = std::get_if<NamedState>(&s.initial_state)) {
    st = n->name;
  } else if (const auto* k = std::get_if<ExplicitKet>(&s.initial_state)) {
    st = {{"ket", ket_to_json(k->ket)}};
  } else {
    st = {{"rho", matrix_to_json(std::get<ExplicitDensity>(s.initial_state).rho)}};
  }
  return {{"dimension", s.dimension}, {"hamiltonian", h}, {"observable", q}, {"initial_state", st}};
}

// ---- times ----

TimesSpec parse_times(const Json& j) {
  const std::string f = "times";
  require_object(j, f);
  reject_unknown(j, f, {"units", "t1", "t2", "t3", "tau_grid", "tau_range"});
  TimesSpec t;
  if (j.contains("units")) {
    const std::string u = get_string(j.at("units"), "times.units");
    if (u == "omega_t") {
      t.units = TimeUnits::OmegaT;
    } else if (u == "absolute") {
      t.units = TimeUnits::Absolute;
    } else {
      throw ConfigError("times.units", "expected \"omega_t\" or \"absolute\"");
    }
  }
  if (j.contains("t1")) t.t1 = get_number(j.at("t1"), "times.t1");
  const int forms = (j.contains("t2") || j.contains("t3") ? 1 : 0) +
                    (j.contains("tau_grid") ? 1 : 0) + (j.contains("tau_range") ? 1 : 0);
  if (forms != 1) throw ConfigError("times", "expected exactly one of (t2, t3), tau_grid, tau_range");
  if (j.contains("t2") || j.contains("t3")) {
    const double t2 = get_number(required(j, f, "t2"), "times.t2");
    const double t3 = get_number(required(j, f, "t3"), "times.t3");
    if (!(t.t1 <= t2 && t2 <= t3)) throw ConfigError("times", "requires t1 <= t2 <= t3");
    t.t2_t3 = std::array<double, 2>{t2, t3};
  } else if (j.contains("tau_grid")) {
    const Json& g = j.at("tau_grid");
    if (!g.is_array() || g.empty()) throw ConfigError("times.tau_grid", "expected a nonempty array");
    for (std::size_t i = 0; i < g.size(); ++i) {
      const std::string fi = "times.tau_grid[" + std::to_string(i) + "]";
      const double tau = get_number(g[i], fi);
      if (tau < 0.0) throw ConfigError(fi, "tau must be nonnegative");
      if (!t.tau_grid.empty() && !(tau > t.tau_grid.back())) {
        throw ConfigError(fi, "grid must be strictly increasing");
      }
      t.tau_grid.push_back(tau);
    }
  } else {
    const Json& r = j.at("tau_range");
    require_object(r, "times.tau_range");
    reject_unknown(r, "times.tau_range", {"start", "stop", "count"});
    TauRange range;
    range.start = get_number(required(r, "times.tau_range", "start"), "times.tau_range.start");
    range.stop = get_number(required(r, "times.tau_range", "stop"), "times.tau_range.stop");
    range.count = get_count(required(r, "times.tau_range", "count"), "times.tau_range.count");
    if (range.start < 0.0) throw ConfigError("times.tau_range.start", "must be nonnegative");
    if (!(range.stop > range.start)) throw ConfigError("times.tau_range.stop", "must exceed start");
    if (range.count < 2) throw ConfigError("times.tau_range.count", "must be at least 2");
    t.tau_range = range;
  }
  return t;
}

Json times_json(const TimesSpec& t) {
  Json j = {{"units", t.units == TimeUnits::OmegaT ? "omega_t" : "absolute"}, {"t1", t.t1}};
  if (t.t2_t3) {
    j["t2"] = (*t.t2_t3)[0];
    j["t3"] = (*t.t2_t3)[1];
  } else if (t.tau_range) {
    j["tau_range"] = {{"start", t.tau_range->start},
                      {"stop", t.tau_range->stop},
                      {"count", t.tau_range->count}};
  } else {
    j["tau_grid"] = t.tau_grid;
  }
  return j;
}

// ---- protocol ----

HiddenModel parse_model(const Json& j, const std::string& f) {
  require_object(j, f);
  reject_unknown(j, f, {"dynamics", "omega", "rate", "kick", "p_plus"});
  HiddenModel m;
  const std::string dyn = get_string(required(j, f, "dynamics"), f + ".dynamics");
  if (dyn == "square_wave") {
    if (j.contains("rate")) throw ConfigError(f + ".rate", "not used by square_wave");
    m.dynamics = SquareWave{j.contains("omega") ? get_number(j.at("omega"), f + ".omega") : 1.0};
  } else if (dyn == "telegraph") {
    if (j.contains("omega")) throw ConfigError(f + ".omega", "not used by telegraph");
    m.dynamics = Telegraph{get_number(required(j, f, "rate"), f + ".rate")};
  } else {
    throw ConfigError(f + ".dynamics", "expected \"square_wave\" or \"telegraph\"");
  }
  if (j.contains("kick")) {
    const Json& k = j.at("kick");
    require_object(k, f + ".kick");
    reject_unknown(k, f + ".kick", {"sign", "strength"});
    if (k.contains("sign")) {
      const Json& s = k.at("sign");
      if (!s.is_number_integer() || (s.get<int>() != 1 && s.get<int>() != -1)) {
        throw ConfigError(f + ".kick.sign", "expected +1 or -1");
      }
      m.kick.coupling = sign_from_int(s.get<int>());
    }
    if (k.contains("strength")) m.kick.strength = get_number(k.at("strength"), f + ".kick.strength");
  }
  if (j.contains("p_plus")) m.p_plus = get_number(j.at("p_plus"), f + ".p_plus");
  try {
    m.validate();
  } catch (const InvalidInput& e) {
    throw ConfigError(f, e.what());
  }
  return m;
}

Json model_json(const HiddenModel& m) {
  Json j;
  if (const auto* w = std::get_if<SquareWave>(&m.dynamics)) {
    j = {{"dynamics", "square_wave"}, {"omega", w->omega}};
  } else {
    j = {{"dynamics", "telegraph"}, {"rate", std::get<Telegraph>(m.dynamics).rate}};
  }
  j["kick"] = {{"sign", static_cast<int>(m.kick.coupling)}, {"strength", m.kick.strength}};
  j["p_plus"] = m.p_plus;
  return j;
}

ProtocolSpec parse_protocol(const Json& j) {
  const std::string f = "protocol";
  ProtocolSpec p;
  if (j.is_string()) {
    try {
      p.quantum.kind = protocol_from_string(j.get<std::string>());
    } catch (const InvalidInput& e) {
      throw ConfigError(f, e.what());
    }
    if (p.quantum.kind == ProtocolKind::AncillaGeneral || p.quantum.kind == ProtocolKind::Classical) {
      throw ConfigError(f, to_string(p.quantum.kind) + " needs parameters; use the object form");
    }
    return p;
  }
  require_object(j, f);
  reject_unknown(j, f, {"kind", "alpha", "beta", "model"});
  try {
    p.quantum.kind = protocol_from_string(get_string(required(j, f, "kind"), "protocol.kind"));
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidInput& e) {
    throw ConfigError("protocol.kind", e.what());
  }
  const bool general = p.quantum.kind == ProtocolKind::AncillaGeneral;
  const bool classical = p.quantum.kind == ProtocolKind::Classical;
  if (!general && (j.contains("alpha") || j.contains("beta"))) {
    throw ConfigError("protocol", "alpha and beta apply only to ancilla_general");
  }
  if (!classical && j.contains("model")) {
    throw ConfigError("protocol.model", "applies only to the classical protocol");
  }
  if (general) {
    p.quantum.alpha = complex_from_json(required(j, f, "alpha"), "protocol.alpha");
    p.quantum.beta = complex_from_json(required(j, f, "beta"), "protocol.beta");
    try {
      validate_ancilla_amplitudes(p.quantum.alpha, p.quantum.beta);
    } catch (const InvalidInput& e) {
      throw ConfigError("protocol", e.what());
    }
  }
  if (classical) p.classical = parse_model(required(j, f, "model"), "protocol.model");
  return p;
}

Json protocol_json(const ProtocolSpec& p) {
  Json j = {{"kind", to_string(p.quantum.kind)}};
  if (p.quantum.kind == ProtocolKind::AncillaGeneral) {
    j["alpha"] = complex_to_json(p.quantum.alpha);
    j["beta"] = complex_to_json(p.quantum.beta);
  }
  if (p.classical) j["model"] = model_json(*p.classical);
  return j;
}

double hamiltonian_frequency(const HamiltonianSpec& h) {
  if (const auto* s = std::get_if<SpinHamiltonian>(&h)) return s->omega;
  if (const auto* p = std::get_if<PauliTriple>(&h)) {
    return 2.0 * std::hypot(p->c[0], p->c[1], p->c[2]);
  }
  return 0.0;
}

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

Json tau_or_null(double tau) { return std::isnan(tau) ? Json(nullptr) : Json(tau); }

Json extremum_json(const ScanExtremum& e) {
  return {{"max_violation", e.violation}, {"argmax_tau", tau_or_null(e.tau)}};
}

}  // namespace

std::vector<double> TimesSpec::taus() const {
  if (t2_t3) return {(*t2_t3)[0] - t1};
  if (tau_range) {
    std::vector<double> g(tau_range->count);
    const double step = (tau_range->stop - tau_range->start) / static_cast<double>(tau_range->count - 1);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = tau_range->start + static_cast<double>(i) * step;
    g.back() = tau_range->stop;
    return g;
  }
  return tau_grid;
}

std::string to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::Csv:
      return "csv";
    case OutputFormat::Json:
      return "json";
    case OutputFormat::Both:
      return "both";
  }
  return "csv";
}

OutputFormat output_format_from_string(const std::string& s) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  if (s == "both") return OutputFormat::Both;
  throw InvalidInput("unknown output format '" + s + "' (expected csv, json or both)");
}

ScenarioConfig parse_config(const Json& j) {
  require_object(j, "config");
  reject_unknown(j, "", {"system", "times", "protocol", "monte_carlo", "output"});
  ScenarioConfig c;
  c.protocol = parse_protocol(required(j, "", "protocol"));
  const bool classical = c.protocol.classical.has_value();
  if (j.contains("system")) {
    c.system = parse_system(j.at("system"));
  } else if (!classical) {
    throw ConfigError("system", "required field is missing");
  }
  c.times = parse_times(required(j, "", "times"));
  if (j.contains("monte_carlo")) {
    const Json& mc = j.at("monte_carlo");
    require_object(mc, "monte_carlo");
    reject_unknown(mc, "monte_carlo", {"runs", "seed"});
    if (mc.contains("runs")) c.monte_carlo.runs = get_count(mc.at("runs"), "monte_carlo.runs");
    if (mc.contains("seed")) c.monte_carlo.seed = get_count(mc.at("seed"), "monte_carlo.seed");
    if (c.monte_carlo.runs < 2) throw ConfigError("monte_carlo.runs", "must be at least 2");
  }
  if (j.contains("output")) {
    const Json& o = j.at("output");
    require_object(o, "output");
    reject_unknown(o, "output", {"path", "format", "stem"});
    if (o.contains("path")) c.output.path = get_string(o.at("path"), "output.path");
    if (o.contains("format")) {
      try {
        c.output.format = output_format_from_string(get_string(o.at("format"), "output.format"));
      } catch (const ConfigError&) {
        throw;
      } catch (const InvalidInput& e) {
        throw ConfigError("output.format", e.what());
      }
    }
    if (o.contains("stem")) {
      c.output.stem = get_string(o.at("stem"), "output.stem");
      if (c.output.stem.empty() || c.output.stem.find('/') != std::string::npos) {
        throw ConfigError("output.stem", "must be a nonempty file name without '/'");
      }
    }
  }

  if (classical) {
    for (double tau : c.times.taus()) {
      if (!(tau > 0.0)) throw ConfigError("times", "the classical protocol needs tau > 0");
    }
    if (c.times.t2_t3 && !((*c.times.t2_t3)[1] > (*c.times.t2_t3)[0])) {
      throw ConfigError("times", "the classical protocol needs t1 < t2 < t3");
    }
  }
  if (c.times.units == TimeUnits::OmegaT) {
    try {
      time_scale(c);
    } catch (const InvalidInput& e) {
      throw ConfigError("times.units", e.what());
    }
  }
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path.string());
  Json j;
  try {
    j = Json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const Json::parse_error& e) {
    throw ConfigError("config", std::string("invalid JSON: ") + e.what());
  }
  return parse_config(j);
}

Json serialize_config(const ScenarioConfig& c) {
  Json j = Json::object();
  if (c.system) j["system"] = system_json(*c.system);
  j["times"] = times_json(c.times);
  j["protocol"] = protocol_json(c.protocol);
  j["monte_carlo"] = {{"runs", c.monte_carlo.runs}, {"seed", c.monte_carlo.seed}};
  j["output"] = {{"path", c.output.path},
                 {"format", to_string(c.output.format)},
                 {"stem", c.output.stem}};
  return j;
}

QuantumSystem build_system(const SystemSpec& spec) {
  Operator h = std::visit(
      [](const auto& s) -> Operator {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SpinHamiltonian>) {
          return SpinModel(s.omega).hamiltonian();
        } else if constexpr (std::is_same_v<T, PauliTriple>) {
          return pauli_operator(s.c[0], s.c[1], s.c[2]);
        } else {
          return Operator::hermitian(s.m);
        }
      },
      spec.hamiltonian);
  Operator q = std::visit(
      [](const auto& s) -> Operator {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Direction>) {
          return pauli_operator(s.n[0], s.n[1], s.n[2]);
        } else {
          return Operator::hermitian(s.m);
        }
      },
      spec.observable);
  QuantumState state = std::visit(
      [](const auto& s) -> QuantumState {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, NamedState>) {
          return named_qubit_state(s.name);
        } else if constexpr (std::is_same_v<T, ExplicitKet>) {
          return QuantumState::from_ket(s.ket);
        } else {
          return QuantumState::from_density(s.rho);
        }
      },
      spec.initial_state);
  return {std::move(q), std::move(h), std::move(state)};
}

double time_scale(const ScenarioConfig& c) {
  if (c.times.units == TimeUnits::Absolute) return 1.0;
  double omega = 0.0;
  if (c.protocol.classical) {
    const auto* w = std::get_if<SquareWave>(&c.protocol.classical->dynamics);
    if (w == nullptr) throw InvalidInput("omega_t units need a square_wave model; use absolute");
    omega = std::abs(w->omega);
  } else if (c.system) {
    omega = hamiltonian_frequency(c.system->hamiltonian);
    if (omega == 0.0) {
      throw InvalidInput("omega_t units need a spin_model or pauli hamiltonian; use absolute");
    }
  }
  if (!(omega > 0.0)) throw InvalidInput("omega_t units need a nonzero frequency");
  return 1.0 / omega;
}

ScenarioResult run_scenario(const ScenarioConfig& c, const RunOptions& options) {
  const double scale = time_scale(c);
  const std::vector<double> taus = c.times.taus();
  const double t1 = c.times.t1 * scale;
  ScenarioResult out;
  out.rows.resize(taus.size());

  if (c.protocol.classical) {
    const HiddenModel& model = *c.protocol.classical;
    detail::parallel_for(taus.size(), options.threads, [&](std::size_t i) {
      McOptions mc;
      mc.n_runs = c.monte_carlo.runs;
      mc.seed = c.monte_carlo.seed;
      mc.stream = 4 * static_cast<std::uint64_t>(i);
      const double t2 = c.times.t2_t3 ? (*c.times.t2_t3)[0] * scale : t1 + taus[i] * scale;
      const double t3 = c.times.t2_t3 ? (*c.times.t2_t3)[1] * scale : t1 + 2.0 * taus[i] * scale;
      const EmpiricalLgReport e = lg_suite(model, t1, t2, t3, mc);
      ScenarioRow& row = out.rows[i];
      row.report = e.report;
      row.report.tau = taus[i];
      row.errors = ClassicalErrors{e.c12.std_error, e.c23.std_error,     e.c13.std_error,
                                   e.delta0_stderr, e.standard_stderr, e.modified_stderr};
    });
    return out;
  }

  if (!c.system) throw InvalidInput("quantum protocols need a system section");
  const QuantumSystem sys = build_system(*c.system);
  if (c.times.t2_t3) {
    const LgScenario s{sys.q,
                       sys.h,
                       sys.state,
                       t1,
                       (*c.times.t2_t3)[0] * scale,
                       (*c.times.t2_t3)[1] * scale,
                       {c.protocol.quantum, c.protocol.quantum, c.protocol.quantum}};
    out.rows[0].report = evaluate_lg(s);
    out.rows[0].report.tau = taus[0];
    return out;
  }
  std::vector<double> absolute(taus.size());
  std::transform(taus.begin(), taus.end(), absolute.begin(), [&](double t) { return t * scale; });
  ScanResult scan =
      violation_scan(sys.q, sys.h, sys.state, c.protocol.quantum, absolute, {t1, options.threads});
  for (std::size_t i = 0; i < taus.size(); ++i) {
    out.rows[i].report = std::move(scan.reports[i]);
    out.rows[i].report.tau = taus[i];
  }
  return out;
}

Json summarize(const ScenarioConfig& c, const ScenarioResult& r) {
  std::vector<LgReport> reports;
  reports.reserve(r.rows.size());
  for (const ScenarioRow& row : r.rows) reports.push_back(row.report);
  const ScanResult scan = summarize_scan(reports);

  ScanExtremum modified;
  double d_min = kNaN, d_max = kNaN, d_sum = 0.0;
  std::size_t d_count = 0;
  Json flagged = Json::array();
  for (const LgReport& rep : reports) {
    const double v = rep.modified_violation();
    if (v > modified.violation) modified = {v, rep.tau};
    if (rep.flagged()) flagged.push_back({{"tau", rep.tau}, {"flag", rep.flag}});
    if (std::isnan(rep.delta0)) continue;
    d_min = d_count == 0 ? rep.delta0 : std::min(d_min, rep.delta0);
    d_max = d_count == 0 ? rep.delta0 : std::max(d_max, rep.delta0);
    d_sum += rep.delta0;
    ++d_count;
  }
  Json j = {{"protocol", to_string(c.protocol.quantum.kind)},
            {"units", c.times.units == TimeUnits::OmegaT ? "omega_t" : "absolute"},
            {"rows", r.rows.size()},
            {"max_violation", scan.overall.violation},
            {"argmax_tau", tau_or_null(scan.overall.tau)},
            {"lower", extremum_json(scan.lower)},
            {"upper", extremum_json(scan.upper)},
            {"modified", extremum_json(modified)},
            {"delta0",
             {{"min", tau_or_null(d_min)},
              {"max", tau_or_null(d_max)},
              {"mean", d_count ? Json(d_sum / static_cast<double>(d_count)) : Json(nullptr)}}},
            {"flagged_rows", std::move(flagged)}};
  if (c.protocol.classical) {
    j["monte_carlo"] = {{"runs", c.monte_carlo.runs}, {"seed", c.monte_carlo.seed}};
  }
  return j;
}

std::string to_csv(const ScenarioResult& r) {
  const bool classical = !r.rows.empty() && r.rows.front().errors.has_value();
  std::ostringstream os;
  os << "tau,C12,C23,C13,delta0,lower_margin,upper_margin,mod_lower_margin,mod_upper_margin";
  if (classical) {
    os << ",C12_stderr,C23_stderr,C13_stderr,delta0_stderr,lower_margin_stderr,"
          "upper_margin_stderr,mod_lower_margin_stderr,mod_upper_margin_stderr";
  }
  os << ",flag\n";
  for (const ScenarioRow& row : r.rows) {
    const LgReport& p = row.report;
    os << fmt(p.tau) << ',' << fmt(p.c12) << ',' << fmt(p.c23) << ',' << fmt(p.c13) << ','
       << fmt(p.delta0) << ',' << fmt(p.standard.lower) << ',' << fmt(p.standard.upper) << ','
       << fmt(p.modified.lower) << ',' << fmt(p.modified.upper);
    if (classical) {
      const ClassicalErrors& e = *row.errors;
      os << ',' << fmt(e.c12) << ',' << fmt(e.c23) << ',' << fmt(e.c13) << ',' << fmt(e.delta0)
         << ',' << fmt(e.standard.lower) << ',' << fmt(e.standard.upper) << ','
         << fmt(e.modified.lower) << ',' << fmt(e.modified.upper);
    }
    os << ',' << csv_quote(p.flag) << '\n';
  }
  return os.str();
}

Json to_json(const ScenarioConfig& c, const ScenarioResult& r) {
  Json rows = Json::array();
  for (const ScenarioRow& row : r.rows) {
    Json j = report_to_json(row.report);
    if (row.errors) {
      const ClassicalErrors& e = *row.errors;
      j["stderr"] = {{"C12", e.c12},
                     {"C23", e.c23},
                     {"C13", e.c13},
                     {"delta0", e.delta0},
                     {"standard", {{"lower", e.standard.lower}, {"upper", e.standard.upper}}},
                     {"modified", {{"lower", e.modified.lower}, {"upper", e.modified.upper}}}};
    }
    rows.push_back(std::move(j));
  }
  return {{"config", serialize_config(c)}, {"rows", std::move(rows)}};
}

std::vector<std::filesystem::path> write_outputs(const ScenarioConfig& c, const ScenarioResult& r,
                                                 const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  const auto write = [&](const std::string& name, const std::string& content) {
    const std::filesystem::path p = dir / name;
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << content;
    if (!out) throw std::runtime_error("failed writing " + p.string());
    written.push_back(p);
  };
  const OutputFormat f = c.output.format;
  if (f == OutputFormat::Csv || f == OutputFormat::Both) write(c.output.stem + ".csv", to_csv(r));
  if (f == OutputFormat::Json || f == OutputFormat::Both) {
    write(c.output.stem + ".json", to_json(c, r).dump(2) + "\n");
  }
  write(c.output.stem + "_summary.json", summarize(c, r).dump(2) + "\n");
  return written;
}

}  // namespace lgsim
