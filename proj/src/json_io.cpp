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

#include "lgsim/json_io.hpp"

#include <cmath>

namespace lgsim {

ConfigError::ConfigError(std::string field, const std::string& message)
    : InvalidInput(field + ": " + message), field_(std::move(field)) {}

namespace {

double number_at(const Json& j, const std::string& field) {
  if (!j.is_number()) throw ConfigError(field, "expected a number");
  return j.get<double>();
}

std::size_t dimension_at(const Json& j, const std::string& field) {
  if (!j.is_object() || !j.contains("dimension")) {
    throw ConfigError(field, "expected an object with \"dimension\" and \"data\"");
  }
  const Json& d = j.at("dimension");
  if (!d.is_number_integer() || d.get<std::int64_t>() <= 0) {
    throw ConfigError(field + ".dimension", "expected a positive integer");
  }
  if (!j.contains("data") || !j.at("data").is_array()) {
    throw ConfigError(field + ".data", "expected an array of [re, im] pairs");
  }
  return d.get<std::size_t>();
}

// JSON has no NaN; undefined values become null.
Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json named_values(const NamedValues& v) {
  Json out = Json::object();
  for (const auto& [name, x] : v) out[name] = finite_or_null(x);
  return out;
}

Json margins_json(const LgMargins& m) {
  return {{"lower", finite_or_null(m.lower)}, {"upper", finite_or_null(m.upper)}};
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, const std::string& field) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ConfigError(field, "expected a number or an [re, im] pair");
}

Json matrix_to_json(const Matrix& m) {
  Json data = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(complex_to_json(m(r, c)));
  }
  return {{"dimension", static_cast<std::size_t>(m.rows())}, {"data", std::move(data)}};
}

Matrix matrix_from_json(const Json& j, const std::string& field) {
  const std::size_t d = dimension_at(j, field);
  const Json& data = j.at("data");
  if (data.size() != d * d) {
    throw ConfigError(field + ".data", "expected " + std::to_string(d * d) + " entries, got " +
                                           std::to_string(data.size()));
  }
  const auto n = static_cast<Eigen::Index>(d);
  Matrix m(n, n);
  for (Eigen::Index k = 0; k < n * n; ++k) {
    m(k / n, k % n) = complex_from_json(data[static_cast<std::size_t>(k)],
                                        field + ".data[" + std::to_string(k) + "]");
  }
  return m;
}

Json ket_to_json(const Ket& k) {
  Json data = Json::array();
  for (Eigen::Index i = 0; i < k.size(); ++i) data.push_back(complex_to_json(k(i)));
  return {{"dimension", static_cast<std::size_t>(k.size())}, {"data", std::move(data)}};
}

Ket ket_from_json(const Json& j, const std::string& field) {
  const std::size_t d = dimension_at(j, field);
  const Json& data = j.at("data");
  if (data.size() != d) {
    throw ConfigError(field + ".data", "expected " + std::to_string(d) + " amplitudes, got " +
                                           std::to_string(data.size()));
  }
  Ket k(static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i) {
    k(static_cast<Eigen::Index>(i)) =
        complex_from_json(data[i], field + ".data[" + std::to_string(i) + "]");
  }
  return k;
}

Json operator_to_json(const Operator& op) { return matrix_to_json(op.matrix()); }

Operator hermitian_from_json(const Json& j, const std::string& field) {
  if (j.is_object() && j.contains("pauli")) {
    const Json& p = j.at("pauli");
    if (!p.is_array() || p.size() != 3) {
      throw ConfigError(field + ".pauli", "expected [cx, cy, cz]");
    }
    return pauli_operator(number_at(p[0], field + ".pauli[0]"),
                          number_at(p[1], field + ".pauli[1]"),
                          number_at(p[2], field + ".pauli[2]"));
  }
  try {
    return Operator::hermitian(matrix_from_json(j, field));
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidInput& e) {
    throw ConfigError(field, e.what());
  }
}

Json state_to_json(const QuantumState& s) {
  if (s.is_pure()) return {{"ket", ket_to_json(s.ket())}};
  return {{"rho", matrix_to_json(s.density())}};
}

QuantumState state_from_json(const Json& j, const std::string& field) {
  try {
    if (j.is_string()) {
      const std::string name = j.get<std::string>();
      if (!is_named_qubit_state(name)) throw ConfigError(field, "unknown state name '" + name + "'");
      return named_qubit_state(name);
    }
    if (j.is_object() && j.contains("ket")) {
      return QuantumState::from_ket(ket_from_json(j.at("ket"), field + ".ket"));
    }
    if (j.is_object() && j.contains("rho")) {
      return QuantumState::from_density(matrix_from_json(j.at("rho"), field + ".rho"));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidInput& e) {
    throw ConfigError(field, e.what());
  }
  throw ConfigError(field, "expected a state name, {\"ket\": ...} or {\"rho\": ...}");
}

Json frame_summary_json(const TwoTimeFrame& frame, const QuantumState& state) {
  const auto [p_same, p_diff] = same_diff_probabilities(frame, state);
  const IdentityResiduals r = frame.residuals();
  return {{"C12", correlator_expectation(frame, state)},
          {"D_expectation", interference_expectation(frame, state)},
          {"p_same", p_same},
          {"p_diff", p_diff},
          {"identity_residuals",
           {{"q1_c_commutator", r.q1_c_commutator},
            {"q2_c_commutator", r.q2_c_commutator},
            {"q1_d_anticommutator", r.q1_d_anticommutator},
            {"q2_d_anticommutator", r.q2_d_anticommutator},
            {"c_d_commutator", r.c_d_commutator},
            {"squares", r.squares},
            {"max", r.max()}}}};
}

Json decoherence_functional_json(const HistorySet& hs) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < hs.dfunc.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < hs.dfunc.cols(); ++c) row.push_back(complex_to_json(hs.dfunc(r, c)));
    rows.push_back(std::move(row));
  }
  return {{"labels", hs.labels}, {"matrix", std::move(rows)}};
}

Json pair_to_json(const PairMeasurement& pm) {
  Json params = {{"t_first", pm.t_first}, {"t_second", pm.t_second}};
  if (pm.protocol.kind == ProtocolKind::AncillaGeneral) {
    params["alpha"] = complex_to_json(pm.protocol.alpha);
    params["beta"] = complex_to_json(pm.protocol.beta);
  }
  Json out = {{"protocol", to_string(pm.protocol.kind)},
              {"params", std::move(params)},
              {"p_table", named_values(pm.p_table)},
              {"C12", finite_or_null(pm.c)},
              {"diagnostics", named_values(pm.diagnostics)}};
  if (!pm.ok()) out["flag"] = pm.flag;
  return out;
}

Json report_to_json(const LgReport& r) {
  Json pairs = Json::array();
  for (const PairMeasurement& pm : r.pairs) pairs.push_back(pair_to_json(pm));
  Json out = {{"tau", finite_or_null(r.tau)},
              {"C12", finite_or_null(r.c12)},
              {"C23", finite_or_null(r.c23)},
              {"C13", finite_or_null(r.c13)},
              {"contextual_means",
               {{"q2_12", r.means.q2_12},
                {"q2_23", r.means.q2_23},
                {"q3_13", r.means.q3_13},
                {"q3_23", r.means.q3_23}}},
              {"delta0", finite_or_null(r.delta0)},
              {"standard", margins_json(r.standard)},
              {"modified", margins_json(r.modified)},
              {"standard_violation", r.standard_violation()},
              {"modified_violation", r.modified_violation()},
              {"pairs", std::move(pairs)}};
  if (r.flagged()) out["flag"] = r.flag;
  return out;
}

}  // namespace lgsim
