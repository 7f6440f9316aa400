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

#include <string>

#include <json.hpp>

#include "lgsim/histories.hpp"
#include "lgsim/lg.hpp"
#include "lgsim/qcore.hpp"
#include "lgsim/twotime.hpp"

namespace lgsim {

using Json = nlohmann::ordered_json;

/// Malformed JSON input. `field` is a dotted path into the document.
class ConfigError : public InvalidInput {
 public:
  ConfigError(std::string field, const std::string& message);
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

Json complex_to_json(Complex z);  // [re, im]
/// Accepts [re, im] or a bare real number.
Complex complex_from_json(const Json& j, const std::string& field);

/// {"dimension": d, "data": [[re, im], ...]} in row-major order.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const std::string& field);

/// {"dimension": d, "data": [[re, im], ...]}.
Json ket_to_json(const Ket& k);
Ket ket_from_json(const Json& j, const std::string& field);

Json operator_to_json(const Operator& op);
/// Accepts the matrix form, or {"pauli": [cx, cy, cz]} for d = 2.
Operator hermitian_from_json(const Json& j, const std::string& field);

/// {"ket": ...} for pure states, {"rho": ...} otherwise.
Json state_to_json(const QuantumState& s);
/// Also accepts a named qubit state as a bare string.
QuantumState state_from_json(const Json& j, const std::string& field);

/// {C12, D_expectation, p_same, p_diff, identity_residuals}.
Json frame_summary_json(const TwoTimeFrame& frame, const QuantumState& state);

/// {"labels": [[i, j, ...], ...], "matrix": [[[re, im], ...], ...]}.
Json decoherence_functional_json(const HistorySet& hs);

/// {protocol, params, p_table, C12, diagnostics}, plus flag when set.
Json pair_to_json(const PairMeasurement& pm);

Json report_to_json(const LgReport& r);

}  // namespace lgsim
