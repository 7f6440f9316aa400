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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lgsim/histories.hpp"
#include "lgsim/lg.hpp"
#include "lgsim/macroreal.hpp"
#include "lgsim/protocols.hpp"
#include "lgsim/scenario.hpp"
#include "lgsim/twotime.hpp"

namespace py = pybind11;
using namespace lgsim;

namespace {

// A state is a qubit name, a 1-d ket or a 2-d density matrix.
QuantumState to_state(const py::object& o) {
  if (py::isinstance<py::str>(o)) return named_qubit_state(o.cast<std::string>());
  const auto arr = py::array_t<Complex, py::array::forcecast>::ensure(o);
  if (!arr) throw InvalidInput("state: expected a name, ket or density matrix");
  if (arr.ndim() == 1) return QuantumState::from_ket(o.cast<Ket>());
  if (arr.ndim() == 2) return QuantumState::from_density(o.cast<Matrix>());
  throw InvalidInput("state: expected a 1-d ket or 2-d density matrix");
}

Operator herm(const Matrix& m) { return Operator::hermitian(m); }

ProtocolChoice to_protocol(const std::string& name, Complex alpha, Complex beta) {
  return {protocol_from_string(name), alpha, beta};
}

HiddenModel make_model(const std::string& dynamics, double omega, double rate, int kick_sign,
                       double kick_strength, double p_plus) {
  HiddenModel m;
  if (dynamics == "square_wave") {
    m.dynamics = SquareWave{omega};
  } else if (dynamics == "telegraph") {
    m.dynamics = Telegraph{rate};
  } else {
    throw InvalidInput("dynamics must be square_wave or telegraph");
  }
  m.kick = {sign_from_int(kick_sign), kick_strength};
  m.p_plus = p_plus;
  m.validate();
  return m;
}

McOptions mc_options(std::uint64_t n_runs, std::uint64_t seed, unsigned threads) {
  McOptions o;
  o.n_runs = n_runs;
  o.seed = seed;
  o.threads = threads;
  return o;
}

}  // namespace

PYBIND11_MODULE(_lgsim, m) {
  m.doc() = "Two-level temporal-correlation simulator: protocols, LG checks, classical baselines.";

  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<UndefinedResult>(m, "UndefinedResult", PyExc_ArithmeticError);

  // qcore
  m.def("spin_model", [](double omega) {
    const SpinModel s(omega);
    return py::make_tuple(s.hamiltonian().matrix(), s.observable().matrix());
  }, py::arg("omega") = 1.0, "(H, Q) for H = omega sigma_x / 2, Q = sigma_z.");
  m.def("unitary", [](const Matrix& h, double t) { return unitary(herm(h), t).matrix(); },
        py::arg("h"), py::arg("t"));
  m.def("heisenberg", [](const Matrix& a, const Matrix& h, double t) {
    return heisenberg(herm(a), herm(h), t).matrix();
  }, py::arg("a"), py::arg("h"), py::arg("t"));
  m.def("named_state", [](const std::string& name) { return named_qubit_state(name).density(); },
        py::arg("name"), "Density matrix of a named qubit state.");

  // twotime
  m.def("frame", [](const Matrix& q, const Matrix& h, double t1, double t2) {
    const TwoTimeFrame f = build_frame(herm(q), herm(h), t1, t2);
    py::dict d;
    d["q_t1"] = f.q_t1.matrix();
    d["q_t2"] = f.q_t2.matrix();
    d["C"] = f.c_op.matrix();
    d["D"] = f.d_op.matrix();
    d["max_residual"] = f.residuals().max();
    return d;
  }, py::arg("q"), py::arg("h"), py::arg("t1"), py::arg("t2"));
  m.def("history_pair", [](const Matrix& q, const Matrix& h, double t1, double t2,
                           const py::object& state) {
    const HistoryPair hp = history_pair(build_frame(herm(q), herm(h), t1, t2), to_state(state));
    py::dict d;
    d["same"] = hp.same;
    d["diff"] = hp.diff;
    d["p_same"] = hp.p_same;
    d["p_diff"] = hp.p_diff;
    d["overlap"] = hp.overlap();
    return d;
  }, py::arg("q"), py::arg("h"), py::arg("t1"), py::arg("t2"), py::arg("state"));

  // histories
  m.def("decoherence_functional", [](const Matrix& q, const Matrix& h,
                                     const std::vector<double>& times, const py::object& state) {
    const HistorySet hs = build_histories(ProjectiveGrid::dichotomic(herm(q), times), herm(h),
                                          to_state(state));
    return py::make_tuple(hs.labels, hs.dfunc);
  }, py::arg("q"), py::arg("h"), py::arg("times"), py::arg("state"),
     "(labels, D) for the dichotomic history set on the given times.");

  // protocols
  py::class_<JointDistribution>(m, "JointDistribution")
      .def_property_readonly("table", &JointDistribution::table)
      .def_property_readonly("is_quasi", [](const JointDistribution& j) {
        return j.kind() == DistributionKind::QuasiProbability;
      })
      .def("__call__", [](const JointDistribution& j, int s1, int s2) {
        return j(sign_from_int(s1), sign_from_int(s2));
      })
      .def("correlator", &JointDistribution::correlator)
      .def("mean_first", &JointDistribution::mean_first)
      .def("mean_second", &JointDistribution::mean_second);

  m.def("sequential", [](const py::object& state, const Matrix& q, const Matrix& h, double t1,
                         double t2) {
    return sequential_two_time(to_state(state), herm(q), herm(h), t1, t2);
  }, py::arg("state"), py::arg("q"), py::arg("h"), py::arg("t1"), py::arg("t2"));
  m.def("quasi_probability", [](const py::object& state, const Matrix& q, const Matrix& h,
                                double t1, double t2) {
    return quasi_probability(to_state(state), herm(q), herm(h), t1, t2);
  }, py::arg("state"), py::arg("q"), py::arg("h"), py::arg("t1"), py::arg("t2"));

  py::class_<AncillaOutcome>(m, "AncillaOutcome")
      .def_readonly("p0", &AncillaOutcome::p0)
      .def_readonly("p1", &AncillaOutcome::p1)
      .def_readonly("joint_state", &AncillaOutcome::joint_state)
      .def_readonly("reduced_system_purity", &AncillaOutcome::reduced_system_purity)
      .def_readonly("intermediate_purity", &AncillaOutcome::intermediate_purity)
      .def_readonly("fidelity_with_free_evolution", &AncillaOutcome::fidelity_with_free_evolution)
      .def_readonly("disturbance", &AncillaOutcome::disturbance)
      .def_readonly("inferred_c12", &AncillaOutcome::inferred_c12);

  m.def("ancilla_simple", [](const py::object& state, const Matrix& q, const Matrix& h, double t1,
                             double t2, bool opposite) {
    AncillaOptions o;
    o.coupling = opposite ? Coupling::Opposite : Coupling::Standard;
    return ancilla_simple(to_state(state), herm(q), herm(h), t1, t2, o);
  }, py::arg("state"), py::arg("q"), py::arg("h"), py::arg("t1"), py::arg("t2"),
     py::arg("opposite") = false);
  m.def("ancilla_general", [](const py::object& state, const Matrix& q, const Matrix& h, double t1,
                              double t2, Complex alpha, Complex beta) {
    return ancilla_general(to_state(state), herm(q), herm(h), t1, t2, alpha, beta);
  }, py::arg("state"), py::arg("q"), py::arg("h"), py::arg("t1"), py::arg("t2"), py::arg("alpha"),
     py::arg("beta"));

  py::class_<RecordOutcome>(m, "RecordOutcome")
      .def_readonly("decoherent", &RecordOutcome::decoherent)
      .def_readonly("d_expectation", &RecordOutcome::d_expectation)
      .def_readonly("p_same", &RecordOutcome::p_same)
      .def_readonly("decay_overlap", &RecordOutcome::decay_overlap)
      .def_property_readonly("c12", &RecordOutcome::c12);
  m.def("record_protocol", [](const py::object& state, const Matrix& q, const Matrix& h, double t1,
                              double t2) {
    return record_protocol(to_state(state), herm(q), herm(h), t1, t2);
  }, py::arg("state"), py::arg("q"), py::arg("h"), py::arg("t1"), py::arg("t2"));
  m.def("nsit_deviation", [](const py::object& state, const Matrix& q, const Matrix& h, double t1,
                             double t2) {
    return nsit_deviation(to_state(state), herm(q), herm(h), t1, t2);
  }, py::arg("state"), py::arg("q"), py::arg("h"), py::arg("t1"), py::arg("t2"));

  // lg
  py::class_<LgMargins>(m, "LgMargins")
      .def_readonly("lower", &LgMargins::lower)
      .def_readonly("upper", &LgMargins::upper)
      .def_property_readonly("violated", &LgMargins::violated)
      .def("__repr__", [](const LgMargins& g) {
        return "LgMargins(lower=" + std::to_string(g.lower) + ", upper=" + std::to_string(g.upper) + ")";
      });
  m.def("lg_check", &lg_check, py::arg("c12"), py::arg("c23"), py::arg("c13"));
  m.def("modified_lg_check", &modified_lg_check, py::arg("c12"), py::arg("c23"), py::arg("c13"),
        py::arg("delta0"));
  m.def("delta0", [](double q2_12, double q2_23, double q3_13, double q3_23) {
    return delta0({q2_12, q2_23, q3_13, q3_23});
  }, py::arg("q2_12"), py::arg("q2_23"), py::arg("q3_13"), py::arg("q3_23"));

  py::class_<LgReport>(m, "LgReport")
      .def_readonly("tau", &LgReport::tau)
      .def_readonly("c12", &LgReport::c12)
      .def_readonly("c23", &LgReport::c23)
      .def_readonly("c13", &LgReport::c13)
      .def_readonly("delta0", &LgReport::delta0)
      .def_readonly("standard", &LgReport::standard)
      .def_readonly("modified", &LgReport::modified)
      .def_readonly("flag", &LgReport::flag);
  py::class_<ScanExtremum>(m, "ScanExtremum")
      .def_readonly("violation", &ScanExtremum::violation)
      .def_readonly("tau", &ScanExtremum::tau);
  py::class_<ScanResult>(m, "ScanResult")
      .def_readonly("reports", &ScanResult::reports)
      .def_readonly("lower", &ScanResult::lower)
      .def_readonly("upper", &ScanResult::upper)
      .def_readonly("overall", &ScanResult::overall);

  m.def("evaluate_lg", [](const Matrix& q, const Matrix& h, const py::object& state, double t1,
                          double t2, double t3, const std::string& protocol, Complex alpha,
                          Complex beta) {
    const ProtocolChoice p = to_protocol(protocol, alpha, beta);
    return evaluate_lg({herm(q), herm(h), to_state(state), t1, t2, t3, {p, p, p}});
  }, py::arg("q"), py::arg("h"), py::arg("state"), py::arg("t1"), py::arg("t2"), py::arg("t3"),
     py::arg("protocol") = "sequential", py::arg("alpha") = Complex(1.0),
     py::arg("beta") = Complex(0.0));
  m.def("violation_scan", [](const Matrix& q, const Matrix& h, const py::object& state,
                             const std::vector<double>& taus, const std::string& protocol,
                             double t1, unsigned threads) {
    const QuantumState s = to_state(state);
    py::gil_scoped_release release;
    return violation_scan(herm(q), herm(h), s, to_protocol(protocol, 1.0, 0.0), taus, {t1, threads});
  }, py::arg("q"), py::arg("h"), py::arg("state"), py::arg("taus"),
     py::arg("protocol") = "sequential", py::arg("t1") = 0.0, py::arg("threads") = 1);

  // macroreal
  py::class_<HiddenModel>(m, "HiddenModel")
      .def(py::init(&make_model), py::arg("dynamics") = "square_wave", py::arg("omega") = 1.0,
           py::arg("rate") = 0.0, py::arg("kick_sign") = 1, py::arg("kick_strength") = 0.0,
           py::arg("p_plus") = 0.5)
      .def("__repr__", [](const HiddenModel& h) { return describe(h); });
  py::class_<McEstimate>(m, "McEstimate")
      .def_readonly("value", &McEstimate::value)
      .def_readonly("std_error", &McEstimate::std_error)
      .def_readonly("n_runs", &McEstimate::n_runs)
      .def_readonly("seed", &McEstimate::seed);
  py::class_<PairSample>(m, "PairSample")
      .def_readonly("counts", &PairSample::counts)
      .def_readonly("n_runs", &PairSample::n_runs)
      .def("correlator", &PairSample::correlator)
      .def("mean_first", &PairSample::mean_first)
      .def("mean_second", &PairSample::mean_second);
  py::class_<EmpiricalLgReport>(m, "EmpiricalLgReport")
      .def_readonly("report", &EmpiricalLgReport::report)
      .def_readonly("c12", &EmpiricalLgReport::c12)
      .def_readonly("c23", &EmpiricalLgReport::c23)
      .def_readonly("c13", &EmpiricalLgReport::c13)
      .def_readonly("delta0_stderr", &EmpiricalLgReport::delta0_stderr)
      .def_readonly("standard_stderr", &EmpiricalLgReport::standard_stderr)
      .def_readonly("modified_stderr", &EmpiricalLgReport::modified_stderr);

  m.def("simulate_pair", [](const HiddenModel& model, double t1, double t2, bool measured,
                            std::uint64_t n_runs, std::uint64_t seed, unsigned threads) {
    py::gil_scoped_release release;
    return simulate_pair(model, t1, t2, measured ? Context::MeasuredAtFirst : Context::Unmeasured,
                         mc_options(n_runs, seed, threads));
  }, py::arg("model"), py::arg("t1"), py::arg("t2"), py::arg("measured") = true,
     py::arg("n_runs") = 100000, py::arg("seed") = 1, py::arg("threads") = 1);
  m.def("lg_suite", [](const HiddenModel& model, double t1, double t2, double t3,
                       std::uint64_t n_runs, std::uint64_t seed, unsigned threads) {
    py::gil_scoped_release release;
    return lg_suite(model, t1, t2, t3, mc_options(n_runs, seed, threads));
  }, py::arg("model"), py::arg("t1"), py::arg("t2"), py::arg("t3"), py::arg("n_runs") = 100000,
     py::arg("seed") = 1, py::arg("threads") = 1);

  // scenario runner
  m.def("run_config", [](const std::string& config_json, unsigned threads) {
    const ScenarioConfig c = parse_config(Json::parse(config_json));
    const ScenarioResult r = run_scenario(c, {threads});
    return py::make_tuple(to_csv(r), summarize(c, r).dump());
  }, py::arg("config_json"), py::arg("threads") = 1,
     "Run a JSON scenario; returns (csv_text, summary_json_text).");
}
