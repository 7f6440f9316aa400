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

#include "lgsim/lg.hpp"

#include <algorithm>
#include <cmath>

#include "parallel.hpp"

namespace lgsim {

double correlator(const JointDistribution& jd) { return jd.correlator(); }

LgMargins lg_check(double c12, double c23, double c13) {
  return modified_lg_check(c12, c23, c13, 0.0);
}

double delta0(const ContextualMeans& m) {
  return 0.5 * (std::abs(m.q2_12 - m.q2_23) + std::abs(m.q3_13 - m.q3_23));
}

LgMargins modified_lg_check(double c12, double c23, double c13, double delta0) {
  if (std::isnan(c12) || std::isnan(c23) || std::isnan(c13) || std::isnan(delta0)) {
    return {kNaN, kNaN};
  }
  const double sum = c12 + c23 + c13;
  const double lowest = std::min({c12, c23, c13});
  return {sum - (-1.0 - 2.0 * delta0), (1.0 + 2.0 * delta0 + 2.0 * lowest) - sum};
}

std::string to_string(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::Sequential:
      return "sequential";
    case ProtocolKind::Quasi:
      return "quasi";
    case ProtocolKind::AncillaSimple:
      return "ancilla_simple";
    case ProtocolKind::AncillaGeneral:
      return "ancilla_general";
    case ProtocolKind::Record:
      return "record";
    case ProtocolKind::Classical:
      return "classical";
  }
  return "unknown";
}

ProtocolKind protocol_from_string(const std::string& name) {
  for (ProtocolKind k : {ProtocolKind::Sequential, ProtocolKind::Quasi, ProtocolKind::AncillaSimple,
                         ProtocolKind::AncillaGeneral, ProtocolKind::Record,
                         ProtocolKind::Classical}) {
    if (to_string(k) == name) return k;
  }
  throw InvalidInput("unknown protocol '" + name + "'");
}

namespace {

NamedValues table_of(const JointDistribution& jd) {
  return {{"++", jd(Sign::Plus, Sign::Plus)},
          {"+-", jd(Sign::Plus, Sign::Minus)},
          {"-+", jd(Sign::Minus, Sign::Plus)},
          {"--", jd(Sign::Minus, Sign::Minus)}};
}

void add_ancilla_diagnostics(PairMeasurement& pm, const AncillaOutcome& out) {
  pm.p_table = {{"0", out.p0}, {"1", out.p1}};
  pm.diagnostics = {{"reduced_system_purity", out.reduced_system_purity},
                    {"intermediate_purity", out.intermediate_purity},
                    {"disturbance", out.disturbance}};
  if (out.fidelity_with_free_evolution) {
    pm.diagnostics.emplace_back("fidelity_with_free_evolution", *out.fidelity_with_free_evolution);
  }
}

}  // namespace

PairMeasurement measure_pair(const Operator& q, const Operator& h, const QuantumState& state,
                             double t_first, double t_second, const ProtocolChoice& protocol) {
  PairMeasurement pm;
  pm.protocol = protocol;
  pm.t_first = t_first;
  pm.t_second = t_second;
  switch (protocol.kind) {
    case ProtocolKind::Sequential: {
      const JointDistribution jd = sequential_two_time(state, q, h, t_first, t_second);
      pm.p_table = table_of(jd);
      pm.c = jd.correlator();
      pm.diagnostics = {{"nsit_deviation", nsit_deviation(jd, state, q, h, t_second)}};
      break;
    }
    case ProtocolKind::Quasi: {
      const JointDistribution jd = quasi_probability(state, q, h, t_first, t_second);
      pm.p_table = table_of(jd);
      pm.c = jd.correlator();
      const auto& t = jd.table();
      pm.diagnostics = {{"nsit_deviation", nsit_deviation(jd, state, q, h, t_second)},
                        {"min_entry", *std::min_element(t.begin(), t.end())}};
      break;
    }
    case ProtocolKind::AncillaSimple: {
      const AncillaOutcome out = ancilla_simple(state, q, h, t_first, t_second);
      add_ancilla_diagnostics(pm, out);
      pm.c = *out.inferred_c12;
      break;
    }
    case ProtocolKind::AncillaGeneral: {
      const AncillaOutcome out =
          ancilla_general(state, q, h, t_first, t_second, protocol.alpha, protocol.beta);
      add_ancilla_diagnostics(pm, out);
      if (out.inferred_c12) {
        pm.c = *out.inferred_c12;
      } else {
        pm.flag = "zero-information ancilla state (|alpha|^2 = |beta|^2)";
      }
      break;
    }
    case ProtocolKind::Record: {
      if (!state.is_pure()) {
        pm.flag = "record protocol requires a pure state";
        break;
      }
      const RecordOutcome out = record_protocol(state, q, h, t_first, t_second);
      pm.diagnostics = {{"d_expectation", out.d_expectation},
                        {"decoherent", out.decoherent ? 1.0 : 0.0}};
      if (out.decay_overlap) pm.diagnostics.emplace_back("decay_overlap", *out.decay_overlap);
      if (out.p_same) {
        pm.p_table = {{"same", *out.p_same}, {"diff", 1.0 - *out.p_same}};
        pm.c = *out.c12();
      } else {
        pm.flag = "decoherence condition failed";
      }
      break;
    }
    case ProtocolKind::Classical:
      throw InvalidInput("measure_pair: classical pairs come from simulate_pair");
  }
  return pm;
}

ContextualMeans quantum_contextual_means(const Operator& q, const Operator& h,
                                         const QuantumState& state, double t1, double t2,
                                         double t3) {
  const AncillaOptions two{Coupling::Standard, true};
  const SingleTimeMeans m12 = *ancilla_simple(state, q, h, t1, t2, two).means;
  const SingleTimeMeans m23 = *ancilla_simple(state, q, h, t2, t3, two).means;
  const SingleTimeMeans m13 = *ancilla_simple(state, q, h, t1, t3, two).means;
  return {m12.second, m23.first, m13.second, m23.second};
}

double LgReport::standard_violation() const {
  const double w = standard.worst();
  return w < 0.0 ? -w : 0.0;
}

double LgReport::modified_violation() const {
  const double w = modified.worst();
  return w < 0.0 ? -w : 0.0;
}

LgReport assemble_report(double c12, double c23, double c13, const ContextualMeans& means) {
  LgReport r;
  r.c12 = c12;
  r.c23 = c23;
  r.c13 = c13;
  r.means = means;
  r.delta0 = delta0(means);
  r.standard = lg_check(c12, c23, c13);
  r.modified = modified_lg_check(c12, c23, c13, r.delta0);
  return r;
}

LgReport evaluate_lg(const LgScenario& s) {
  if (!(s.t1 <= s.t2 && s.t2 <= s.t3)) {
    throw InvalidInput("LG scenario requires t1 <= t2 <= t3");
  }
  const std::array<std::pair<double, double>, 3> times{
      {{s.t1, s.t2}, {s.t2, s.t3}, {s.t1, s.t3}}};
  std::array<PairMeasurement, 3> pairs;
  for (std::size_t i = 0; i < 3; ++i) {
    pairs[i] = measure_pair(s.q, s.h, s.state, times[i].first, times[i].second, s.protocols[i]);
  }
  LgReport r = assemble_report(pairs[0].c, pairs[1].c, pairs[2].c,
                               quantum_contextual_means(s.q, s.h, s.state, s.t1, s.t2, s.t3));
  static const char* kPairNames[] = {"C12", "C23", "C13"};
  for (std::size_t i = 0; i < 3; ++i) {
    if (pairs[i].ok()) continue;
    if (!r.flag.empty()) r.flag += "; ";
    r.flag += std::string(kPairNames[i]) + ": " + pairs[i].flag;
  }
  r.pairs = std::move(pairs);
  return r;
}

ScanResult summarize_scan(std::vector<LgReport> reports) {
  ScanResult out;
  auto update = [](ScanExtremum& e, double margin, double tau) {
    if (std::isnan(margin)) return;
    const double v = margin < 0.0 ? -margin : 0.0;
    if (v > e.violation) {
      e.violation = v;
      e.tau = tau;
    }
  };
  for (const LgReport& r : reports) {
    update(out.lower, r.standard.lower, r.tau);
    update(out.upper, r.standard.upper, r.tau);
    update(out.overall, r.standard.worst(), r.tau);
  }
  out.reports = std::move(reports);
  return out;
}

ScanResult violation_scan(const Operator& q, const Operator& h, const QuantumState& state,
                          const ProtocolChoice& protocol, std::span<const double> taus,
                          const ScanOptions& options) {
  if (taus.empty()) throw InvalidInput("violation_scan: tau grid is empty");
  for (double tau : taus) {
    if (!(tau >= 0.0)) throw InvalidInput("violation_scan: tau values must be nonnegative");
  }
  std::vector<LgReport> reports(taus.size());
  detail::parallel_for(taus.size(), options.threads, [&](std::size_t i) {
    const double tau = taus[i];
    const LgScenario s{q, h, state, options.t1, options.t1 + tau, options.t1 + 2.0 * tau,
                       {protocol, protocol, protocol}};
    reports[i] = evaluate_lg(s);
    reports[i].tau = tau;
  });
  return summarize_scan(std::move(reports));
}

ScanExtremum refine_violation(const Operator& q, const Operator& h, const QuantumState& state,
                              const ProtocolChoice& protocol, double tau_lo, double tau_hi,
                              Bound bound, const ScanOptions& options, int levels, int points) {
  if (!(tau_hi > tau_lo) || points < 3 || levels < 1) {
    throw InvalidInput("refine_violation: need tau_hi > tau_lo, points >= 3, levels >= 1");
  }
  const double lo0 = tau_lo;
  const double hi0 = tau_hi;
  ScanExtremum best;
  for (int level = 0; level < levels; ++level) {
    std::vector<double> grid(static_cast<std::size_t>(points));
    const double step = (tau_hi - tau_lo) / (points - 1);
    for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = tau_lo + i * step;
    const ScanResult scan = violation_scan(q, h, state, protocol, grid, options);
    const ScanExtremum& e = bound == Bound::Lower   ? scan.lower
                            : bound == Bound::Upper ? scan.upper
                                                    : scan.overall;
    if (std::isnan(e.tau)) break;
    best = e;
    tau_lo = std::max(lo0, e.tau - step);
    tau_hi = std::min(hi0, e.tau + step);
  }
  return best;
}

}  // namespace lgsim
