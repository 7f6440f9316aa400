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

#include <catch_amalgamated.hpp>

#include "lgsim/lg.hpp"
#include "support.hpp"

using namespace lgsim;
using namespace lgsim::testing;
using Catch::Matchers::WithinAbs;

namespace {

const SpinModel kSpin(1.0);

// Brute-force minimum of 2 cos(theta) + cos(2 theta) on a fine grid, then
// golden-section polish. Independent of the library's scan.
std::pair<double, double> ref_lower_optimum() {
  auto f = [](double th) { return 2 * std::cos(th) + std::cos(2 * th); };
  double best = 0.0;
  for (int i = 0; i <= 100000; ++i) {
    const double th = kPi * i / 100000;
    if (f(th) < f(best)) best = th;
  }
  double a = best - kPi / 100000, b = best + kPi / 100000;
  const double g = (std::sqrt(5.0) - 1) / 2;
  for (int i = 0; i < 100; ++i) {
    const double c = b - g * (b - a), d = a + g * (b - a);
    if (f(c) < f(d)) {
      b = d;
    } else {
      a = c;
    }
  }
  const double th = 0.5 * (a + b);
  return {th, -1.0 - f(th)};
}

}  // namespace

TEST_CASE("correlator of a joint distribution", "[lg]") {
  CHECK(correlator(JointDistribution({0.25, 0.25, 0.25, 0.25}, DistributionKind::Probability)) == 0.0);
  CHECK(correlator(JointDistribution({1, 0, 0, 0}, DistributionKind::Probability)) == 1.0);
  const JointDistribution seq =
      sequential_two_time(QuantumState::from_ket(plus_y()), kSpin.observable(), kSpin.hamiltonian(),
                          0.0, 1.3);
  CHECK_THAT(correlator(seq), WithinAbs(std::cos(1.3), 1e-13));
}

TEST_CASE("standard inequality margins", "[lg]") {
  const LgMargins a = lg_check(-0.5, -0.5, -0.5);
  CHECK_THAT(a.lower, WithinAbs(-0.5, 1e-15));
  CHECK(a.violated());
  const LgMargins b = lg_check(0.5, 0.5, -0.5);
  CHECK_THAT(b.upper, WithinAbs(-0.5, 1e-15));
  CHECK_THAT(b.lower, WithinAbs(1.5, 1e-15));
  const LgMargins c = lg_check(0, 0, 0);
  CHECK(c.lower > 0);
  CHECK(c.upper > 0);
  CHECK_FALSE(c.violated());
}

TEST_CASE("delta0 and the modified inequality", "[lg]") {
  CHECK(delta0({0.1, -0.1, 0.2, 0.2}) == 0.5 * (0.2 + 0.0));
  CHECK_THAT(delta0({0.1, -0.1, 0.2, 0.2}), WithinAbs(0.1, 1e-16));
  CHECK(delta0({0.3, 0.3, -0.2, -0.2}) == 0.0);
  CHECK(delta0({1, -1, 1, -1}) == 2.0);

  Rng rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    const double c12 = rng.uniform(-1, 1), c23 = rng.uniform(-1, 1), c13 = rng.uniform(-1, 1);
    const double d0 = rng.uniform(0, 1);
    const LgMargins s = lg_check(c12, c23, c13);
    const LgMargins z = modified_lg_check(c12, c23, c13, 0.0);
    CHECK(s.lower == z.lower);
    CHECK(s.upper == z.upper);
    const LgMargins m = modified_lg_check(c12, c23, c13, d0);
    CHECK_THAT(m.lower - s.lower, WithinAbs(2 * d0, 1e-15));
    CHECK_THAT(m.upper - s.upper, WithinAbs(2 * d0, 1e-15));
  }
  CHECK_THAT(modified_lg_check(-0.5, -0.5, -0.5, 0.25).lower, WithinAbs(0.0, 1e-15));
  CHECK_THAT(modified_lg_check(-0.5, -0.5, -0.5, 0.3).lower, WithinAbs(0.1, 1e-15));
  CHECK(std::isnan(modified_lg_check(kNaN, 0, 0, 0).lower));
}

TEST_CASE("protocol names round-trip", "[lg]") {
  for (ProtocolKind k : {ProtocolKind::Sequential, ProtocolKind::Quasi, ProtocolKind::AncillaSimple,
                         ProtocolKind::AncillaGeneral, ProtocolKind::Record, ProtocolKind::Classical}) {
    CHECK(protocol_from_string(to_string(k)) == k);
  }
  CHECK_THROWS_AS(protocol_from_string("weak"), InvalidInput);
}

TEST_CASE("spin-model scan finds the maximal violations", "[lg]") {
  const auto [theta_ref, viol_ref] = ref_lower_optimum();
  CHECK_THAT(theta_ref, WithinAbs(2 * kPi / 3, 1e-7));
  CHECK_THAT(viol_ref, WithinAbs(0.5, 1e-12));

  std::vector<double> grid;
  for (int i = 0; i <= 90; ++i) grid.push_back(kPi * i / 90);
  const QuantumState s = QuantumState::from_ket(up_z());
  const ScanResult r = violation_scan(kSpin.observable(), kSpin.hamiltonian(), s,
                                      {ProtocolKind::Sequential}, grid, {0.0, 2});
  REQUIRE(r.reports.size() == grid.size());
  CHECK_THAT(r.lower.violation, WithinAbs(0.5, 1e-12));
  CHECK_THAT(r.lower.tau, WithinAbs(2 * kPi / 3, 1e-12));
  CHECK_THAT(r.upper.violation, WithinAbs(0.5, 1e-12));
  CHECK_THAT(r.upper.tau, WithinAbs(kPi / 3, 1e-12));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(r.reports[i].tau == grid[i]);
    CHECK_THAT(r.reports[i].c12, WithinAbs(std::cos(grid[i]), 1e-12));
    CHECK_THAT(r.reports[i].c13, WithinAbs(std::cos(2 * grid[i]), 1e-12));
  }

  const ScanExtremum refined =
      refine_violation(kSpin.observable(), kSpin.hamiltonian(), s, {ProtocolKind::Sequential}, 1.5,
                       2.6, Bound::Lower);
  CHECK_THAT(refined.violation, WithinAbs(0.5, 1e-9));
  CHECK_THAT(refined.tau, WithinAbs(2 * kPi / 3, 1e-4));
}

TEST_CASE("single-point scan at tau = 0", "[lg]") {
  const std::vector<double> grid{0.0};
  const ScanResult r = violation_scan(kSpin.observable(), kSpin.hamiltonian(),
                                      QuantumState::from_ket(plus_y()), {ProtocolKind::Sequential}, grid);
  CHECK_THAT(r.reports[0].c12, WithinAbs(1.0, 1e-14));
  CHECK_THAT(r.reports[0].c13, WithinAbs(1.0, 1e-14));
  CHECK_FALSE(r.reports[0].standard.violated());
  CHECK(std::isnan(r.overall.tau));
  CHECK(r.overall.violation == 0.0);
}

TEST_CASE("scan is protocol independent for quantum inputs", "[lg]") {
  std::vector<double> grid;
  for (int i = 0; i < 40; ++i) grid.push_back(0.08 * i);
  const QuantumState s = QuantumState::from_ket(up_z());
  const ScanResult seq = violation_scan(kSpin.observable(), kSpin.hamiltonian(), s,
                                        {ProtocolKind::Sequential}, grid);
  for (ProtocolKind k : {ProtocolKind::Quasi, ProtocolKind::AncillaSimple, ProtocolKind::Record}) {
    const ScanResult other =
        violation_scan(kSpin.observable(), kSpin.hamiltonian(), s, {k}, grid, {0.0, 3});
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK_THAT(other.reports[i].c12, WithinAbs(seq.reports[i].c12, 1e-10));
      CHECK_THAT(other.reports[i].c23, WithinAbs(seq.reports[i].c23, 1e-10));
      CHECK_THAT(other.reports[i].c13, WithinAbs(seq.reports[i].c13, 1e-10));
      CHECK_THAT(other.reports[i].standard.lower, WithinAbs(seq.reports[i].standard.lower, 1e-10));
    }
    CHECK_THAT(other.lower.violation, WithinAbs(seq.lower.violation, 1e-10));
  }
}

TEST_CASE("record protocol flags rows for sigma_x eigenstates", "[lg]") {
  const LgScenario sc{kSpin.observable(), kSpin.hamiltonian(), QuantumState::from_ket(plus_x()),
                      0.0, 1.0, 2.0, {ProtocolChoice{ProtocolKind::Record}, ProtocolChoice{ProtocolKind::Record},
                                      ProtocolChoice{ProtocolKind::Record}}};
  const LgReport r = evaluate_lg(sc);
  CHECK(r.flagged());
  CHECK(r.flag.find("decoherence condition failed") != std::string::npos);
  CHECK(std::isnan(r.c12));
  CHECK(r.standard_violation() == 0.0);

  LgScenario general = sc;
  general.state = QuantumState::from_ket(up_z());
  const double h = 1.0 / std::sqrt(2.0);
  general.protocols = {ProtocolChoice{ProtocolKind::AncillaGeneral, h, h},
                       ProtocolChoice{ProtocolKind::Sequential}, ProtocolChoice{ProtocolKind::Sequential}};
  const LgReport g = evaluate_lg(general);
  CHECK(g.flag.find("zero-information") != std::string::npos);

  LgScenario bad = sc;
  bad.t3 = 0.5;
  CHECK_THROWS_AS(evaluate_lg(bad), InvalidInput);
}

TEST_CASE("quantum contextual means", "[lg]") {
  Rng rng(52);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index d = rng.integer(2, 3);
    const Operator q = Operator::hermitian(rng.dichotomic(d));
    const Operator h = Operator::hermitian(rng.hermitian(d));
    const QuantumState s = QuantumState::from_ket(rng.ket(d));
    const double t1 = rng.uniform(0, 1), t2 = t1 + rng.uniform(0.1, 1), t3 = t2 + rng.uniform(0.1, 1);
    const ContextualMeans m = quantum_contextual_means(q, h, s, t1, t2, t3);
    // <Q2^23> is the unmeasured mean; the others follow an earlier measurement.
    const Matrix q2 = ref_heisenberg(q.matrix(), h.matrix(), t2);
    CHECK_THAT(m.q2_23, WithinAbs(expectation(q2, s.ket()).real(), 1e-11));
    CHECK_THAT(m.q2_12, WithinAbs(sequential_two_time(s, q, h, t1, t2).mean_second(), 1e-11));
    CHECK_THAT(m.q3_13, WithinAbs(sequential_two_time(s, q, h, t1, t3).mean_second(), 1e-11));
    CHECK_THAT(m.q3_23, WithinAbs(sequential_two_time(s, q, h, t2, t3).mean_second(), 1e-11));
  }
  // Spin model, up_z at t1 = 0: the first measurement does not disturb.
  const ContextualMeans up = quantum_contextual_means(kSpin.observable(), kSpin.hamiltonian(),
                                                      QuantumState::from_ket(up_z()), 0.0, 1.0, 2.0);
  CHECK_THAT(up.q2_12, WithinAbs(up.q2_23, 1e-12));
  CHECK_THAT(up.q3_13, WithinAbs(std::cos(2.0), 1e-12));
  CHECK_THAT(up.q3_23, WithinAbs(std::cos(1.0) * std::cos(1.0), 1e-12));
}
