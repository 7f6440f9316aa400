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

#include "lgsim/qcore.hpp"
#include "support.hpp"

using namespace lgsim;
using namespace lgsim::testing;
using Catch::Matchers::WithinAbs;

TEST_CASE("unitary of the spin Hamiltonian", "[qcore]") {
  const Operator h = SpinModel(1.0).hamiltonian();
  // e^{-i pi sigma_x / 2} = -i sigma_x
  CHECK(max_abs_diff(unitary(h, kPi).matrix(), -kI * sx()) < 1e-14);
  CHECK(max_abs_diff(unitary(h, kPi / 2).matrix(), (id(2) - kI * sx()) / std::sqrt(2.0)) <
        1e-14);
  CHECK(max_abs_diff(unitary(h, 0.0).matrix(), id(2)) < 1e-15);
}

TEST_CASE("unitary agrees with a Pade exponential and obeys the group law", "[qcore]") {
  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::Index d = rng.integer(2, 6);
    const Operator h = Operator::hermitian(rng.hermitian(d));
    const double t1 = rng.uniform(-3, 3);
    const double t2 = rng.uniform(-3, 3);
    const Matrix u1 = unitary(h, t1).matrix();
    CHECK(max_abs_diff(u1, ref_unitary(h.matrix(), t1)) < 1e-11);
    CHECK(unitary(h, t1).is_unitary(1e-12));
    CHECK(max_abs_diff(u1 * unitary(h, t2).matrix(), unitary(h, t1 + t2).matrix()) < 1e-12);
  }
}

TEST_CASE("unitary rejects a non-hermitian generator", "[qcore]") {
  Matrix m = sx();
  m(0, 1) = 2.0;
  CHECK_THROWS_AS(unitary(Operator(m), 1.0), InvalidInput);
}

TEST_CASE("heisenberg evolution of sigma_z in the spin model", "[qcore]") {
  for (double omega : {0.7, 1.0, 2.3}) {
    const SpinModel model(omega);
    for (double t : {0.0, 0.3, 1.0, 2.5, 7.0}) {
      const Operator qt = heisenberg(model.observable(), model.hamiltonian(), t);
      CHECK(max_abs_diff(qt.matrix(), spin_sz(omega * t)) < 1e-13);
      CHECK(qt.role() == OperatorRole::Hermitian);
      // sigma_x commutes with H; the identity commutes with everything.
      CHECK(max_abs_diff(
                heisenberg(Operator::hermitian(sx()), model.hamiltonian(), t).matrix(), sx()) <
            1e-13);
      CHECK(max_abs_diff(heisenberg(Operator::identity(2), model.hamiltonian(), t).matrix(),
                                  id(2)) < 1e-13);
    }
  }
}

TEST_CASE("heisenberg preserves trace and spectrum", "[qcore][property]") {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index d = rng.integer(2, 5);
    const Matrix a = rng.hermitian(d);
    const Operator h = Operator::hermitian(rng.hermitian(d));
    const double t = rng.uniform(-4, 4);
    const Matrix at = heisenberg(Operator::hermitian(a), h, t).matrix();
    CHECK(max_abs_diff(at, ref_heisenberg(a, h.matrix(), t)) < 1e-11);
    CHECK(std::abs(at.trace() - a.trace()) < 1e-12);
    const Eigen::VectorXd ev0 = Eigen::SelfAdjointEigenSolver<Matrix>(a).eigenvalues();
    const Eigen::VectorXd ev1 = Eigen::SelfAdjointEigenSolver<Matrix>(at).eigenvalues();
    CHECK((ev0 - ev1).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("heisenberg rejects mismatched dimensions", "[qcore]") {
  CHECK_THROWS_AS(heisenberg(Operator::identity(3), SpinModel(1.0).hamiltonian(), 1.0), InvalidInput);
}

TEST_CASE("projectors of a dichotomic observable", "[qcore]") {
  const Operator z = Operator::hermitian(sz());
  CHECK(max_abs_diff(projector(z, Sign::Plus).matrix(),
                              (Matrix(2, 2) << 1, 0, 0, 0).finished()) == 0.0);
  CHECK(max_abs_diff(
            projector(z, Sign::Plus).matrix() + projector(z, Sign::Minus).matrix(), id(2)) == 0.0);

  // |1><1| - |2><2| - |3><3|
  Matrix q3 = Matrix::Zero(3, 3);
  q3(0, 0) = 1;
  q3(1, 1) = -1;
  q3(2, 2) = -1;
  const Operator pm = projector(Operator::hermitian(q3), Sign::Minus);
  CHECK(pm.is_projector());
  CHECK(std::abs(pm.matrix().trace() - 2.0) < 1e-15);
  Matrix expected = Matrix::Zero(3, 3);
  expected(1, 1) = 1;
  expected(2, 2) = 1;
  CHECK(max_abs_diff(pm.matrix(), expected) == 0.0);

  CHECK_THROWS_AS(projector(Operator::hermitian(2.0 * sz()), Sign::Plus), InvalidInput);
}

TEST_CASE("projector completeness for random dichotomic observables", "[qcore][property]") {
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index d = rng.integer(2, 6);
    const Operator q = Operator::hermitian(rng.dichotomic(d));
    REQUIRE(q.is_dichotomic());
    const Matrix pp = projector(q, Sign::Plus).matrix();
    const Matrix pm = projector(q, Sign::Minus).matrix();
    CHECK(max_abs_diff(pp + pm, id(d)) < 1e-14);
    CHECK((pp * pm).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("operator role validation", "[qcore]") {
  CHECK_THROWS_AS(Operator(Matrix(2, 3)), InvalidInput);
  CHECK_THROWS_AS(Operator::hermitian(sx() + kI * id(2)), InvalidInput);
  CHECK_THROWS_AS(Operator::unitary(2.0 * id(2)), InvalidInput);
  CHECK_THROWS_AS(Operator::projector(sx()), InvalidInput);
  CHECK_NOTHROW(Operator::unitary(sy()));
  CHECK(Operator::hermitian(sz()).is_dichotomic());
  CHECK_FALSE(Operator::hermitian(0.5 * sz()).is_dichotomic());
  CHECK(max_abs_diff(Operator(kI * sz()).adjoint().matrix(), -kI * sz()) == 0.0);
}

TEST_CASE("quantum state construction and validation", "[qcore]") {
  CHECK_THROWS_AS(QuantumState::from_ket(ket2(1, 1)), InvalidInput);
  const QuantumState s = QuantumState::from_unnormalized(ket2(3, 4));
  CHECK_THAT(s.ket().norm(), WithinAbs(1.0, 1e-15));
  CHECK_THAT(s.purity(), WithinAbs(1.0, 1e-15));

  CHECK_THROWS_AS(QuantumState::from_density(id(2)), InvalidInput);                   // trace 2
  CHECK_THROWS_AS(QuantumState::from_density((Matrix(2, 2) << 1.5, 0, 0, -0.5).finished()),
                  InvalidInput);                                                       // not PSD
  CHECK_THROWS_AS(QuantumState::from_density(0.5 * (id(2) + kI * sx())), InvalidInput);  // not hermitian

  const QuantumState mixed = QuantumState::from_density(0.5 * id(2));
  CHECK_FALSE(mixed.is_pure());
  CHECK_THROWS_AS(mixed.ket(), InvalidInput);
  CHECK_THAT(mixed.purity(), WithinAbs(0.5, 1e-15));
  double w = 0.0;
  for (const auto& [p, k] : mixed.pure_components()) w += p;
  CHECK_THAT(w, WithinAbs(1.0, 1e-14));
}

TEST_CASE("expectation and partial trace", "[qcore]") {
  CHECK_THAT(expectation(sz(), up_z()).real(), WithinAbs(1.0, 1e-15));
  CHECK_THAT(expectation(sx(), plus_x()).real(), WithinAbs(1.0, 1e-15));
  const QuantumState mixed = QuantumState::from_density(0.5 * id(2));
  CHECK_THAT(expectation(sz(), mixed).real(), WithinAbs(0.0, 1e-15));

  const Ket prod = kron(plus_y(), up_z());
  const Matrix rho = prod * prod.adjoint();
  const Matrix reduced = partial_trace_last(rho, 2, 2);
  CHECK(max_abs_diff(reduced, plus_y() * plus_y().adjoint()) < 1e-15);
  CHECK_THAT(purity(reduced), WithinAbs(1.0, 1e-14));

  // Bell state: maximally mixed reduced state.
  Ket bell = Ket::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  CHECK_THAT(purity(partial_trace_last(bell * bell.adjoint(), 2, 2)), WithinAbs(0.5, 1e-15));
  CHECK_THROWS_AS(partial_trace_last(id(4), 3, 2), InvalidInput);
}

TEST_CASE("spin model and named states", "[qcore]") {
  CHECK_THROWS_AS(SpinModel(1.0, {1.0, 1.0, 0.0}), InvalidInput);
  const double r = 1.0 / std::sqrt(2.0);
  const SpinModel tilted(1.0, {r, 0.0, r});
  CHECK(max_abs_diff(tilted.observable().matrix(), r * (sx() + sz())) < 1e-15);
  CHECK(max_abs_diff(SpinModel(2.0).hamiltonian().matrix(), sx()) < 1e-15);

  const struct {
    const char* name;
    Matrix op;
    double eig;
  } cases[] = {{"up_z", sz(), 1},  {"down_z", sz(), -1}, {"plus_x", sx(), 1},
               {"minus_x", sx(), -1}, {"plus_y", sy(), 1},  {"minus_y", sy(), -1}};
  for (const auto& c : cases) {
    const Ket k = named_qubit_state(c.name).ket();
    CHECK(((c.op * k) - c.eig * k).norm() < 1e-15);
  }
  CHECK_FALSE(is_named_qubit_state("up_x"));
  CHECK_THROWS_AS(named_qubit_state("up_x"), InvalidInput);
}

TEST_CASE("sign helpers", "[qcore]") {
  CHECK(value(Sign::Plus) == 1.0);
  CHECK(flip(Sign::Minus) == Sign::Plus);
  CHECK(sign_from_int(-1) == Sign::Minus);
  CHECK_THROWS_AS(sign_from_int(0), InvalidInput);
}
