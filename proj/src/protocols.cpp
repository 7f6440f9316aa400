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

#include "lgsim/protocols.hpp"

#include <algorithm>
#include <cmath>

namespace lgsim {

namespace {

constexpr double kVanishingProbability = 1e-14;
constexpr double kZeroInformation = 1e-12;

void require_inputs(const QuantumState& state, const Operator& q, const Operator& h, double t1,
                    double t2, const char* who) {
  require_dichotomic(q);
  require_hermitian(h);
  if (q.dim() != h.dim() || state.dim() != q.dim()) {
    throw InvalidInput(std::string(who) + ": dimension mismatch between state, Q and H");
  }
  if (!(t2 >= t1)) throw InvalidInput(std::string(who) + ": requires t2 >= t1");
}

// Everything the ancilla protocols measure, for one circuit run on one
// (possibly mixed) system input.
struct AncillaRun {
  double p0 = 0.0;
  double p1 = 0.0;
  std::array<double, 4> joint{};  // (s1, s2) table reconstructed from two ancillas
  Matrix reduced_final;
  Matrix reduced_intermediate;
  double disturbance_sq = 0.0;
  std::optional<Ket> joint_state;
  std::optional<double> fidelity;
};

// System (x) ancilla1 [(x) ancilla2]; the system is the most significant factor.
AncillaRun run_ancilla_circuit(const QuantumState& state, const Operator& q, const Operator& h,
                               double t1, double t2, Complex alpha, Complex beta,
                               Coupling coupling, bool second_ancilla) {
  const auto d = static_cast<Eigen::Index>(q.dim());
  const Eigen::Index m = second_ancilla ? 4 : 2;
  const Matrix id_m = Matrix::Identity(m, m);
  const Matrix id_2 = Matrix::Identity(2, 2);
  const Matrix x1 = second_ancilla ? kron(pauli_x(), id_2) : pauli_x();
  const Matrix x2 = kron(id_2, pauli_x());

  const Sign first_flip = coupling == Coupling::Standard ? Sign::Plus : Sign::Minus;
  const Matrix p_first = projector(q, first_flip).matrix();
  const Matrix p_other = projector(q, flip(first_flip)).matrix();
  const Matrix p_plus = projector(q, Sign::Plus).matrix();
  const Matrix p_minus = projector(q, Sign::Minus).matrix();

  const Matrix gate1 = kron(p_first, x1) + kron(p_other, id_m);
  Matrix gate2 = kron(p_other, x1) + kron(p_first, id_m);
  if (second_ancilla) gate2 = (kron(p_plus, x2) + kron(p_minus, id_m)) * gate2;

  const Matrix u1 = unitary(h, t1).matrix();
  const Matrix u12 = kron(unitary(h, t2 - t1).matrix(), id_m);
  const Matrix u2 = unitary(h, t2).matrix();

  Ket anc0 = Ket::Zero(m);
  if (second_ancilla) {
    anc0(0) = alpha;  // |0>|0>
    anc0(2) = beta;   // |1>|0>
  } else {
    anc0(0) = alpha;
    anc0(1) = beta;
  }

  AncillaRun run;
  run.reduced_final = Matrix::Zero(d, d);
  run.reduced_intermediate = Matrix::Zero(d, d);
  for (const auto& [w, k] : state.pure_components()) {
    const Ket psi_t1 = u1 * k;
    const Ket start = kron(psi_t1, anc0);
    const Ket after1 = gate1 * start;
    const Ket after2 = gate2 * (u12 * after1);

    run.disturbance_sq += w * (after1 - start).squaredNorm();
    run.reduced_intermediate +=
        w * partial_trace_last(after1 * after1.adjoint(), static_cast<std::size_t>(d),
                               static_cast<std::size_t>(m));
    const Matrix rho_sys = partial_trace_last(after2 * after2.adjoint(),
                                              static_cast<std::size_t>(d),
                                              static_cast<std::size_t>(m));
    run.reduced_final += w * rho_sys;

    // Ancilla populations: index = sys * m + anc.
    std::array<double, 4> anc_prob{};
    for (Eigen::Index s = 0; s < d; ++s) {
      for (Eigen::Index a = 0; a < m; ++a) {
        anc_prob[static_cast<std::size_t>(a)] += std::norm(after2(s * m + a));
      }
    }
    if (second_ancilla) {
      // anc = 2*a1 + a2; a2 = 1 <=> Q(t2) = +1; a1 = 1 <=> same sign.
      run.p0 += w * (anc_prob[0] + anc_prob[1]);
      run.p1 += w * (anc_prob[2] + anc_prob[3]);
      for (int a1 = 0; a1 < 2; ++a1) {
        for (int a2 = 0; a2 < 2; ++a2) {
          const Sign s2 = a2 == 1 ? Sign::Plus : Sign::Minus;
          const Sign s1 = a1 == 1 ? s2 : flip(s2);
          run.joint[JointDistribution::index(s1, s2)] +=
              w * anc_prob[static_cast<std::size_t>(2 * a1 + a2)];
        }
      }
    } else {
      run.p0 += w * anc_prob[0];
      run.p1 += w * anc_prob[1];
    }

    if (state.is_pure()) {
      run.joint_state = after2;
      const Ket free = u2 * k;
      run.fidelity = expectation(rho_sys, free).real();
    }
  }
  return run;
}

AncillaOutcome outcome_from_run(const AncillaRun& run, double bias) {
  AncillaOutcome out;
  out.p1 = run.p1;
  out.p0 = run.p0;
  out.joint_state = run.joint_state;
  out.fidelity_with_free_evolution = run.fidelity;
  out.reduced_system_purity = purity(run.reduced_final);
  out.intermediate_purity = purity(run.reduced_intermediate);
  out.disturbance = std::sqrt(run.disturbance_sq);
  if (std::abs(bias) > kZeroInformation) out.inferred_c12 = (out.p1 - out.p0) / bias;
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// JointDistribution

JointDistribution::JointDistribution(std::array<double, 4> p, DistributionKind kind)
    : p_(p), kind_(kind) {
  if (std::abs(total() - 1.0) > kStructureTol) {
    throw InvalidInput("joint distribution does not sum to 1");
  }
  if (kind_ == DistributionKind::Probability) {
    for (double& v : p_) {
      if (v < -kStructureTol) throw InvalidInput("joint distribution has a negative entry");
      v = std::max(v, 0.0);
    }
  }
}

std::size_t JointDistribution::index(Sign s1, Sign s2) {
  return (s1 == Sign::Plus ? 0u : 2u) + (s2 == Sign::Plus ? 0u : 1u);
}

double JointDistribution::total() const { return p_[0] + p_[1] + p_[2] + p_[3]; }

double JointDistribution::correlator() const { return p_[0] - p_[1] - p_[2] + p_[3]; }

double JointDistribution::marginal_first(Sign s1) const {
  return (*this)(s1, Sign::Plus) + (*this)(s1, Sign::Minus);
}

double JointDistribution::marginal_second(Sign s2) const {
  return (*this)(Sign::Plus, s2) + (*this)(Sign::Minus, s2);
}

double JointDistribution::mean_first() const {
  return marginal_first(Sign::Plus) - marginal_first(Sign::Minus);
}

double JointDistribution::mean_second() const {
  return marginal_second(Sign::Plus) - marginal_second(Sign::Minus);
}

// ---------------------------------------------------------------------------
// Sequential and quasi-probability tables

JointDistribution sequential_two_time(const QuantumState& state, const Operator& q,
                                      const Operator& h, double t1, double t2) {
  require_inputs(state, q, h, t1, t2, "sequential_two_time");
  const Matrix rho = state.density();
  std::array<double, 4> p{};
  for (Sign s1 : kSigns) {
    const Matrix p1 = heisenberg(projector(q, s1), h, t1).matrix();
    const Matrix collapsed = p1 * rho * p1;
    for (Sign s2 : kSigns) {
      const Matrix p2 = heisenberg(projector(q, s2), h, t2).matrix();
      p[JointDistribution::index(s1, s2)] = (p2 * collapsed).trace().real();
    }
  }
  return JointDistribution(p, DistributionKind::Probability);
}

JointDistribution quasi_probability(const QuantumState& state, const Operator& q,
                                    const Operator& h, double t1, double t2) {
  require_inputs(state, q, h, t1, t2, "quasi_probability");
  const Matrix rho = state.density();
  std::array<double, 4> p{};
  for (Sign s1 : kSigns) {
    const Matrix p1 = heisenberg(projector(q, s1), h, t1).matrix();
    for (Sign s2 : kSigns) {
      const Matrix p2 = heisenberg(projector(q, s2), h, t2).matrix();
      p[JointDistribution::index(s1, s2)] = (p2 * p1 * rho).trace().real();
    }
  }
  return JointDistribution(p, DistributionKind::QuasiProbability);
}

// ---------------------------------------------------------------------------
// Ancilla protocols

AncillaOutcome ancilla_simple(const QuantumState& state, const Operator& q, const Operator& h,
                              double t1, double t2, const AncillaOptions& options) {
  require_inputs(state, q, h, t1, t2, "ancilla_simple");
  const AncillaRun run =
      run_ancilla_circuit(state, q, h, t1, t2, 1.0, 0.0, options.coupling, options.second_ancilla);
  AncillaOutcome out = outcome_from_run(run, 1.0);
  if (options.second_ancilla) {
    const JointDistribution joint(run.joint, DistributionKind::Probability);
    out.means = SingleTimeMeans{joint.mean_first(), joint.mean_second(), joint};
  }
  return out;
}

void validate_ancilla_amplitudes(Complex alpha, Complex beta) {
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > kStructureTol) {
    throw InvalidInput("ancilla_general: |alpha|^2 + |beta|^2 must equal 1");
  }
  if (std::abs(alpha) > 0.0 && std::abs(beta) > 0.0) {
    const Complex rel = alpha * std::conj(beta);
    if (std::abs(rel.imag()) > kStructureTol * std::abs(rel) || rel.real() <= 0.0) {
      throw InvalidInput("ancilla_general: alpha and beta must share the same phase");
    }
  }
}

AncillaOutcome ancilla_general(const QuantumState& state, const Operator& q, const Operator& h,
                               double t1, double t2, Complex alpha, Complex beta) {
  require_inputs(state, q, h, t1, t2, "ancilla_general");
  validate_ancilla_amplitudes(alpha, beta);
  const AncillaRun run =
      run_ancilla_circuit(state, q, h, t1, t2, alpha, beta, Coupling::Standard, false);
  return outcome_from_run(run, std::norm(alpha) - std::norm(beta));
}

AncillaOutcome ancilla_averaged(const QuantumState& state, const Operator& q, const Operator& h,
                                double t1, double t2) {
  require_inputs(state, q, h, t1, t2, "ancilla_averaged");
  const AncillaRun a = run_ancilla_circuit(state, q, h, t1, t2, 1.0, 0.0, Coupling::Standard, false);
  const AncillaRun b = run_ancilla_circuit(state, q, h, t1, t2, 1.0, 0.0, Coupling::Opposite, false);
  AncillaRun mix;
  mix.p0 = 0.5 * (a.p0 + b.p0);
  mix.p1 = 0.5 * (a.p1 + b.p1);
  mix.reduced_final = 0.5 * (a.reduced_final + b.reduced_final);
  mix.reduced_intermediate = 0.5 * (a.reduced_intermediate + b.reduced_intermediate);
  mix.disturbance_sq = 0.5 * (a.disturbance_sq + b.disturbance_sq);
  if (a.fidelity && b.fidelity) mix.fidelity = 0.5 * (*a.fidelity + *b.fidelity);
  return outcome_from_run(mix, 1.0);
}

// ---------------------------------------------------------------------------
// Record protocol

std::optional<double> RecordOutcome::c12() const {
  if (!p_same) return std::nullopt;
  return 2.0 * *p_same - 1.0;
}

RecordOutcome record_protocol(const QuantumState& psi, const Operator& q, const Operator& h,
                              double t1, double t2, double tol) {
  require_inputs(psi, q, h, t1, t2, "record_protocol");
  const Ket& ket = psi.ket();
  const TwoTimeFrame frame = build_frame(q, h, t1, t2);

  RecordOutcome out;
  out.d_expectation = interference_expectation(frame, psi);

  const Matrix h2 = h.matrix() * h.matrix();
  const auto n = static_cast<Eigen::Index>(h.dim());
  const Complex scale = h2.trace() / static_cast<double>(n);
  if (max_abs(h2 - scale * Matrix::Identity(n, n)) <= kStructureTol) {
    const Ket psi_t1 = unitary(h, t1).matrix() * ket;
    const Ket psi_t2 = unitary(h, t2).matrix() * ket;
    out.decay_overlap = std::norm(psi_t2.dot(psi_t1));
  }

  if (std::abs(out.d_expectation) > tol) return out;

  const HistorySet hs = same_diff_histories(q, h, t1, t2, psi);
  out.decoherent = is_decoherent(hs, tol);
  if (!out.decoherent) return out;
  if (hs.probs[0] <= kVanishingProbability) {
    // No record projector exists for a null history; its probability is zero.
    out.p_same = 0.0;
    return out;
  }
  const Operator r_same = record_projector(hs, 0, tol);
  out.p_same = expectation(r_same.matrix(), ket).real();
  return out;
}

// ---------------------------------------------------------------------------
// No-signalling in time

std::array<double, 2> unmeasured_marginal(const QuantumState& state, const Operator& q,
                                          const Operator& h, double t) {
  require_inputs(state, q, h, t, t, "unmeasured_marginal");
  std::array<double, 2> p{};
  for (Sign s : kSigns) {
    const Matrix ps = heisenberg(projector(q, s), h, t).matrix();
    p[s == Sign::Plus ? 0 : 1] = expectation(ps, state).real();
  }
  return p;
}

double nsit_deviation(const JointDistribution& jd, const QuantumState& state, const Operator& q,
                      const Operator& h, double t2) {
  const std::array<double, 2> p2 = unmeasured_marginal(state, q, h, t2);
  return std::max(std::abs(jd.marginal_second(Sign::Plus) - p2[0]),
                  std::abs(jd.marginal_second(Sign::Minus) - p2[1]));
}

double nsit_deviation(const QuantumState& state, const Operator& q, const Operator& h, double t1,
                      double t2) {
  return nsit_deviation(sequential_two_time(state, q, h, t1, t2), state, q, h, t2);
}

}  // namespace lgsim
