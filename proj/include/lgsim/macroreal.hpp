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
#include <string>
#include <variant>

#include "lgsim/lg.hpp"

namespace lgsim {

/// Q(t) = sign cos(omega t + phi), phi random. Its unkicked correlator is
/// the triangle wave 1 - 2|omega tau|/pi on [0, pi], extended evenly and
/// 2pi-periodically.
struct SquareWave {
  double omega = 1.0;
};

/// Two-state jump process flipping at rate `rate`.
struct Telegraph {
  double rate = 0.0;
};

using HiddenDynamics = std::variant<SquareWave, Telegraph>;

/// When a detector coupled to Q = coupling interacts with a trajectory in
/// that state, with probability `strength` the trajectory's subsequent phase
/// (square wave) or state (telegraph) is redrawn uniformly. Trajectories in
/// the other state are untouched.
struct Kick {
  Sign coupling = Sign::Plus;
  double strength = 0.0;
};

struct HiddenModel {
  HiddenDynamics dynamics = SquareWave{};
  Kick kick;
  double p_plus = 0.5;  // probability that Q(0) = +1

  /// Throws InvalidInput for strength outside [0,1], negative rates,
  /// p_plus outside [0,1] or non-finite parameters.
  void validate() const;
};

std::string describe(const HiddenModel& model);

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(n_runs)
  std::uint64_t n_runs = 0;
  std::uint64_t seed = 0;
};

/// Counter-based generator: the stream for run r of stream s under master
/// seed k is SplitMix64 started from mix(mix(k + gamma*(s+1)) ^ (r * c)).
/// Every run owns its stream, so results do not depend on how runs are
/// batched across threads.
class RunRng {
 public:
  RunRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t run);
  std::uint64_t next();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

 private:
  std::uint64_t state_;
};

enum class Context { Unmeasured, MeasuredAtFirst };

struct McOptions {
  std::uint64_t n_runs = 100000;
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;
  unsigned threads = 1;
  std::uint64_t batch_size = 8192;
};

struct PairSample {
  Context context = Context::MeasuredAtFirst;
  double t_first = 0.0;
  double t_second = 0.0;
  std::array<std::uint64_t, 4> counts{};  // ++, +-, -+, --
  std::uint64_t n_runs = 0;
  std::uint64_t seed = 0;

  JointDistribution empirical() const;
  McEstimate correlator() const;
  McEstimate mean_first() const;
  McEstimate mean_second() const;
};

/// Samples n_runs trajectories and records (Q(t_first), Q(t_second)). In
/// the MeasuredAtFirst context the detector interacts at t_first and may
/// kick the trajectory after Q(t_first) has been recorded. Requires
/// t_first < t_second.
PairSample simulate_pair(const HiddenModel& model, double t_first, double t_second,
                         Context context, const McOptions& options = {});

struct EmpiricalLgReport {
  LgReport report;
  McEstimate c12;
  McEstimate c23;
  McEstimate c13;
  double delta0_stderr = 0.0;
  LgMargins standard_stderr;
  LgMargins modified_stderr;
  std::array<PairSample, 3> samples{};  // (1,2), (2,3), (1,3)
};

/// Runs the three pair experiments, each measured at its first time, on
/// streams options.stream + 1, + 2, + 3. Requires t1 < t2 < t3.
EmpiricalLgReport lg_suite(const HiddenModel& model, double t1, double t2, double t3,
                           const McOptions& options = {});

}  // namespace lgsim
