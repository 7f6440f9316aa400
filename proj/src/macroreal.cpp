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

#include "lgsim/macroreal.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "parallel.hpp"

namespace lgsim {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kRunMultiplier = 0xD1B54A32D192ED03ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double sign_of(double x) { return x >= 0.0 ? 1.0 : -1.0; }

// Probability that a rate-`rate` telegraph process flips an odd number of
// times in `dt`.
double odd_flip_probability(double rate, double dt) {
  return 0.5 * (1.0 - std::exp(-2.0 * rate * dt));
}

McEstimate mean_of_pm_one(double mean, std::uint64_t n, std::uint64_t seed) {
  McEstimate e;
  e.value = mean;
  e.n_runs = n;
  e.seed = seed;
  if (n > 1) {
    const double var = static_cast<double>(n) / static_cast<double>(n - 1) * (1.0 - mean * mean);
    e.std_error = std::sqrt(std::max(var, 0.0) / static_cast<double>(n));
  }
  return e;
}

struct RunOutcome {
  double q_first;
  double q_second;
};

// Each run consumes a fixed number of draws, and the pre-detection draws come
// first, so Q(t_first) is identical across contexts for a given run index.
RunOutcome sample_square_wave(const SquareWave& w, const HiddenModel& m, double ti, double tj,
                              bool measured, RunRng& rng) {
  constexpr double pi = std::numbers::pi;
  const bool plus = rng.uniform() < m.p_plus;
  const double phi = (plus ? -0.5 * pi : 0.5 * pi) + pi * rng.uniform();
  const double qi = sign_of(std::cos(w.omega * ti + phi));
  const double kick_draw = rng.uniform();
  const double new_phase = 2.0 * pi * rng.uniform();
  const bool kicked = measured && qi == value(m.kick.coupling) && kick_draw < m.kick.strength;
  const double qj = kicked ? sign_of(std::cos(w.omega * (tj - ti) + new_phase))
                           : sign_of(std::cos(w.omega * tj + phi));
  return {qi, qj};
}

RunOutcome sample_telegraph(const Telegraph& tg, const HiddenModel& m, double ti, double tj,
                            bool measured, RunRng& rng) {
  double q = rng.uniform() < m.p_plus ? 1.0 : -1.0;
  if (rng.uniform() < odd_flip_probability(tg.rate, ti)) q = -q;
  const double qi = q;
  const double kick_draw = rng.uniform();
  const double new_state = rng.uniform() < 0.5 ? 1.0 : -1.0;
  if (measured && qi == value(m.kick.coupling) && kick_draw < m.kick.strength) q = new_state;
  if (rng.uniform() < odd_flip_probability(tg.rate, tj - ti)) q = -q;
  return {qi, q};
}

}  // namespace

void HiddenModel::validate() const {
  if (!(kick.strength >= 0.0 && kick.strength <= 1.0)) {
    throw InvalidInput("hidden model: kick strength must lie in [0, 1]");
  }
  if (!(p_plus >= 0.0 && p_plus <= 1.0)) {
    throw InvalidInput("hidden model: p_plus must lie in [0, 1]");
  }
  if (const auto* w = std::get_if<SquareWave>(&dynamics)) {
    if (!std::isfinite(w->omega)) throw InvalidInput("hidden model: omega must be finite");
  } else if (const auto* tg = std::get_if<Telegraph>(&dynamics)) {
    if (!(tg->rate >= 0.0) || !std::isfinite(tg->rate)) {
      throw InvalidInput("hidden model: telegraph rate must be finite and nonnegative");
    }
  }
}

std::string describe(const HiddenModel& model) {
  std::ostringstream os;
  if (const auto* w = std::get_if<SquareWave>(&model.dynamics)) {
    os << "square_wave(omega=" << w->omega << ")";
  } else {
    os << "telegraph(rate=" << std::get<Telegraph>(model.dynamics).rate << ")";
  }
  os << " kick(sign=" << static_cast<int>(model.kick.coupling)
     << ", strength=" << model.kick.strength << ") p_plus=" << model.p_plus;
  return os.str();
}

RunRng::RunRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t run)
    : state_(mix64(mix64(seed + kGamma * (stream + 1)) ^ (run * kRunMultiplier))) {}

std::uint64_t RunRng::next() {
  state_ += kGamma;
  return mix64(state_);
}

double RunRng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

JointDistribution PairSample::empirical() const {
  if (n_runs == 0) throw UndefinedResult("pair sample has no runs");
  std::array<double, 4> p{};
  for (std::size_t i = 0; i < 4; ++i) {
    p[i] = static_cast<double>(counts[i]) / static_cast<double>(n_runs);
  }
  return JointDistribution(p, DistributionKind::Probability);
}

McEstimate PairSample::correlator() const {
  return mean_of_pm_one(empirical().correlator(), n_runs, seed);
}

McEstimate PairSample::mean_first() const {
  return mean_of_pm_one(empirical().mean_first(), n_runs, seed);
}

McEstimate PairSample::mean_second() const {
  return mean_of_pm_one(empirical().mean_second(), n_runs, seed);
}

PairSample simulate_pair(const HiddenModel& model, double t_first, double t_second,
                         Context context, const McOptions& options) {
  model.validate();
  if (!(t_first < t_second)) throw InvalidInput("simulate_pair: requires t_first < t_second");
  if (options.n_runs == 0) throw InvalidInput("simulate_pair: n_runs must be at least 1");
  const std::uint64_t batch = std::max<std::uint64_t>(options.batch_size, 1);
  const std::uint64_t n_batches = (options.n_runs + batch - 1) / batch;
  const bool measured = context == Context::MeasuredAtFirst;

  std::vector<std::array<std::uint64_t, 4>> partial(n_batches);
  detail::parallel_for(n_batches, options.threads, [&](std::size_t b) {
    std::array<std::uint64_t, 4> local{};
    const std::uint64_t begin = b * batch;
    const std::uint64_t end = std::min(options.n_runs, begin + batch);
    for (std::uint64_t run = begin; run < end; ++run) {
      RunRng rng(options.seed, options.stream, run);
      const RunOutcome o = std::visit(
          [&](const auto& dyn) {
            using T = std::decay_t<decltype(dyn)>;
            if constexpr (std::is_same_v<T, SquareWave>) {
              return sample_square_wave(dyn, model, t_first, t_second, measured, rng);
            } else {
              return sample_telegraph(dyn, model, t_first, t_second, measured, rng);
            }
          },
          model.dynamics);
      const Sign s1 = o.q_first > 0.0 ? Sign::Plus : Sign::Minus;
      const Sign s2 = o.q_second > 0.0 ? Sign::Plus : Sign::Minus;
      ++local[JointDistribution::index(s1, s2)];
    }
    partial[b] = local;
  });

  PairSample out;
  out.context = context;
  out.t_first = t_first;
  out.t_second = t_second;
  out.n_runs = options.n_runs;
  out.seed = options.seed;
  for (const auto& local : partial) {
    for (std::size_t i = 0; i < 4; ++i) out.counts[i] += local[i];
  }
  return out;
}

EmpiricalLgReport lg_suite(const HiddenModel& model, double t1, double t2, double t3,
                           const McOptions& options) {
  if (!(t1 < t2 && t2 < t3)) throw InvalidInput("lg_suite: requires t1 < t2 < t3");
  const std::array<std::pair<double, double>, 3> times{{{t1, t2}, {t2, t3}, {t1, t3}}};
  EmpiricalLgReport out;
  for (std::size_t i = 0; i < 3; ++i) {
    McOptions o = options;
    o.stream = options.stream + 1 + i;
    out.samples[i] =
        simulate_pair(model, times[i].first, times[i].second, Context::MeasuredAtFirst, o);
  }
  const PairSample& s12 = out.samples[0];
  const PairSample& s23 = out.samples[1];
  const PairSample& s13 = out.samples[2];
  out.c12 = s12.correlator();
  out.c23 = s23.correlator();
  out.c13 = s13.correlator();

  const McEstimate q2_12 = s12.mean_second();
  const McEstimate q2_23 = s23.mean_first();
  const McEstimate q3_13 = s13.mean_second();
  const McEstimate q3_23 = s23.mean_second();
  out.report = assemble_report(out.c12.value, out.c23.value, out.c13.value,
                               {q2_12.value, q2_23.value, q3_13.value, q3_23.value});

  for (std::size_t i = 0; i < 3; ++i) {
    PairMeasurement& pm = out.report.pairs[i];
    pm.protocol.kind = ProtocolKind::Classical;
    pm.t_first = times[i].first;
    pm.t_second = times[i].second;
    const JointDistribution jd = out.samples[i].empirical();
    pm.p_table = {{"++", jd(Sign::Plus, Sign::Plus)},
                  {"+-", jd(Sign::Plus, Sign::Minus)},
                  {"-+", jd(Sign::Minus, Sign::Plus)},
                  {"--", jd(Sign::Minus, Sign::Minus)}};
    pm.c = jd.correlator();
    pm.diagnostics = {{"n_runs", static_cast<double>(out.samples[i].n_runs)},
                      {"mean_first", jd.mean_first()},
                      {"mean_second", jd.mean_second()}};
  }

  auto sq = [](double x) { return x * x; };
  const double corr_var = sq(out.c12.std_error) + sq(out.c23.std_error) + sq(out.c13.std_error);
  out.delta0_stderr = 0.5 * std::sqrt(sq(q2_12.std_error) + sq(q2_23.std_error) +
                                      sq(q3_13.std_error) + sq(q3_23.std_error));
  // Both sides are +-1 combinations of the three correlators (the minimum
  // enters with net coefficient +1), so they share one error.
  const double margin_se = std::sqrt(corr_var);
  const double mod_se = std::sqrt(corr_var + 4.0 * sq(out.delta0_stderr));
  out.standard_stderr = {margin_se, margin_se};
  out.modified_stderr = {mod_se, mod_se};
  return out;
}

}  // namespace lgsim
