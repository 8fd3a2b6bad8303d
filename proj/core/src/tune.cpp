// Copyright 2026 The qvis Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qvis/tune.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

#include "qvis/error.hpp"
#include "qvis/sim.hpp"

namespace qvis {
namespace {

// Value compared against epsilon: the estimate itself for analytic methods,
// the upper end of the 95% Wilson interval for simulation.
double judged_probability(const StalenessEstimate& e) {
  if (e.method != EstimateMethod::monte_carlo || !e.trials) return e.probability;
  const auto trials = *e.trials;
  const auto stale = static_cast<std::uint64_t>(
      std::llround(e.probability * static_cast<double>(trials)));
  return sim::wilson_interval(stale, trials).upper;
}

double objective_key(const TuningEntry& e, Objective objective) {
  switch (objective) {
    case Objective::min_read_latency: return e.expected_read_latency;
    case Objective::min_write_latency: return e.expected_write_latency;
    case Objective::min_sum: return e.expected_read_latency + e.expected_write_latency;
  }
  return 0.0;
}

}  // namespace

double expected_latency(int n, int quorum_size, Rate rate, double shift) {
  if (n < 1 || quorum_size < 1 || quorum_size > n) {
    throw InvalidArgument("expected latency needs 1 <= quorum size <= n");
  }
  double harmonic = 0.0;
  for (int i = n - quorum_size + 1; i <= n; ++i) harmonic += 1.0 / i;
  return shift + harmonic / rate.value();
}

std::optional<VisibilityDelay> min_visibility_delay(const QuorumSpec& spec,
                                                    const DelayModel& delays,
                                                    double epsilon,
                                                    const SimOptions& sim) {
  spec.validate();
  delays.validate();
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw InvalidArgument("epsilon must lie in (0, 1]");
  }
  const Method method = resolve_method(spec, delays);
  auto eval = [&](double t) { return evaluate_pt(spec, delays, t, method, sim); };
  auto ok = [epsilon](const StalenessEstimate& e) {
    return judged_probability(e) <= epsilon;
  };

  auto at_zero = eval(0.0);
  if (ok(at_zero)) return VisibilityDelay{0.0, at_zero};

  const double mean = delays.write_rate.mean();
  const double cap = kHorizonCapMeans * mean;
  double lo = 0.0;
  double hi = mean;
  auto at_hi = eval(hi);
  while (!ok(at_hi)) {
    if (hi >= cap) return std::nullopt;
    lo = hi;
    hi = std::min(2.0 * hi, cap);
    at_hi = eval(hi);
  }
  // Invariant: p(lo) > epsilon >= p(hi).
  while (hi - lo > kBisectionTolerance) {
    const double mid = 0.5 * (lo + hi);
    auto at_mid = eval(mid);
    if (ok(at_mid)) {
      hi = mid;
      at_hi = std::move(at_mid);
    } else {
      lo = mid;
    }
  }
  return VisibilityDelay{hi, at_hi};
}

std::optional<Objective> parse_objective(std::string_view name) noexcept {
  if (name == "min_read_latency") return Objective::min_read_latency;
  if (name == "min_write_latency") return Objective::min_write_latency;
  if (name == "min_sum") return Objective::min_sum;
  return std::nullopt;
}

std::string_view to_string(Objective objective) noexcept {
  switch (objective) {
    case Objective::min_read_latency: return "min_read_latency";
    case Objective::min_write_latency: return "min_write_latency";
    case Objective::min_sum: return "min_sum";
  }
  return "unknown";
}

void TuningRequest::validate() const {
  QuorumSpec{n, 1, 1}.validate();
  delays.validate();
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw InvalidArgument("epsilon must lie in (0, 1]");
  }
  if (!std::isfinite(t_max) || t_max < 0.0) {
    throw InvalidArgument("t_max must be finite and >= 0");
  }
}

bool dominates(const TuningEntry& a, const TuningEntry& b) noexcept {
  const bool no_worse = a.expected_write_latency <= b.expected_write_latency &&
                        a.expected_read_latency <= b.expected_read_latency &&
                        a.t_min <= b.t_min;
  const bool better = a.expected_write_latency < b.expected_write_latency ||
                      a.expected_read_latency < b.expected_read_latency ||
                      a.t_min < b.t_min;
  return no_worse && better;
}

TuningResult tune(const TuningRequest& request) {
  request.validate();
  const auto& d = request.delays;
  std::vector<TuningEntry> feasible;
  for (int w = 1; w <= request.n; ++w) {
    for (int r = 1; r <= request.n; ++r) {
      const QuorumSpec spec{request.n, w, r};
      const auto delay = min_visibility_delay(spec, d, request.epsilon, request.sim);
      if (!delay || delay->t > request.t_max) continue;
      feasible.push_back({w, r, delay->t, delay->at_t.probability,
                          expected_latency(request.n, w, d.write_rate, d.write_shift),
                          expected_latency(request.n, r, d.read_rate, d.read_shift),
                          delay->at_t.method});
    }
  }

  TuningResult result;
  for (const auto& candidate : feasible) {
    const bool dominated = std::any_of(
        feasible.begin(), feasible.end(),
        [&candidate](const TuningEntry& other) { return dominates(other, candidate); });
    if (!dominated) result.pareto.push_back(candidate);
  }
  const Objective objective = request.objective;
  std::sort(result.pareto.begin(), result.pareto.end(),
            [objective](const TuningEntry& a, const TuningEntry& b) {
              return std::make_tuple(objective_key(a, objective), a.t_min, a.w + a.r, a.w) <
                     std::make_tuple(objective_key(b, objective), b.t_min, b.w + b.r, b.w);
            });
  return result;
}

}  // namespace qvis
