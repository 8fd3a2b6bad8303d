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

// Search over (W, R, t) for configurations whose stale-read probability stays
// below a target, ranked by expected quorum latency.

#ifndef QVIS_TUNE_HPP_
#define QVIS_TUNE_HPP_

#include <optional>
#include <string_view>
#include <vector>

#include "qvis/evaluate.hpp"
#include "qvis/model.hpp"
#include "qvis/staleness.hpp"

namespace qvis {

// E[k-th smallest of n i.i.d. (shift + exp(rate))]
//   = shift + (1/rate) * sum_{i=n-k+1}^{n} 1/i.
double expected_latency(int n, int quorum_size, Rate rate, double shift = 0.0);

struct VisibilityDelay {
  double t = 0.0;
  StalenessEstimate at_t;
};

inline constexpr double kBisectionTolerance = 1e-6;
inline constexpr double kHorizonCapMeans = 1e3;

// Smallest t >= 0 with p_t <= epsilon, by bisection to kBisectionTolerance.
// The search horizon starts at one mean write delay and doubles up to
// kHorizonCapMeans means; nullopt if p stays above epsilon there. Simulator
// estimates (R >= 3 partial quorums, shifted delays) are judged by their
// Wilson upper bound and use the same seed at every t.
std::optional<VisibilityDelay> min_visibility_delay(const QuorumSpec& spec,
                                                    const DelayModel& delays,
                                                    double epsilon,
                                                    const SimOptions& sim = {});

enum class Objective { min_read_latency, min_write_latency, min_sum };

std::optional<Objective> parse_objective(std::string_view name) noexcept;
std::string_view to_string(Objective objective) noexcept;

struct TuningRequest {
  int n = 3;
  DelayModel delays;
  double epsilon = 0.1;
  double t_max = 0.0;
  Objective objective = Objective::min_sum;
  SimOptions sim;

  void validate() const;
};

struct TuningEntry {
  int w = 1;
  int r = 1;
  double t_min = 0.0;
  double p_at_t = 0.0;
  double expected_write_latency = 0.0;
  double expected_read_latency = 0.0;
  EstimateMethod method = EstimateMethod::analytic_general;
};

struct TuningResult {
  // Non-dominated in (write latency, read latency, t_min), ordered by the
  // objective, then smaller t, then smaller w + r, then smaller w.
  std::vector<TuningEntry> pareto;
};

// True if `a` is no worse than `b` in all three criteria and better in one.
bool dominates(const TuningEntry& a, const TuningEntry& b) noexcept;

TuningResult tune(const TuningRequest& request);

}  // namespace qvis

#endif  // QVIS_TUNE_HPP_
