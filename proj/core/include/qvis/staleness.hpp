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

// Probability that a read issued t time units after a write completed
// returns stale data, i.e. all R fastest read responders are replicas the
// write has not reached yet at their response time.

#ifndef QVIS_STALENESS_HPP_
#define QVIS_STALENESS_HPP_

#include <cstdint>
#include <optional>
#include <string_view>

#include "qvis/dist_core.hpp"
#include "qvis/model.hpp"

namespace qvis {

enum class EstimateMethod {
  closed_form,
  analytic_general,
  worst_case_bound,
  monte_carlo,
};

std::string_view to_string(EstimateMethod method) noexcept;

struct StalenessEstimate {
  double probability = 0.0;
  EstimateMethod method = EstimateMethod::analytic_general;
  // Set iff method == monte_carlo.
  std::optional<double> ci_halfwidth;
  std::optional<std::uint64_t> trials;
};

// Non-expanding quorum with instantaneous reads: C(N-W, R) / C(N, R).
// Zero for strict quorums.
StalenessEstimate worst_case_bound(const QuorumSpec& spec);

// Closed forms for N = 3 and (W, R) in {(1,1), (2,1), (1,2)}:
//   (1,1): 2 xi e^{-lambda t} / (lambda + 3 xi)
//   (2,1):   xi e^{-lambda t} / (lambda + 3 xi)
//   (1,2): 2 xi^2 e^{-2 lambda t} / ((lambda + 2 xi)(2 lambda + 3 xi))
// Throws UnsupportedMethod for any other configuration or shifted delays.
StalenessEstimate closed_form_pt(const QuorumSpec& spec,
                                 const DelayModel& delays, double t);

// Any N <= kMaxReplicas with R in {1, 2}, assembled from the quorum size
// PMFs at the first and second read response times. Strict quorums return 0
// for every R. Partial quorums with R >= 3 throw UnsupportedMethod; use the
// simulator.
StalenessEstimate analytic_general_pt(const QuorumSpec& spec,
                                      const DelayModel& delays, double t);

// Limit of analytic_general_pt as the read rate grows without bound: every
// responder observes S(t). Same support as analytic_general_pt.
StalenessEstimate instantaneous_read_limit(const QuorumSpec& spec, Rate lambda,
                                           double t);

}  // namespace qvis

#endif  // QVIS_STALENESS_HPP_
