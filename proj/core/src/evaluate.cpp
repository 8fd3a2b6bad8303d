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

#include "qvis/evaluate.hpp"

#include "qvis/sim.hpp"

namespace qvis {

std::optional<Method> parse_method(std::string_view name) noexcept {
  if (name == "auto") return Method::automatic;
  if (name == "closed") return Method::closed;
  if (name == "general") return Method::general;
  if (name == "bound") return Method::bound;
  if (name == "sim") return Method::sim;
  return std::nullopt;
}

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::automatic: return "auto";
    case Method::closed: return "closed";
    case Method::general: return "general";
    case Method::bound: return "bound";
    case Method::sim: return "sim";
  }
  return "unknown";
}

Method resolve_method(const QuorumSpec& spec, const DelayModel& delays) {
  if (delays.has_shift()) return Method::sim;
  if (spec.n == 3 && spec.w + spec.r <= 3) return Method::closed;
  if (spec.is_strict() || spec.r <= 2) return Method::general;
  return Method::sim;
}

StalenessEstimate evaluate_pt(const QuorumSpec& spec, const DelayModel& delays,
                              double t, Method method, const SimOptions& sim) {
  if (method == Method::automatic) method = resolve_method(spec, delays);
  switch (method) {
    case Method::closed: return closed_form_pt(spec, delays, t);
    case Method::general: return analytic_general_pt(spec, delays, t);
    case Method::bound: return worst_case_bound(spec);
    case Method::sim:
    case Method::automatic: break;
  }
  const auto result = sim::estimate_pt(
      {spec, delays, t, sim.trials, sim.seed, sim.chunks});
  return {result.estimate, EstimateMethod::monte_carlo, result.ci95_halfwidth,
          result.trials};
}

}  // namespace qvis
