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

// Method selection for staleness queries.

#ifndef QVIS_EVALUATE_HPP_
#define QVIS_EVALUATE_HPP_

#include <cstdint>
#include <optional>
#include <string_view>

#include "qvis/model.hpp"
#include "qvis/staleness.hpp"

namespace qvis {

enum class Method { automatic, closed, general, bound, sim };

std::optional<Method> parse_method(std::string_view name) noexcept;
std::string_view to_string(Method method) noexcept;

struct SimOptions {
  std::uint64_t trials = 200000;
  std::uint64_t seed = 0;
  std::uint32_t chunks = 1;
};

// automatic picks the closed form when it applies, then the general analytic
// evaluator, then the simulator (R >= 3 partial quorums or shifted delays).
// bound ignores delays and t.
StalenessEstimate evaluate_pt(const QuorumSpec& spec, const DelayModel& delays,
                              double t, Method method,
                              const SimOptions& sim = {});

// Method that `automatic` resolves to for this configuration.
Method resolve_method(const QuorumSpec& spec, const DelayModel& delays);

}  // namespace qvis

#endif  // QVIS_EVALUATE_HPP_
