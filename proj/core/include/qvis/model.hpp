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

#ifndef QVIS_MODEL_HPP_
#define QVIS_MODEL_HPP_

#include "qvis/dist_core.hpp"

namespace qvis {

// N replicas; a write completes after W acknowledgments, a read after R
// responses. W + R <= N is a partial quorum, W + R > N a strict one.
struct QuorumSpec {
  int n = 3;
  int w = 1;
  int r = 1;

  // Throws InvalidArgument unless 1 <= w, r <= n <= kMaxReplicas.
  void validate() const;

  bool is_partial() const noexcept { return w + r <= n; }
  bool is_strict() const noexcept { return w + r > n; }

  friend bool operator==(const QuorumSpec&, const QuorumSpec&) = default;
};

// Per-replica write delay ~ write_shift + exp(write_rate) and read delay ~
// read_shift + exp(read_rate), all i.i.d. Shifts are only understood by the
// simulator; analytic evaluators reject them.
struct DelayModel {
  Rate write_rate{1.0};
  Rate read_rate{1.0};
  double write_shift = 0.0;
  double read_shift = 0.0;

  void validate() const;
  bool has_shift() const noexcept {
    return write_shift != 0.0 || read_shift != 0.0;
  }
};

}  // namespace qvis

#endif  // QVIS_MODEL_HPP_
