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

// Distribution of the write-quorum size S(t): the number of replicas holding
// a written value t time units after the write completed. S(0) = W, and S
// grows as the remaining N - W replicas receive the write.

#ifndef QVIS_QUORUM_PMF_HPP_
#define QVIS_QUORUM_PMF_HPP_

#include <span>
#include <vector>

#include "qvis/dist_core.hpp"
#include "qvis/model.hpp"

namespace qvis {

// Probability mass over s in {w, ..., n}, stored densely. Tiny masses are
// kept as computed rather than zeroed.
class QuorumSizePmf {
 public:
  // Throws InvalidArgument if masses.size() != n - w + 1, any mass lies
  // outside [0, 1], or the total deviates from 1 by more than 1e-9.
  QuorumSizePmf(int w, std::vector<double> masses);

  // Point mass at s = n.
  static QuorumSizePmf degenerate(int n);

  int w() const noexcept { return w_; }
  int n() const noexcept { return w_ + static_cast<int>(masses_.size()) - 1; }
  std::span<const double> masses() const noexcept { return masses_; }

  // Pr[S = s]; zero outside the support.
  double operator[](int s) const noexcept;

  // Sum of all masses (1 up to rounding).
  double total() const noexcept;

 private:
  int w_;
  std::vector<double> masses_;
};

inline constexpr double kPmfNormalizationTolerance = 1e-9;

// Pr[S(t) = s] for s in {W..N} under i.i.d. exp(lambda) write delays.
// Only spec.n and spec.w are used.
QuorumSizePmf quorum_size_pmf(const QuorumSpec& spec, Rate lambda, double t);

// Pr[S(t + Z_(j)) = s]: the quorum size seen by the j-th fastest read
// responder. `j` is the rank of the responder among the N read delays
// (order-statistic index, 1 = fastest), not a server id. Requires
// 1 <= j <= spec.r and unshifted delays.
QuorumSizePmf quorum_size_at_read_pmf(const QuorumSpec& spec,
                                      const DelayModel& delays, double t,
                                      int j);

// E[S].
double mean_quorum_size(const QuorumSizePmf& pmf);

}  // namespace qvis

#endif  // QVIS_QUORUM_PMF_HPP_
