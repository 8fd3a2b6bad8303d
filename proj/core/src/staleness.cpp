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

#include "qvis/staleness.hpp"

#include <cmath>
#include <string>

#include "qvis/error.hpp"
#include "qvis/quorum_pmf.hpp"

namespace qvis {
namespace {

void require_unshifted(const DelayModel& delays) {
  delays.validate();
  if (delays.has_shift()) {
    throw UnsupportedMethod(
        "shifted delays are only supported by the simulator");
  }
}

void require_analytic_support(const QuorumSpec& spec) {
  if (spec.is_partial() && spec.r > 2) {
    throw UnsupportedMethod("no analytic evaluation for partial quorums with R=" +
                            std::to_string(spec.r) + "; use the simulator");
  }
}

StalenessEstimate exact(double p, EstimateMethod method) {
  return {checked_probability(p, "inconsistency probability"), method, {}, {}};
}

// E[f(S)] under `pmf`.
template <typename F>
long double expect(const QuorumSizePmf& pmf, F f) {
  CompensatedSum acc;
  for (int s = pmf.w(); s <= pmf.n(); ++s) {
    acc += static_cast<long double>(f(static_cast<long double>(s))) * pmf[s];
  }
  return acc.value();
}

}  // namespace

std::string_view to_string(EstimateMethod method) noexcept {
  switch (method) {
    case EstimateMethod::closed_form: return "closed_form";
    case EstimateMethod::analytic_general: return "analytic_general";
    case EstimateMethod::worst_case_bound: return "worst_case_bound";
    case EstimateMethod::monte_carlo: return "monte_carlo";
  }
  return "unknown";
}

StalenessEstimate worst_case_bound(const QuorumSpec& spec) {
  spec.validate();
  const auto num = binomial(spec.n - spec.w, spec.r);
  const auto den = binomial(spec.n, spec.r);
  return exact(static_cast<double>(num) / static_cast<double>(den),
               EstimateMethod::worst_case_bound);
}

StalenessEstimate closed_form_pt(const QuorumSpec& spec,
                                 const DelayModel& delays, double t) {
  spec.validate();
  require_unshifted(delays);
  checked_time(t);
  const double lam = delays.write_rate.value();
  const double xi = delays.read_rate.value();
  const bool supported =
      spec.n == 3 && ((spec.w == 1 && spec.r == 1) ||
                      (spec.w == 2 && spec.r == 1) ||
                      (spec.w == 1 && spec.r == 2));
  if (!supported) {
    throw UnsupportedMethod(
        "closed form covers N=3 with (W,R) in {(1,1),(2,1),(1,2)}; got N=" +
        std::to_string(spec.n) + " W=" + std::to_string(spec.w) +
        " R=" + std::to_string(spec.r));
  }
  if (spec.r == 1) {
    const double p = (3 - spec.w) * xi * std::exp(-lam * t) / (lam + 3.0 * xi);
    return exact(p, EstimateMethod::closed_form);
  }
  const double p = 2.0 * xi * xi * std::exp(-2.0 * lam * t) /
                   ((lam + 2.0 * xi) * (2.0 * lam + 3.0 * xi));
  return exact(p, EstimateMethod::closed_form);
}

StalenessEstimate analytic_general_pt(const QuorumSpec& spec,
                                      const DelayModel& delays, double t) {
  spec.validate();
  require_unshifted(delays);
  checked_time(t);
  if (spec.is_strict()) return exact(0.0, EstimateMethod::analytic_general);
  require_analytic_support(spec);

  const long double n = spec.n;
  const auto first = quorum_size_at_read_pmf(spec, delays, t, 1);
  if (spec.r == 1) {
    // The fastest responder is a uniform replica independent of S.
    const long double p = expect(first, [n](long double s) { return 1.0L - s / n; });
    return exact(static_cast<double>(p), EstimateMethod::analytic_general);
  }

  // R = 2. The ordered responder pair (r1, r2) is uniform and independent of
  // the write delays. Counting pairs with r1 outside S1 and r2 outside S2,
  // where S1 = S(t + Z_(1)) is a subset of S2 = S(t + Z_(2)):
  //   r1 outside S2: (N - S2)(N - S2 - 1) pairs,
  //   r1 in S2 \ S1: (S2 - S1)(N - S2) pairs,
  // total (N - S2)(N - 1) - S1 (N - S2). Given S1, each of the N - S1 missing
  // replicas is still missing at t + Z_(2) with probability
  //   kappa = E[exp(-lambda (Z_(2) - Z_(1)))] = (N-1) xi / ((N-1) xi + lambda),
  // independently of S1, so E[S1 (N - S2)] = kappa E[S1 (N - S1)].
  const auto second = quorum_size_at_read_pmf(spec, delays, t, 2);
  const long double lam = delays.write_rate.value();
  const long double xi = delays.read_rate.value();
  const long double kappa = (n - 1.0L) * xi / ((n - 1.0L) * xi + lam);
  const long double missing_at_second =
      expect(second, [n](long double s) { return n - s; });
  const long double cross =
      expect(first, [n](long double s) { return s * (n - s); });
  const long double p =
      ((n - 1.0L) * missing_at_second - kappa * cross) / (n * (n - 1.0L));
  return exact(static_cast<double>(p), EstimateMethod::analytic_general);
}

StalenessEstimate instantaneous_read_limit(const QuorumSpec& spec, Rate lambda,
                                           double t) {
  spec.validate();
  checked_time(t);
  if (spec.is_strict()) return exact(0.0, EstimateMethod::analytic_general);
  require_analytic_support(spec);
  const auto pmf = quorum_size_pmf(spec, lambda, t);
  const auto total = static_cast<long double>(binomial(spec.n, spec.r));
  const int n = spec.n;
  const int r = spec.r;
  // All R responders see S(t); stale iff they all avoid the quorum.
  const long double p = expect(pmf, [n, r, total](long double s) {
    return static_cast<long double>(binomial(n - static_cast<int>(s), r)) / total;
  });
  return exact(static_cast<double>(p), EstimateMethod::analytic_general);
}

}  // namespace qvis
