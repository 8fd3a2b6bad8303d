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

#include "qvis/quorum_pmf.hpp"

#include <cmath>
#include <algorithm>
#include <string>

#include "qvis/error.hpp"

namespace qvis {
namespace {

long double sign(int k) { return (k % 2 == 0) ? 1.0L : -1.0L; }

// Coefficient of the i-th term in Pr[S = s] for s > W:
// (-1)^{s-i} C(N-W, N-i+1) C(N-i+1, s-i+1).
long double expansion_coefficient(int n, int w, int s, int i) {
  return sign(s - i) * static_cast<long double>(binomial(n - w, n - i + 1)) *
         static_cast<long double>(binomial(n - i + 1, s - i + 1));
}

// E[exp(-a Z_(j))] for the j-th order statistic of n i.i.d. exp(xi), written
// as the alternating sum obtained by integrating against its density:
//   sum_{l=1}^{j} C(n,j) C(j,l) (-1)^{j-l} xi_{n-l+1} / (xi_l + a),
// with xi_k = (n - k + 1) xi.
long double read_order_transform(int n, int j, double xi, long double a) {
  CompensatedSum acc;
  const long double cnj = static_cast<long double>(binomial(n, j));
  for (int l = 1; l <= j; ++l) {
    const long double xi_fast = static_cast<long double>(n - l + 1) * xi;
    const long double xi_slow = static_cast<long double>(l) * xi;
    acc += cnj * static_cast<long double>(binomial(j, l)) * sign(j - l) *
           xi_slow / (xi_fast + a);
  }
  return acc.value();
}

// Shared evaluation of Pr[S(t + D) = s] where `survival(rate)` returns
// E[exp(-rate (t + D))] for the delay D of interest (D = 0 for a fixed
// offset).
template <typename Survival>
QuorumSizePmf evaluate_pmf(int n, int w, Rate lambda, Survival survival) {
  if (w == n) return QuorumSizePmf::degenerate(n);
  std::vector<double> masses;
  masses.reserve(static_cast<std::size_t>(n - w + 1));
  const long double first_rate = spacing_rate(n, w + 1, lambda).value();
  masses.push_back(
      checked_probability(survival(first_rate), "Pr[S = W]"));
  for (int s = w + 1; s <= n; ++s) {
    CompensatedSum acc;
    // The i = N + 1 summand has rate 0, so 1 - E[e^{0}] = 0 and it drops.
    const int upper = std::min(s + 1, n);
    for (int i = w + 1; i <= upper; ++i) {
      const long double rate = spacing_rate(n, i, lambda).value();
      acc += expansion_coefficient(n, w, s, i) * (1.0L - survival(rate));
    }
    masses.push_back(checked_probability(acc.value(), "Pr[S = s]"));
  }
  return QuorumSizePmf(w, std::move(masses));
}

}  // namespace

QuorumSizePmf::QuorumSizePmf(int w, std::vector<double> masses)
    : w_(w), masses_(std::move(masses)) {
  if (w_ < 1 || masses_.empty()) {
    throw InvalidArgument("quorum size PMF needs w >= 1 and non-empty support");
  }
  for (double m : masses_) {
    if (!(m >= 0.0 && m <= 1.0)) {
      throw InvalidArgument("quorum size PMF mass outside [0, 1]");
    }
  }
  const double sum = total();
  if (std::fabs(sum - 1.0) > kPmfNormalizationTolerance) {
    throw NumericalInstability("quorum size PMF sums to " +
                               std::to_string(sum));
  }
}

QuorumSizePmf QuorumSizePmf::degenerate(int n) { return QuorumSizePmf(n, {1.0}); }

double QuorumSizePmf::operator[](int s) const noexcept {
  if (s < w_ || s > n()) return 0.0;
  return masses_[static_cast<std::size_t>(s - w_)];
}

double QuorumSizePmf::total() const noexcept {
  CompensatedSum acc;
  for (double m : masses_) acc += m;
  return static_cast<double>(acc.value());
}

QuorumSizePmf quorum_size_pmf(const QuorumSpec& spec, Rate lambda, double t) {
  spec.validate();
  checked_time(t);
  return evaluate_pmf(spec.n, spec.w, lambda, [t](long double rate) {
    return std::exp(-rate * static_cast<long double>(t));
  });
}

QuorumSizePmf quorum_size_at_read_pmf(const QuorumSpec& spec,
                                      const DelayModel& delays, double t,
                                      int j) {
  spec.validate();
  delays.validate();
  checked_time(t);
  if (j < 1 || j > spec.r) {
    throw InvalidArgument("read responder rank j must satisfy 1 <= j <= R, got j=" +
                          std::to_string(j) + " R=" + std::to_string(spec.r));
  }
  if (delays.has_shift()) {
    throw UnsupportedMethod(
        "shifted delays are only supported by the simulator");
  }
  const int n = spec.n;
  const double xi = delays.read_rate.value();
  return evaluate_pmf(n, spec.w, delays.write_rate,
                      [n, j, xi, t](long double rate) {
                        return std::exp(-rate * static_cast<long double>(t)) *
                               read_order_transform(n, j, xi, rate);
                      });
}

double mean_quorum_size(const QuorumSizePmf& pmf) {
  CompensatedSum acc;
  for (int s = pmf.w(); s <= pmf.n(); ++s) {
    acc += static_cast<long double>(s) * pmf[s];
  }
  return static_cast<double>(acc.value());
}

}  // namespace qvis
