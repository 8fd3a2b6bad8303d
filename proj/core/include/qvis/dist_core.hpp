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

// Exponential order-statistic spacings and the hypoexponential distribution
// (sum of independent exponentials with pairwise distinct rates).
//
// For X_1..X_n i.i.d. exp(lambda), the spacings Y_i = X_(i) - X_(i-1) are
// independent with Y_i ~ exp((n - i + 1) * lambda). Any partial sum of
// spacings is hypoexponential, and its CDF/PDF are alternating sums whose
// terms grow like binomial coefficients. Accumulation is done in long double
// with Neumaier compensation; the supported range is n <= kMaxReplicas.

#ifndef QVIS_DIST_CORE_HPP_
#define QVIS_DIST_CORE_HPP_

#include <cstdint>
#include <span>
#include <vector>

namespace qvis {

inline constexpr int kMaxReplicas = 20;

// Values outside [-kProbabilityTolerance, 1 + kProbabilityTolerance] before
// clamping are reported as NumericalInstability.
inline constexpr double kProbabilityTolerance = 1e-9;

// A strictly positive, finite rate (1/time).
class Rate {
 public:
  // Throws InvalidArgument unless value > 0 and finite.
  explicit Rate(double value);

  double value() const noexcept { return value_; }
  double mean() const noexcept { return 1.0 / value_; }

  friend bool operator==(const Rate&, const Rate&) = default;

 private:
  double value_;
};

// Neumaier's variant of Kahan summation over long double.
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(long double init) : sum_(init) {}

  void add(long double x) noexcept;
  CompensatedSum& operator+=(long double x) noexcept {
    add(x);
    return *this;
  }
  long double value() const noexcept { return sum_ + compensation_; }

 private:
  long double sum_ = 0.0L;
  long double compensation_ = 0.0L;
};

// Exact C(n, k) for 0 <= n <= kMaxReplicas; 0 when k < 0 or k > n.
std::uint64_t binomial(int n, int k);

// Rate of the i-th spacing X_(i) - X_(i-1) among n i.i.d. exp(lambda):
// (n - i + 1) * lambda. Requires 1 <= i <= n.
Rate spacing_rate(int n, int i, Rate lambda);

// Rates of a sum of independent exponentials. Rates must be pairwise
// distinct; repeated rates (Erlang mixtures) are not supported.
class HypoexponentialSpec {
 public:
  explicit HypoexponentialSpec(std::vector<double> rates);

  // Rates of spacings first..last (inclusive, 1-based) of n i.i.d.
  // exp(lambda) variables, i.e. the law of X_(last) - X_(first - 1).
  static HypoexponentialSpec spacings(int n, int first, int last, Rate lambda);

  std::span<const double> rates() const noexcept { return rates_; }
  std::size_t size() const noexcept { return rates_.size(); }

  // prod_{j != i} rate_j / (rate_j - rate_i): the mixing weight of the i-th
  // exponential in the density. Weights sum to 1.
  long double weight(std::size_t i) const noexcept;

 private:
  std::vector<double> rates_;
};

// Pr[sum <= t]. Requires finite t >= 0.
double hypoexp_cdf(const HypoexponentialSpec& spec, double t);

// Density of the sum at t. Requires finite t >= 0.
double hypoexp_pdf(const HypoexponentialSpec& spec, double t);

// E[exp(-s * sum)] for s >= 0.
double hypoexp_laplace(const HypoexponentialSpec& spec, double s);

// Returns t if it is finite and non-negative; throws InvalidArgument
// otherwise. Infinite times are rejected, callers use explicit limits.
double checked_time(double t);

// Clamps a computed probability into [0, 1]; throws NumericalInstability if it
// lies outside the tolerance band. `what` names the quantity in the message.
double checked_probability(long double value, const char* what);

}  // namespace qvis

#endif  // QVIS_DIST_CORE_HPP_
