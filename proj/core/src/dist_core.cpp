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

#include "qvis/dist_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qvis/error.hpp"

namespace qvis {

Rate::Rate(double value) : value_(value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw InvalidArgument("rate must be positive and finite, got " +
                          std::to_string(value));
  }
}

void CompensatedSum::add(long double x) noexcept {
  const long double t = sum_ + x;
  if (std::fabs(sum_) >= std::fabs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

std::uint64_t binomial(int n, int k) {
  if (n < 0 || n > kMaxReplicas) {
    throw InvalidArgument("binomial: n must be in [0, " +
                          std::to_string(kMaxReplicas) + "], got " +
                          std::to_string(n));
  }
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t c = 1;
  // c * (n - k + i) is divisible by i at every step.
  for (int i = 1; i <= k; ++i) {
    c = c * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return c;
}

Rate spacing_rate(int n, int i, Rate lambda) {
  if (n < 1 || i < 1 || i > n) {
    throw InvalidArgument("spacing index must satisfy 1 <= i <= n, got i=" +
                          std::to_string(i) + " n=" + std::to_string(n));
  }
  return Rate(static_cast<double>(n - i + 1) * lambda.value());
}

HypoexponentialSpec::HypoexponentialSpec(std::vector<double> rates)
    : rates_(std::move(rates)) {
  if (rates_.empty()) {
    throw InvalidArgument("hypoexponential needs at least one rate");
  }
  for (double r : rates_) static_cast<void>(Rate(r));
  for (std::size_t i = 0; i < rates_.size(); ++i) {
    for (std::size_t j = i + 1; j < rates_.size(); ++j) {
      if (rates_[i] == rates_[j]) {
        throw InvalidArgument("hypoexponential rates must be pairwise distinct");
      }
    }
  }
}

HypoexponentialSpec HypoexponentialSpec::spacings(int n, int first, int last,
                                                  Rate lambda) {
  if (first < 1 || last > n || first > last) {
    throw InvalidArgument("spacing range must satisfy 1 <= first <= last <= n");
  }
  std::vector<double> rates;
  rates.reserve(static_cast<std::size_t>(last - first + 1));
  for (int i = first; i <= last; ++i) {
    rates.push_back(spacing_rate(n, i, lambda).value());
  }
  return HypoexponentialSpec(std::move(rates));
}

long double HypoexponentialSpec::weight(std::size_t i) const noexcept {
  long double w = 1.0L;
  const long double ri = rates_[i];
  for (std::size_t j = 0; j < rates_.size(); ++j) {
    if (j == i) continue;
    const long double rj = rates_[j];
    w *= rj / (rj - ri);
  }
  return w;
}

double checked_time(double t) {
  if (!std::isfinite(t) || t < 0.0) {
    throw InvalidArgument("time must be finite and >= 0, got " +
                          std::to_string(t));
  }
  return t;
}

double checked_probability(long double value, const char* what) {
  if (!(value >= -kProbabilityTolerance) ||
      !(value <= 1.0L + kProbabilityTolerance)) {
    throw NumericalInstability(std::string(what) + " evaluated to " +
                               std::to_string(static_cast<double>(value)) +
                               ", outside [0, 1] beyond tolerance");
  }
  return static_cast<double>(std::clamp(value, 0.0L, 1.0L));
}

double hypoexp_cdf(const HypoexponentialSpec& spec, double t) {
  checked_time(t);
  const auto rates = spec.rates();
  CompensatedSum acc;
  for (std::size_t i = 0; i < rates.size(); ++i) {
    // 1 - e^{-rate t}, accurate for small rate * t.
    const long double f = -std::expm1(-static_cast<long double>(rates[i]) * t);
    acc += f * spec.weight(i);
  }
  return checked_probability(acc.value(), "hypoexponential CDF");
}

double hypoexp_pdf(const HypoexponentialSpec& spec, double t) {
  checked_time(t);
  const auto rates = spec.rates();
  CompensatedSum acc;
  for (std::size_t i = 0; i < rates.size(); ++i) {
    const long double r = rates[i];
    acc += r * std::exp(-r * t) * spec.weight(i);
  }
  const long double v = acc.value();
  if (v < -kProbabilityTolerance) {
    throw NumericalInstability("hypoexponential density evaluated to " +
                               std::to_string(static_cast<double>(v)));
  }
  return static_cast<double>(std::max(v, 0.0L));
}

double hypoexp_laplace(const HypoexponentialSpec& spec, double s) {
  checked_time(s);
  const auto rates = spec.rates();
  CompensatedSum acc;
  for (std::size_t i = 0; i < rates.size(); ++i) {
    const long double r = rates[i];
    acc += spec.weight(i) * r / (r + s);
  }
  return checked_probability(acc.value(), "hypoexponential Laplace transform");
}

}  // namespace qvis
