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

// Seedable Monte Carlo simulator of one write followed by one read.
//
// Each trial draws write delays X_1..X_N and then read delays Z_1..Z_N, in
// that order, as shift - ln(U) / rate with U uniform on the open interval
// (0, 1). The write completes at X_(W); the read starts t later and takes
// the R fastest responders (ties broken by replica index). The read is stale
// iff every responder i satisfies X_(W) + t + Z_i < X_i.
//
// Trials are grouped into fixed-size blocks. Block b draws from an
// mt19937_64 seeded with splitmix64(seed ^ splitmix64(b)), so the result is
// a function of (config, seed) alone and does not depend on how blocks are
// spread across chunks or threads.

#ifndef QVIS_SIM_HPP_
#define QVIS_SIM_HPP_

#include <cstdint>
#include <cmath>
#include <random>
#include <span>

#include "qvis/model.hpp"
#include "qvis/quorum_pmf.hpp"

namespace qvis::sim {

inline constexpr std::uint64_t kBlockTrials = 1u << 16;

std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Seed of the generator used for block `block`.
std::uint64_t block_seed(std::uint64_t seed, std::uint64_t block) noexcept;

class TrialRng {
 public:
  explicit TrialRng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on (0, 1) from the top 53 bits: (k + 0.5) * 2^-53.
  double uniform_open() noexcept {
    const std::uint64_t k = engine_() >> 11;
    return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
  }

  double exponential(double rate, double shift = 0.0) noexcept {
    return shift - std::log(uniform_open()) / rate;
  }

 private:
  std::mt19937_64 engine_;
};

struct SimConfig {
  QuorumSpec spec;
  DelayModel delays;
  double t = 0.0;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  // Number of workers the blocks are split across; 1 runs on the caller.
  std::uint32_t chunks = 1;

  void validate() const;
};

struct WilsonInterval {
  double lower = 0.0;
  double upper = 0.0;
  double halfwidth = 0.0;
};

// Wilson score interval for `successes` out of `trials` at normal quantile z.
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                               double z = 1.96);

struct SimResult {
  double estimate = 0.0;
  std::uint64_t stale_count = 0;
  std::uint64_t trials = 0;
  double ci95_halfwidth = 0.0;
  double ci95_lower = 0.0;
  double ci95_upper = 0.0;
  std::uint64_t seed = 0;

  friend bool operator==(const SimResult&, const SimResult&) = default;
};

// Staleness decision for one realization. Spans have length spec.n.
bool is_stale(const QuorumSpec& spec, double t,
              std::span<const double> write_delays,
              std::span<const double> read_delays);

// Draws one realization from `rng` and evaluates it.
bool run_trial(const QuorumSpec& spec, const DelayModel& delays, double t,
               TrialRng& rng);

SimResult estimate_pt(const SimConfig& config);

// Empirical PMF of S(t) = |{i : X_i <= X_(W) + t}|. Only the write delays are
// drawn; spec.r is ignored.
QuorumSizePmf estimate_quorum_pmf(const QuorumSpec& spec, Rate lambda, double t,
                                  std::uint64_t trials, std::uint64_t seed);

}  // namespace qvis::sim

#endif  // QVIS_SIM_HPP_
