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

#include "qvis/sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "qvis/error.hpp"

namespace qvis::sim {
namespace {

using DelayArray = std::array<double, kMaxReplicas>;

std::uint64_t block_count(std::uint64_t trials) {
  return (trials + kBlockTrials - 1) / kBlockTrials;
}

// Runs `body(block, trials_in_block)` for every block, with blocks split
// into `chunks` contiguous ranges. Each range is handled by one worker and
// produces a partial value; partials are combined in chunk order.
template <typename Partial, typename Body>
std::vector<Partial> run_blocks(std::uint64_t trials, std::uint32_t chunks,
                                Body body) {
  const std::uint64_t blocks = block_count(trials);
  const std::uint64_t workers = std::max<std::uint64_t>(
      1, std::min<std::uint64_t>(chunks, blocks));
  std::vector<Partial> partials(workers);
  auto work = [&](std::uint64_t c) {
    const std::uint64_t begin = blocks * c / workers;
    const std::uint64_t end = blocks * (c + 1) / workers;
    for (std::uint64_t b = begin; b < end; ++b) {
      const std::uint64_t done = b * kBlockTrials;
      body(partials[c], b, std::min(kBlockTrials, trials - done));
    }
  };
  {
    std::vector<std::jthread> threads;
    threads.reserve(workers - 1);
    for (std::uint64_t c = 1; c < workers; ++c) threads.emplace_back(work, c);
    work(0);
  }
  return partials;
}

void draw(int n, const DelayModel& delays, TrialRng& rng, DelayArray& x,
          DelayArray& z) {
  const double lam = delays.write_rate.value();
  const double xi = delays.read_rate.value();
  for (int i = 0; i < n; ++i) x[i] = rng.exponential(lam, delays.write_shift);
  for (int i = 0; i < n; ++i) z[i] = rng.exponential(xi, delays.read_shift);
}

double write_completion(int n, int w, std::span<const double> write_delays) {
  DelayArray sorted{};
  std::copy_n(write_delays.begin(), n, sorted.begin());
  std::nth_element(sorted.begin(), sorted.begin() + (w - 1), sorted.begin() + n);
  return sorted[static_cast<std::size_t>(w - 1)];
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t block_seed(std::uint64_t seed, std::uint64_t block) noexcept {
  return splitmix64(seed ^ splitmix64(block));
}

void SimConfig::validate() const {
  spec.validate();
  delays.validate();
  checked_time(t);
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
  if (chunks < 1) throw InvalidArgument("chunks must be >= 1");
  if (chunks > trials) throw InvalidArgument("chunks must not exceed trials");
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                               double z) {
  if (trials == 0) throw InvalidArgument("Wilson interval needs trials >= 1");
  if (successes > trials) {
    throw InvalidArgument("Wilson interval: successes exceed trials");
  }
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half), half};
}

bool is_stale(const QuorumSpec& spec, double t,
              std::span<const double> write_delays,
              std::span<const double> read_delays) {
  const int n = spec.n;
  const double completed = write_completion(n, spec.w, write_delays);
  std::array<int, kMaxReplicas> order{};
  std::iota(order.begin(), order.begin() + n, 0);
  auto faster = [&](int a, int b) {
    return read_delays[a] < read_delays[b] ||
           (read_delays[a] == read_delays[b] && a < b);
  };
  std::partial_sort(order.begin(), order.begin() + spec.r, order.begin() + n,
                    faster);
  for (int j = 0; j < spec.r; ++j) {
    const int i = order[static_cast<std::size_t>(j)];
    if (!(completed + t + read_delays[i] < write_delays[i])) return false;
  }
  return true;
}

bool run_trial(const QuorumSpec& spec, const DelayModel& delays, double t,
               TrialRng& rng) {
  DelayArray x;
  DelayArray z;
  draw(spec.n, delays, rng, x, z);
  const auto n = static_cast<std::size_t>(spec.n);
  return is_stale(spec, t, std::span<const double>(x.data(), n),
                  std::span<const double>(z.data(), n));
}

SimResult estimate_pt(const SimConfig& config) {
  config.validate();
  const auto partials = run_blocks<std::uint64_t>(
      config.trials, config.chunks,
      [&config](std::uint64_t& stale, std::uint64_t block, std::uint64_t count) {
        TrialRng rng(block_seed(config.seed, block));
        for (std::uint64_t k = 0; k < count; ++k) {
          stale += run_trial(config.spec, config.delays, config.t, rng) ? 1 : 0;
        }
      });
  const std::uint64_t stale =
      std::accumulate(partials.begin(), partials.end(), std::uint64_t{0});
  const auto ci = wilson_interval(stale, config.trials);
  return {static_cast<double>(stale) / static_cast<double>(config.trials),
          stale,
          config.trials,
          ci.halfwidth,
          ci.lower,
          ci.upper,
          config.seed};
}

QuorumSizePmf estimate_quorum_pmf(const QuorumSpec& spec, Rate lambda, double t,
                                  std::uint64_t trials, std::uint64_t seed) {
  spec.validate();
  checked_time(t);
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
  const int n = spec.n;
  const int w = spec.w;
  using Counts = std::vector<std::uint64_t>;
  const auto partials = run_blocks<Counts>(
      trials, 1, [&](Counts& counts, std::uint64_t block, std::uint64_t count) {
        counts.resize(static_cast<std::size_t>(n - w + 1));
        TrialRng rng(block_seed(seed, block));
        DelayArray x;
        for (std::uint64_t k = 0; k < count; ++k) {
          for (int i = 0; i < n; ++i) x[i] = rng.exponential(lambda.value());
          const auto delays = std::span<const double>(x.data(), static_cast<std::size_t>(n));
          const double horizon = write_completion(n, w, delays) + t;
          const auto holders =
              std::count_if(delays.begin(), delays.end(),
                            [horizon](double xi) { return xi <= horizon; });
          ++counts[static_cast<std::size_t>(holders - w)];
        }
      });
  std::vector<double> masses(static_cast<std::size_t>(n - w + 1), 0.0);
  for (std::size_t s = 0; s < masses.size(); ++s) {
    masses[s] = static_cast<double>(partials.front()[s]) /
                static_cast<double>(trials);
  }
  return QuorumSizePmf(w, std::move(masses));
}

}  // namespace qvis::sim
