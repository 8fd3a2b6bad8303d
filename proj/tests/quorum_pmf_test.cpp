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
#include <vector>

#include "gtest/gtest.h"
#include "oracles.hpp"
#include "qvis/error.hpp"

namespace qvis {
namespace {

DelayModel rates(double lambda, double xi) { return {Rate(lambda), Rate(xi)}; }

// Order-statistic density of Z_(j) among n i.i.d. exp(xi), written from the
// textbook form n!/((j-1)!(n-j)!) F^{j-1} (1-F)^{n-j} f.
double order_stat_density(int n, int j, double xi, double z) {
  const double f = xi * std::exp(-xi * z);
  const double cdf = -std::expm1(-xi * z);
  const double coef = oracle::choose(n, j) * j;
  return coef * std::pow(cdf, j - 1) * std::pow(1 - cdf, n - j) * f;
}

// Pr[S(t + Z_(j)) = s] by Simpson integration of the binomial-law PMF
// against the order-statistic density.
std::vector<double> integrated_read_pmf(int n, int w, double lambda, double xi, double t, int j) {
  const int panels = 100000;
  const double upper = 40.0 / xi;
  const double h = upper / panels;
  std::vector<double> out(n - w + 1, 0.0);
  for (int k = 0; k <= panels; ++k) {
    const double z = k * h;
    const double weight = (k == 0 || k == panels) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    const auto pmf = oracle::binomial_quorum_pmf(n, w, lambda, t + z);
    const double dens = order_stat_density(n, j, xi, z);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += weight * pmf[i] * dens;
  }
  for (auto& v : out) v *= h / 3.0;
  return out;
}

TEST(QuorumSizePmfTest, ZeroElapsedTimeIsPointMassAtW) {
  const auto pmf = quorum_size_pmf({3, 1, 1}, Rate(1.0), 0.0);
  EXPECT_EQ(pmf.w(), 1);
  EXPECT_EQ(pmf.n(), 3);
  EXPECT_DOUBLE_EQ(pmf[1], 1.0);
  EXPECT_NEAR(pmf[2], 0.0, 1e-15);
  EXPECT_NEAR(pmf[3], 0.0, 1e-15);
}

TEST(QuorumSizePmfTest, ThreeReplicasOneWriterAtUnitTime) {
  const auto pmf = quorum_size_pmf({3, 1, 1}, Rate(1.0), 1.0);
  EXPECT_NEAR(pmf[1], std::exp(-2.0), 1e-14);
  EXPECT_NEAR(pmf[2], 2 * (std::exp(-1.0) - std::exp(-2.0)), 1e-14);
  EXPECT_NEAR(pmf[3], 0.399576400894, 1e-11);
}

TEST(QuorumSizePmfTest, ThreeReplicasTwoWritersAtUnitTime) {
  const auto pmf = quorum_size_pmf({3, 2, 1}, Rate(1.0), 1.0);
  EXPECT_NEAR(pmf[2], std::exp(-1.0), 1e-14);
  EXPECT_NEAR(pmf[3], 1 - std::exp(-1.0), 1e-14);
  EXPECT_EQ(pmf[1], 0.0);
}

TEST(QuorumSizePmfTest, FullWriteQuorumIsDegenerate) {
  const auto pmf = quorum_size_pmf({4, 4, 1}, Rate(2.0), 3.0);
  ASSERT_EQ(pmf.masses().size(), 1u);
  EXPECT_EQ(pmf[4], 1.0);
}

TEST(QuorumSizePmfTest, Validation) {
  EXPECT_THROW(quorum_size_pmf({3, 0, 1}, Rate(1.0), 1.0), InvalidArgument);
  EXPECT_THROW(quorum_size_pmf({3, 4, 1}, Rate(1.0), 1.0), InvalidArgument);
  EXPECT_THROW(quorum_size_pmf({21, 1, 1}, Rate(1.0), 1.0), InvalidArgument);
  EXPECT_THROW(quorum_size_pmf({3, 1, 1}, Rate(1.0), -1.0), InvalidArgument);
  EXPECT_THROW(QuorumSizePmf(1, {0.5, 0.4}), NumericalInstability);
  EXPECT_THROW(QuorumSizePmf(1, {1.5, -0.5}), InvalidArgument);
}

TEST(QuorumSizePmfPropertyTest, NormalizedAndFirstMassIsExponential) {
  for (int n = 1; n <= 10; ++n) {
    for (int w = 1; w <= n; ++w) {
      for (int k = 0; k <= 50; ++k) {
        const double lambda = 1.5;
        const double t = 0.1 * k / lambda;
        const auto pmf = quorum_size_pmf({n, w, 1}, Rate(lambda), t);
        EXPECT_NEAR(pmf.total(), 1.0, 1e-9) << n << " " << w << " " << t;
        if (w < n) {
          EXPECT_NEAR(pmf[w], std::exp(-(n - w) * lambda * t), 1e-15);
        }
      }
    }
  }
}

// Oracle: the binomial law of the outstanding replicas. Also checks the
// treatment of the vanishing i = N + 1 summand at s = N.
TEST(QuorumSizePmfPropertyTest, MatchesBinomialLawUpToTwentyReplicas) {
  for (int n = 1; n <= 20; ++n) {
    for (int w = 1; w <= n; ++w) {
      for (double t : {0.01, 0.3, 1.0, 2.5}) {
        const auto pmf = quorum_size_pmf({n, w, 1}, Rate(1.0), t);
        const auto ref = oracle::binomial_quorum_pmf(n, w, 1.0, t);
        for (int s = w; s <= n; ++s) {
          EXPECT_NEAR(pmf[s], ref[s - w], 1e-9) << n << " " << w << " " << s << " " << t;
        }
      }
    }
  }
}

// Second algebraic route: Pr[S = s] as a difference of hypoexponential CDFs
// of consecutive spacing sums.
TEST(QuorumSizePmfPropertyTest, MatchesHypoexponentialDifferences) {
  for (int n = 2; n <= 10; ++n) {
    for (int w = 1; w < n; ++w) {
      const double t = 0.8;
      const auto pmf = quorum_size_pmf({n, w, 1}, Rate(1.0), t);
      for (int s = w + 1; s <= n; ++s) {
        const double reach_s = hypoexp_cdf(HypoexponentialSpec::spacings(n, w + 1, s, Rate(1.0)), t);
        const double reach_next =
            s < n ? hypoexp_cdf(HypoexponentialSpec::spacings(n, w + 1, s + 1, Rate(1.0)), t) : 0.0;
        EXPECT_NEAR(pmf[s], reach_s - reach_next, 1e-12);
      }
    }
  }
}

TEST(QuorumSizePmfPropertyTest, StochasticallyIncreasingInTime) {
  for (int n = 2; n <= 8; ++n) {
    for (int w = 1; w < n; ++w) {
      std::vector<double> prev_cdf(n + 1, 1.0);
      for (int k = 0; k <= 50; ++k) {
        const auto pmf = quorum_size_pmf({n, w, 1}, Rate(1.0), 0.1 * k);
        double cdf = 0.0;
        for (int s = w; s <= n; ++s) {
          cdf += pmf[s];
          EXPECT_LE(cdf, prev_cdf[s] + 1e-12);
          prev_cdf[s] = cdf;
        }
      }
    }
  }
}

TEST(QuorumSizePmfPropertyTest, AgreesWithBruteForceSampling) {
  oracle::BruteForce bf(2024);
  const int trials = 1000000;
  for (int n : {2, 4, 6}) {
    for (int w = 1; w < n; ++w) {
      const double t = 0.7;
      std::vector<double> counts(n + 1, 0.0);
      for (int k = 0; k < trials; ++k) counts[bf.quorum_size(n, w, 1.0, t)] += 1;
      const auto pmf = quorum_size_pmf({n, w, 1}, Rate(1.0), t);
      for (int s = w; s <= n; ++s) {
        const double sigma = oracle::binomial_sigma(pmf[s], trials);
        EXPECT_LE(std::fabs(counts[s] / trials - pmf[s]), 4 * sigma + 1e-12)
            << n << " " << w << " " << s;
      }
    }
  }
}

TEST(QuorumSizeAtReadPmfTest, FullWriteQuorumIsDegenerate) {
  const auto pmf = quorum_size_at_read_pmf({3, 3, 2}, rates(0.3, 5.0), 0.4, 2);
  EXPECT_EQ(pmf[3], 1.0);
}

TEST(QuorumSizeAtReadPmfTest, FastestResponderExamples) {
  const auto a = quorum_size_at_read_pmf({3, 1, 1}, rates(1, 1), 0.0, 1);
  EXPECT_NEAR(a[1], 0.6, 1e-14);
  const auto b = quorum_size_at_read_pmf({3, 2, 1}, rates(1, 1), 1.0, 1);
  EXPECT_NEAR(b[2], 0.75 * std::exp(-1.0), 1e-14);
  EXPECT_NEAR(b[2], 0.2759095809, 1e-9);
}

TEST(QuorumSizeAtReadPmfTest, Validation) {
  EXPECT_THROW(quorum_size_at_read_pmf({3, 1, 1}, rates(1, 1), 0.0, 2), InvalidArgument);
  EXPECT_THROW(quorum_size_at_read_pmf({3, 1, 2}, rates(1, 1), 0.0, 0), InvalidArgument);
  DelayModel shifted = rates(1, 1);
  shifted.read_shift = 0.1;
  EXPECT_THROW(quorum_size_at_read_pmf({3, 1, 1}, shifted, 0.0, 1), UnsupportedMethod);
}

// Oracle: integrate the binomial-law PMF against the order-statistic density.
TEST(QuorumSizeAtReadPmfPropertyTest, MatchesNumericalIntegration) {
  for (int n : {3, 5, 8}) {
    for (int w = 1; w < n; ++w) {
      for (int j = 1; j <= std::min(n, 3); ++j) {
        for (auto [lambda, xi, t] : {std::tuple{1.0, 1.0, 0.0}, std::tuple{0.5, 2.0, 0.7},
                                     std::tuple{3.0, 0.4, 0.2}}) {
          const auto pmf = quorum_size_at_read_pmf({n, w, n}, rates(lambda, xi), t, j);
          const auto ref = integrated_read_pmf(n, w, lambda, xi, t, j);
          EXPECT_NEAR(pmf.total(), 1.0, 1e-9);
          for (int s = w; s <= n; ++s) {
            EXPECT_NEAR(pmf[s], ref[s - w], 1e-9) << n << " " << w << " " << j << " " << s;
          }
        }
      }
    }
  }
}

TEST(QuorumSizeAtReadPmfPropertyTest, InstantaneousReadsRecoverFixedOffsetPmf) {
  for (int n = 2; n <= 10; ++n) {
    for (int w = 1; w < n; ++w) {
      for (double t : {0.0, 0.5, 2.0}) {
        const auto fixed = quorum_size_pmf({n, w, 1}, Rate(1.0), t);
        const auto read = quorum_size_at_read_pmf({n, w, 1}, rates(1.0, 1e9), t, 1);
        for (int s = w; s <= n; ++s) EXPECT_NEAR(read[s], fixed[s], 1e-6);
      }
    }
  }
}

TEST(QuorumSizeAtReadPmfStabilityTest, TwentyReplicasNormalized) {
  for (int w = 1; w <= 20; ++w) {
    for (int j = 1; j <= 20; j += 3) {
      const auto pmf = quorum_size_at_read_pmf({20, w, 20}, rates(1.0, 1.0), 0.5, j);
      EXPECT_NEAR(pmf.total(), 1.0, 1e-9);
    }
  }
}

TEST(MeanQuorumSizeTest, Examples) {
  EXPECT_DOUBLE_EQ(mean_quorum_size(QuorumSizePmf::degenerate(3)), 3.0);
  EXPECT_DOUBLE_EQ(mean_quorum_size(quorum_size_pmf({3, 1, 1}, Rate(1.0), 0.0)), 1.0);
  // Dot product of the t = 1 masses; equals 1 + 2 (1 - e^{-1}).
  const double m = mean_quorum_size(quorum_size_pmf({3, 1, 1}, Rate(1.0), 1.0));
  EXPECT_NEAR(m, 1 + 2 * (1 - std::exp(-1.0)), 1e-14);
  EXPECT_NEAR(m, 2.264241118, 1e-9);
}

}  // namespace
}  // namespace qvis
