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
#include <vector>

#include "gtest/gtest.h"
#include "oracles.hpp"
#include "qvis/error.hpp"

namespace qvis {
namespace {

DelayModel rates(double lambda, double xi) { return {Rate(lambda), Rate(xi)}; }

struct Config {
  int w;
  int r;
};
const Config kThreeReplicaPartial[] = {{1, 1}, {2, 1}, {1, 2}};

TEST(WorstCaseBoundTest, Examples) {
  EXPECT_DOUBLE_EQ(worst_case_bound({3, 2, 1}).probability, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(worst_case_bound({3, 1, 2}).probability, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(worst_case_bound({3, 1, 1}).probability, 2.0 / 3.0);
  EXPECT_EQ(worst_case_bound({3, 2, 2}).probability, 0.0);
  EXPECT_EQ(worst_case_bound({3, 1, 1}).method, EstimateMethod::worst_case_bound);
}

TEST(ClosedFormTest, OneWriterOneReader) {
  const auto e = closed_form_pt({3, 1, 1}, rates(1, 1), 0.0);
  EXPECT_DOUBLE_EQ(e.probability, 0.5);
  EXPECT_EQ(e.method, EstimateMethod::closed_form);
  EXPECT_FALSE(e.ci_halfwidth.has_value());
}

TEST(ClosedFormTest, TwoWritersOneReader) {
  EXPECT_NEAR(closed_form_pt({3, 2, 1}, rates(1, 1), 1.0).probability,
              std::exp(-1.0) / 4, 1e-16);
  EXPECT_NEAR(closed_form_pt({3, 2, 1}, rates(1, 1), 1.0).probability, 0.0919698603, 1e-10);
}

// The exact value under the i.i.d. exponential model is 2/15; the
// product-form oracle and brute-force sampling both confirm it.
TEST(ClosedFormTest, OneWriterTwoReaders) {
  const double p = closed_form_pt({3, 1, 2}, rates(1, 1), 0.0).probability;
  EXPECT_NEAR(p, 2.0 / 15.0, 1e-15);
  EXPECT_NEAR(p, oracle::product_form_pt(3, 1, 2, 1, 1, 0), 1e-15);

  oracle::BruteForce bf(99);
  const int trials = 400000;
  int stale = 0;
  for (int k = 0; k < trials; ++k) stale += bf.stale(3, 1, 2, 1.0, 1.0, 0.0);
  EXPECT_LE(std::fabs(static_cast<double>(stale) / trials - p),
            4 * oracle::binomial_sigma(p, trials));
}

TEST(ClosedFormTest, VanishesForLargeT) {
  for (auto c : kThreeReplicaPartial) {
    EXPECT_LE(closed_form_pt({3, c.w, c.r}, rates(1, 1), 100.0).probability, 1e-40);
  }
}

TEST(ClosedFormTest, RejectsUnsupportedConfigurations) {
  EXPECT_THROW(closed_form_pt({3, 2, 2}, rates(1, 1), 0.0), UnsupportedMethod);
  EXPECT_THROW(closed_form_pt({5, 1, 1}, rates(1, 1), 0.0), UnsupportedMethod);
  DelayModel shifted = rates(1, 1);
  shifted.write_shift = 0.5;
  EXPECT_THROW(closed_form_pt({3, 1, 1}, shifted, 0.0), UnsupportedMethod);
  EXPECT_THROW(closed_form_pt({3, 1, 1}, rates(1, 1), -0.5), InvalidArgument);
}

TEST(AnalyticGeneralTest, Examples) {
  EXPECT_NEAR(analytic_general_pt({3, 1, 1}, rates(1, 1), 0.0).probability, 0.5, 1e-15);
  EXPECT_NEAR(analytic_general_pt({3, 1, 2}, rates(1, 1), 0.5).probability,
              closed_form_pt({3, 1, 2}, rates(1, 1), 0.5).probability, 1e-9);
  EXPECT_EQ(analytic_general_pt({3, 1, 1}, rates(1, 1), 0.0).method,
            EstimateMethod::analytic_general);
}

// Reference fixed from the product-form oracle, and checked against
// brute-force sampling before being frozen here.
TEST(AnalyticGeneralTest, FiveReplicasAgreesWithSampling) {
  const double p = analytic_general_pt({5, 2, 1}, rates(1, 1), 0.5).probability;
  EXPECT_NEAR(p, 0.303265329856, 1e-11);
  oracle::BruteForce bf(5);
  const int trials = 400000;
  int stale = 0;
  for (int k = 0; k < trials; ++k) stale += bf.stale(5, 2, 1, 1.0, 1.0, 0.5);
  EXPECT_LE(std::fabs(static_cast<double>(stale) / trials - p),
            4 * oracle::binomial_sigma(p, trials));
}

TEST(AnalyticGeneralTest, SupportBoundaries) {
  EXPECT_THROW(analytic_general_pt({6, 1, 3}, rates(1, 1), 0.0), UnsupportedMethod);
  EXPECT_EQ(analytic_general_pt({6, 4, 3}, rates(1, 1), 0.0).probability, 0.0);
  DelayModel shifted = rates(1, 1);
  shifted.read_shift = 0.1;
  EXPECT_THROW(analytic_general_pt({3, 1, 1}, shifted, 0.0), UnsupportedMethod);
}

TEST(InstantaneousReadLimitTest, Examples) {
  EXPECT_NEAR(instantaneous_read_limit({3, 1, 1}, Rate(1), 0.0).probability, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(instantaneous_read_limit({3, 2, 1}, Rate(1), 0.0).probability, 1.0 / 3.0, 1e-15);
  const double expected =
      (2.0 / 3.0) * std::exp(-2.0) + (1.0 / 3.0) * 2 * (std::exp(-1.0) - std::exp(-2.0));
  EXPECT_NEAR(instantaneous_read_limit({3, 1, 1}, Rate(1), 1.0).probability, expected, 1e-14);
  EXPECT_NEAR(expected, 0.245253, 1e-6);
}

TEST(InstantaneousReadLimitTest, MatchesVeryFastReads) {
  for (int n = 2; n <= 8; ++n) {
    for (int w = 1; w < n; ++w) {
      for (int r = 1; r <= 2 && w + r <= n; ++r) {
        for (double t : {0.0, 0.4, 1.5}) {
          EXPECT_NEAR(instantaneous_read_limit({n, w, r}, Rate(1), t).probability,
                      analytic_general_pt({n, w, r}, rates(1, 1e9), t).probability, 1e-7);
        }
      }
    }
  }
  EXPECT_THROW(instantaneous_read_limit({5, 1, 3}, Rate(1), 0.0), UnsupportedMethod);
}

TEST(StalenessPropertyTest, DominatedByBoundAndNonIncreasingInTime) {
  for (int n = 1; n <= 10; ++n) {
    for (int w = 1; w <= n; ++w) {
      for (int r = 1; r <= std::min(n, 2); ++r) {
        for (auto [lambda, xi] : {std::pair{1.0, 1.0}, std::pair{0.25, 4.0}, std::pair{4.0, 0.25}}) {
          const double bound = worst_case_bound({n, w, r}).probability;
          double prev = 1.0;
          for (int k = 0; k <= 50; ++k) {
            const double t = 0.1 * k / lambda;
            const double p = analytic_general_pt({n, w, r}, rates(lambda, xi), t).probability;
            EXPECT_LE(p, bound + 1e-12);
            EXPECT_LE(p, prev + 1e-12);
            prev = p;
          }
        }
      }
    }
  }
}

TEST(StalenessPropertyTest, RatioIdentityAtThreeReplicas) {
  for (double lambda : {0.25, 1.0, 4.0}) {
    for (double xi : {0.25, 1.0, 4.0}) {
      for (double t : {0.0, 0.5, 1.0, 2.0}) {
        const double one = closed_form_pt({3, 1, 1}, rates(lambda, xi), t).probability;
        const double two = closed_form_pt({3, 2, 1}, rates(lambda, xi), t).probability;
        EXPECT_DOUBLE_EQ(two, one / 2);
      }
    }
  }
}

TEST(StalenessPropertyTest, FastReadsApproachTheBound) {
  for (auto c : kThreeReplicaPartial) {
    const QuorumSpec spec{3, c.w, c.r};
    EXPECT_LE(std::fabs(closed_form_pt(spec, rates(1, 1e6), 0.0).probability -
                        worst_case_bound(spec).probability),
              1e-5);
  }
}

// The bound assigns 1/3 to both (W=2,R=1) and (W=1,R=2); the expanding
// quorum separates them.
TEST(StalenessPropertyTest, AsymmetricInWriteAndReadQuorums) {
  const double w1r2 = closed_form_pt({3, 1, 2}, rates(1, 1), 0.0).probability;
  const double w2r1 = closed_form_pt({3, 2, 1}, rates(1, 1), 0.0).probability;
  EXPECT_DOUBLE_EQ(w2r1, 0.25);
  EXPECT_NEAR(w1r2, 2.0 / 15.0, 1e-15);
  EXPECT_GT(std::fabs(w1r2 - w2r1), 0.1);
  EXPECT_EQ(worst_case_bound({3, 1, 2}).probability, worst_case_bound({3, 2, 1}).probability);
  // Swapping the delay rates also changes the answer.
  EXPECT_NE(closed_form_pt({3, 1, 1}, rates(1, 2), 0.0).probability,
            closed_form_pt({3, 1, 1}, rates(2, 1), 0.0).probability);
}

TEST(StalenessPropertyTest, GeneralAgreesWithClosedForm) {
  for (auto c : kThreeReplicaPartial) {
    for (double lambda : {0.25, 1.0, 4.0}) {
      for (double xi : {0.25, 1.0, 4.0}) {
        for (double t : {0.0, 0.5, 1.0, 2.0}) {
          const QuorumSpec spec{3, c.w, c.r};
          EXPECT_NEAR(analytic_general_pt(spec, rates(lambda, xi), t).probability,
                      closed_form_pt(spec, rates(lambda, xi), t).probability, 1e-9);
        }
      }
    }
  }
}

// Independent route: the product form, derived without the quorum-size PMFs.
TEST(StalenessPropertyTest, GeneralAgreesWithProductForm) {
  for (int n = 2; n <= 20; ++n) {
    for (int w = 1; w < n; ++w) {
      for (int r = 1; r <= 2 && w + r <= n; ++r) {
        for (auto [lambda, xi, t] : {std::tuple{1.0, 1.0, 0.0}, std::tuple{0.5, 3.0, 0.3},
                                     std::tuple{2.0, 0.5, 1.0}}) {
          EXPECT_NEAR(analytic_general_pt({n, w, r}, rates(lambda, xi), t).probability,
                      oracle::product_form_pt(n, w, r, lambda, xi, t), 1e-10)
              << n << " " << w << " " << r;
        }
      }
    }
  }
}

TEST(StalenessPropertyTest, StrictQuorumsNeverStale) {
  for (int n = 1; n <= 8; ++n) {
    for (int w = 1; w <= n; ++w) {
      for (int r = 1; r <= n; ++r) {
        if (w + r <= n) continue;
        EXPECT_EQ(worst_case_bound({n, w, r}).probability, 0.0);
        EXPECT_EQ(analytic_general_pt({n, w, r}, rates(1, 1), 0.3).probability, 0.0);
      }
    }
  }
}

TEST(EstimateMethodTest, Names) {
  EXPECT_EQ(to_string(EstimateMethod::closed_form), "closed_form");
  EXPECT_EQ(to_string(EstimateMethod::monte_carlo), "monte_carlo");
}

}  // namespace
}  // namespace qvis
