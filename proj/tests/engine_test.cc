// Copyright 2026 The adtypes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "adtypes/engine.h"

#include <numeric>
#include <random>

#include "gtest/gtest.h"
#include "test_util.h"

namespace adtypes {
namespace {

AuctionInstance ZeroOne(double eps) {
  return AuctionInstance({{0, "A", 1.0 - eps}, {1, "B", 1.0}},
                         {{"A", DiscountCurve({1.0, 0.0})},
                          {"B", DiscountCurve({1.0, 1.0})}},
                         2);
}

AuctionInstance ThreeTypes(double eps) {
  return AuctionInstance(
      {{0, "A", 1.0 + eps}, {1, "B", 1.0}, {2, "C", 1.0 - eps}},
      {{"A", DiscountCurve({1.0, 1.0, 1.0 - 2 * eps})},
       {"B", DiscountCurve({1.0, 1.0, 0.0})},
       {"C", DiscountCurve({1.0, eps, eps * eps})}},
      3);
}

void ExpectConsistent(const AuctionInstance& inst, const AuctionOutcome& o) {
  double total = 0.0;
  for (int i = 0; i < inst.bidder_count(); ++i) {
    total += o.expected_payment[i];
    const int s = o.assignment.slot_of[i];
    if (s == kUnallocated) {
      EXPECT_EQ(o.expected_payment[i], 0.0);
    } else if (inst.discount(i, s) > 0.0) {
      EXPECT_NEAR(o.expected_payment[i],
                  inst.discount(i, s) * o.per_conversion_price[i], 1e-12);
    }
  }
  EXPECT_NEAR(o.revenue, total, 1e-12);
}

TEST(RunAuctionTest, ZeroOneGreedyGsp) {
  AuctionInstance inst = ZeroOne(0.1);
  AuctionOutcome o = RunAuction(inst, BidProfile({0.0, 1.0}), Format::kGreedyGsp);
  EXPECT_NEAR(o.true_welfare, 1.0, 1e-12);
  EXPECT_EQ(o.revenue, 0.0);
  ExpectConsistent(inst, o);
}

TEST(RunAuctionTest, ThreeTypesGreedyVcgPayoffs) {
  const double eps = 0.1;
  AuctionInstance inst = ThreeTypes(eps);
  BidProfile b(inst.values());
  const double ext = (eps - eps * eps) * (1.0 - eps);
  const std::vector<double> expected = {1.0 + eps - ext, 1.0 - ext,
                                        eps * eps * (1.0 - eps)};
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(BidderUtility(inst, b.bids(), i, Format::kGreedyVcg),
                expected[i], 1e-12);
  }
  EXPECT_NEAR(expected[0], 1.019, 1e-12);
  EXPECT_NEAR(expected[1], 0.919, 1e-12);
  EXPECT_NEAR(expected[2], 0.009, 1e-12);
}

TEST(RunAuctionTest, SingleBidderOptVcg) {
  AuctionInstance one({{0, "A", 0.8}}, {{"A", DiscountCurve({0.6, 0.2})}}, 2);
  AuctionOutcome o = RunAuction(one, BidProfile({0.8}), Format::kOptVcg);
  EXPECT_NEAR(o.true_welfare, 0.48, 1e-12);
  EXPECT_EQ(o.revenue, 0.0);
}

TEST(RunAuctionTest, DeterministicAndConsistent) {
  std::mt19937_64 rng(71);
  for (int rep = 0; rep < 300; ++rep) {
    AuctionInstance inst =
        testing::RandomInstance(rng, 1 + rep % 6, 1 + rep % 4);
    BidProfile b(testing::ConservativeBids(rng, inst));
    for (Format f : kAllFormats) {
      AuctionOutcome o1 = RunAuction(inst, b, f);
      AuctionOutcome o2 = RunAuction(inst, b, f);
      EXPECT_EQ(o1, o2);
      ExpectConsistent(inst, o1);
      EXPECT_LE(o1.revenue, o1.apparent_welfare + 1e-9) << FormatName(f);
    }
  }
}

TEST(RunAuctionTest, TruthfulOptVcgIsEfficient) {
  std::mt19937_64 rng(73);
  for (int rep = 0; rep < 300; ++rep) {
    AuctionInstance inst =
        testing::RandomInstance(rng, 1 + rep % 6, 1 + rep % 4);
    AuctionOutcome o =
        RunAuction(inst, BidProfile(inst.values()), Format::kOptVcg);
    EXPECT_NEAR(o.true_welfare, OptimalWelfare(inst), 1e-12);
  }
}

TEST(CounterfactualTest, IdentityDeviation) {
  std::mt19937_64 rng(79);
  for (int rep = 0; rep < 200; ++rep) {
    AuctionInstance inst = testing::RandomInstance(rng, 4, 3);
    BidProfile b(testing::ConservativeBids(rng, inst));
    for (Format f : kAllFormats) {
      AuctionOutcome o = RunAuction(inst, b, f);
      for (int i = 0; i < 4; ++i) {
        const int s = o.assignment.slot_of[i];
        const double realized =
            s == kUnallocated ? 0.0
                              : inst.discount(i, s) * inst.value(i) -
                                    o.expected_payment[i];
        EXPECT_NEAR(CounterfactualUtility(inst, b, i, b[i], f), realized,
                    1e-12);
      }
    }
  }
}

TEST(CounterfactualTest, OverbiddingInZeroOneEquilibrium) {
  AuctionInstance inst = ZeroOne(0.1);
  BidProfile b({0.0, 1.0});
  EXPECT_NEAR(CounterfactualUtility(inst, b, 0, 1.05, Format::kGreedyGsp),
              0.9 - 1.0, 1e-12);
  EXPECT_EQ(b[0], 0.0);
  EXPECT_THROW(CounterfactualUtility(inst, b, 0, -1.0, Format::kGreedyGsp),
               std::invalid_argument);
}

TEST(CounterfactualTest, GridContainingOwnBidDominatesRealized) {
  std::mt19937_64 rng(83);
  for (int rep = 0; rep < 100; ++rep) {
    AuctionInstance inst = testing::RandomInstance(rng, 4, 2);
    std::vector<double> grid;
    for (int k = 0; k <= 20; ++k) grid.push_back(k / 20.0);
    std::vector<double> b(4);
    for (int i = 0; i < 4; ++i) b[i] = grid[(rep + 3 * i) % 21];
    for (Format f : kAllFormats) {
      for (int i = 0; i < 4; ++i) {
        const double realized = BidderUtility(inst, b, i, f);
        double best = -1e9;
        for (double x : grid) {
          best = std::max(best, CounterfactualUtility(inst, b, i, x, f));
        }
        EXPECT_GE(best, realized - 1e-12);
      }
    }
  }
}

TEST(SemismoothnessTest, TruthfulGreedyGsp) {
  std::mt19937_64 rng(89);
  for (int rep = 0; rep < 200; ++rep) {
    AuctionInstance inst =
        testing::RandomInstance(rng, 1 + rep % 6, 1 + rep % 4);
    SmoothnessReport r = CheckSemismoothness(
        inst, inst.values(), BidProfile(inst.values()), Format::kGreedyGsp);
    EXPECT_GE(r.slack, -1e-9);
  }
}

TEST(SemismoothnessTest, ConservativeProfiles) {
  std::mt19937_64 rng(97);
  int checked_opt = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    AuctionInstance inst =
        testing::RandomInstance(rng, 1 + rep % 6, 1 + rep % 4);
    BidProfile b(testing::ConservativeBids(rng, inst));
    for (Format f : {Format::kGreedyGsp, Format::kGreedyVcg, Format::kOptGsp}) {
      SmoothnessReport r = CheckSemismoothness(inst, inst.values(), b, f);
      EXPECT_GE(r.slack, -1e-9) << FormatName(f) << " rep " << rep;
      if (f == Format::kOptGsp && !r.vacuous) ++checked_opt;
    }
  }
  EXPECT_GT(checked_opt, 300);
}

TEST(SemismoothnessTest, WrongParametersFail) {
  AuctionInstance inst = ZeroOne(0.1);
  SmoothnessReport r = CheckSemismoothness(
      inst, inst.values(), BidProfile({0.0, 1.0}), Format::kGreedyGsp,
      {1.0, 0.0});
  EXPECT_LT(r.slack, 0.0);
  EXPECT_NEAR(r.slack, 1.0 - 1.9, 1e-12);
}

TEST(SemismoothnessTest, OptGspParameters) {
  AuctionInstance inst = testing::TwoByTwo(0.25, 0.5, 1.0, 1.0);
  SmoothnessParameters p = DefaultSmoothness(inst, Format::kOptGsp);
  EXPECT_DOUBLE_EQ(p.mu, 1.0 / 0.25);
  EXPECT_THROW(DefaultSmoothness(inst, Format::kOptVcg), std::domain_error);
}

TEST(EmpiricalPoaTest, Examples) {
  AuctionInstance inst = ZeroOne(0.1);
  std::vector<AuctionOutcome> at_opt = {
      RunAuction(inst, BidProfile(inst.values()), Format::kOptVcg)};
  EXPECT_NEAR(EmpiricalPoa(inst, at_opt), 1.0, 1e-12);
  std::vector<AuctionOutcome> bad = {
      RunAuction(inst, BidProfile({0.0, 1.0}), Format::kGreedyGsp)};
  EXPECT_NEAR(EmpiricalPoa(inst, bad), 1.9, 1e-12);

  const double eps = 0.01;
  AuctionInstance three = ThreeTypes(eps);
  std::vector<AuctionOutcome> eq = {
      RunAuction(three, BidProfile(three.values()), Format::kGreedyVcg)};
  const double ratio = (3 - 2 * eps - 2 * eps * eps) /
                       (2 + eps + eps * eps - eps * eps * eps);
  EXPECT_NEAR(EmpiricalPoa(three, eq), ratio, 1e-12);
  EXPECT_NEAR(ratio, 1.48241, 1e-5);

  EXPECT_THROW(EmpiricalPoa(inst, std::vector<AuctionOutcome>{}),
               std::invalid_argument);
  AuctionInstance zero = inst.WithValues(std::vector<double>{0.0, 0.0});
  std::vector<AuctionOutcome> none = {
      RunAuction(zero, BidProfile({0.0, 0.0}), Format::kGreedyGsp)};
  EXPECT_THROW(EmpiricalPoa(zero, none), std::domain_error);
}

}  // namespace
}  // namespace adtypes
