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

#include "adtypes/fixtures.h"

#include <cmath>

#include "adtypes/engine.h"
#include "gtest/gtest.h"

namespace adtypes {
namespace {

TEST(ZeroOneFixtureTest, EquilibriumAndRatio) {
  for (double eps : {kExampleEpsilon, kReportEpsilon}) {
    const NamedInstance f = ZeroOneFixture(eps);
    const NashCheck nash = VerifyPureNash(f);
    EXPECT_TRUE(nash.certified) << nash.max_gain;
    EXPECT_LE(nash.max_gain, 1e-12);
    EXPECT_NEAR(MeasuredRatio(f), 2.0 - eps, 1e-12);
    EXPECT_TRUE(IsConservative(f));
    EXPECT_EQ(RunAuction(f.instance, f.equilibrium, f.format).revenue, 0.0);
  }
}

TEST(ZeroOneFixtureTest, TruthfulAIsNotEquilibrium) {
  const NamedInstance f = ZeroOneFixture(0.1);
  const BidProfile perturbed = f.equilibrium.WithBid(0, f.instance.value(0));
  const NashCheck nash = VerifyPureNash(f.instance, perturbed, f.format);
  EXPECT_FALSE(nash.certified);
  EXPECT_GT(nash.max_gain, 0.1);
}

TEST(ThreeTypesFixtureTest, EquilibriumAndRatio) {
  for (double eps : {kExampleEpsilon, kReportEpsilon}) {
    const NamedInstance f = ThreeTypesFixture(eps);
    const NashCheck nash = VerifyPureNash(f);
    EXPECT_TRUE(nash.certified) << nash.max_gain;
    const double e = eps;
    EXPECT_NEAR(MeasuredRatio(f),
                (3 - 2 * e - 2 * e * e) / (2 + e + e * e - e * e * e), 1e-12);
    EXPECT_TRUE(IsConservative(f));
  }
  EXPECT_NEAR(MeasuredRatio(ThreeTypesFixture(0.01)), 1.48241, 1e-5);
}

TEST(OptGspFamilyTest, Efficiency) {
  EXPECT_EQ(OptGspFamilyEfficiency(0.0), 0.75);
  EXPECT_DOUBLE_EQ(OptGspFamilyEfficiency(0.25), 0.85);
  EXPECT_NEAR(OptGspFamilyEfficiency(0.5 - 1e-9), 1.0, 1e-8);
}

TEST(OptGspFamilyTest, MeasuredMatchesClosedForm) {
  for (double da : {0.0, 0.001, 0.1, 0.25, 0.4, 0.49}) {
    const NamedInstance f = OptGspFamily(da);
    EXPECT_NEAR(1.0 / MeasuredRatio(f), OptGspFamilyEfficiency(da), 1e-12)
        << da;
    const NashCheck nash = VerifyPureNash(f);
    EXPECT_TRUE(nash.certified) << da << " " << nash.max_gain;
  }
  const NamedInstance zero = OptGspFamily(0.0);
  EXPECT_EQ(1.0 / MeasuredRatio(zero), 0.75);
}

TEST(OptGspFamilyTest, OverbidsOnlyAtTheEdge) {
  EXPECT_FALSE(IsConservative(OptGspFamily(0.0)));
  EXPECT_TRUE(IsConservative(OptGspFamily(0.25)));
}

TEST(OptGspFamilyTest, Domain) {
  EXPECT_THROW(OptGspFamily(0.5), std::domain_error);
  EXPECT_THROW(OptGspFamily(-0.1), std::domain_error);
  EXPECT_THROW(OptGspFamily(0.2, 0.0), std::domain_error);
}

TEST(VerifyPureNashTest, RejectsCoarseGrid) {
  const NamedInstance f = ZeroOneFixture();
  EXPECT_THROW(VerifyPureNash(f, 999), std::invalid_argument);
}

TEST(VerifyPureNashTest, TruthfulOptVcgIsEquilibrium) {
  const NamedInstance f = ThreeTypesFixture(0.1);
  const BidProfile truthful(f.instance.values());
  EXPECT_TRUE(VerifyPureNash(f.instance, truthful, Format::kOptVcg).certified);
}

TEST(PoaSuiteTest, Rows) {
  const std::vector<PoaRow> rows = PoaSuite();
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].format, "GreedyGSP");
  EXPECT_NEAR(rows[0].ratio, 1.99, 1e-12);
  EXPECT_EQ(rows[0].upper_bound, 4.0);
  EXPECT_EQ(rows[1].format, "GreedyVCG");
  EXPECT_EQ(rows[1].upper_bound, 4.0);
  EXPECT_EQ(rows[2].format, "OptGSP");
  EXPECT_NEAR(rows[2].upper_bound, 2.0 + 2.0 / 0.001, 1e-9);
  EXPECT_NEAR(rows[2].ratio, 4.0 / 3.0, 2e-3);
  for (const PoaRow& r : rows) {
    EXPECT_TRUE(r.ok) << r.fixture;
    EXPECT_LE(r.ratio, r.lower_bound + 1e-12);
  }
}

}  // namespace
}  // namespace adtypes
