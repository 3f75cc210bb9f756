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

#ifndef ADTYPES_TESTS_TEST_UTIL_H_
#define ADTYPES_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "adtypes/model.h"

namespace adtypes::testing {

// Random curves with strictly positive, non-increasing discounts.
inline AuctionInstance RandomInstance(std::mt19937_64& rng, int n, int m,
                                      int types = 3) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::map<std::string, DiscountCurve> curves;
  for (int t = 0; t < types; ++t) {
    std::vector<double> d(m);
    double x = 0.5 + 0.5 * u(rng);
    for (int s = 0; s < m; ++s) {
      d[s] = x;
      x *= 0.05 + 0.95 * u(rng);
    }
    curves.emplace("t" + std::to_string(t), DiscountCurve(d));
  }
  std::vector<Bidder> bidders;
  std::uniform_int_distribution<int> pick(0, types - 1);
  for (int i = 0; i < n; ++i) {
    bidders.push_back({i, "t" + std::to_string(pick(rng)), u(rng)});
  }
  return AuctionInstance(std::move(bidders), std::move(curves), m);
}

// Uniform bids in [0, value] (conservative).
inline std::vector<double> ConservativeBids(std::mt19937_64& rng,
                                            const AuctionInstance& instance) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> b(instance.bidder_count());
  for (int i = 0; i < instance.bidder_count(); ++i) {
    b[i] = u(rng) * instance.value(i);
  }
  return b;
}

// Bids drawn from a small lattice so exact ties occur often.
inline std::vector<double> LatticeBids(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> k(0, 4);
  std::vector<double> b(n);
  for (double& x : b) x = 0.25 * k(rng);
  return b;
}

// Two types with curves (1, da) and (1, db); bidder 0 is A, bidder 1 is B.
inline AuctionInstance TwoByTwo(double da, double db, double va, double vb) {
  return AuctionInstance({{0, "A", va}, {1, "B", vb}},
                         {{"A", DiscountCurve({1.0, da})},
                          {"B", DiscountCurve({1.0, db})}},
                         2);
}

}  // namespace adtypes::testing

#endif  // ADTYPES_TESTS_TEST_UTIL_H_
