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

#include "adtypes/allocation.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace adtypes {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRelativeTieTolerance = 1e-12;

// Slot-subset DP is used while the table stays small.
constexpr int kMaxDpSlots = 16;
constexpr std::size_t kMaxDpCells = std::size_t{1} << 22;

void CheckBids(const AuctionInstance& instance, std::span<const double> bids,
               int excluded) {
  if (static_cast<int>(bids.size()) != instance.bidder_count()) {
    throw std::invalid_argument("bid vector length does not match bidders");
  }
  if (excluded != kNoBidder &&
      (excluded < 0 || excluded >= instance.bidder_count())) {
    throw std::domain_error("excluded bidder out of range");
  }
}

bool UseDp(int n, int m) {
  return m <= kMaxDpSlots &&
         (static_cast<std::size_t>(n) + 1) << m <= kMaxDpCells;
}

double TieTolerance(double scale) {
  return kRelativeTieTolerance * (1.0 + std::abs(scale));
}

// best[i * 2^m + mask]: optimal weight of bidders i..n-1 given that the slots
// in `mask` are taken.
struct SubsetTable {
  int n = 0;
  int m = 0;
  std::vector<double> best;

  double at(int i, unsigned mask) const {
    return best[(static_cast<std::size_t>(i) << m) + mask];
  }
};

void FillSubsetTable(const AuctionInstance& instance,
                     std::span<const double> bids, int excluded,
                     SubsetTable& table) {
  const int n = instance.bidder_count();
  const int m = instance.slot_count();
  const unsigned full = 1u << m;
  table.n = n;
  table.m = m;
  table.best.assign((static_cast<std::size_t>(n) + 1) << m, 0.0);
  for (int i = n - 1; i >= 0; --i) {
    double* row = &table.best[static_cast<std::size_t>(i) << m];
    const double* next = &table.best[static_cast<std::size_t>(i + 1) << m];
    if (i == excluded) {
      std::copy(next, next + full, row);
      continue;
    }
    const double b = bids[i];
    for (unsigned mask = 0; mask < full; ++mask) {
      double v = next[mask];
      for (int s = 0; s < m; ++s) {
        const unsigned bit = 1u << s;
        if (mask & bit) continue;
        const double cand = instance.discount(i, s) * b + next[mask | bit];
        if (cand > v) v = cand;
      }
      row[mask] = v;
    }
  }
}

SubsetTable& ScratchTable() {
  thread_local SubsetTable table;
  return table;
}

Assignment ReconstructLexicographic(const AuctionInstance& instance,
                                    std::span<const double> bids, int excluded,
                                    const SubsetTable& table) {
  const int n = instance.bidder_count();
  const int m = instance.slot_count();
  const double tol = TieTolerance(table.at(0, 0));
  std::vector<int> slot_of(n, kUnallocated);
  unsigned mask = 0;
  for (int i = 0; i < n; ++i) {
    if (i == excluded) continue;
    const double target = table.at(i, mask);
    for (int s = 0; s < m; ++s) {
      const unsigned bit = 1u << s;
      if (mask & bit) continue;
      if (instance.discount(i, s) * bids[i] + table.at(i + 1, mask | bit) >=
          target - tol) {
        slot_of[i] = s;
        mask |= bit;
        break;
      }
    }
  }
  return Assignment::FromSlots(std::move(slot_of), m);
}

// Kuhn-Munkres on a rows x cols cost matrix with rows <= cols; returns the
// column matched to each row and the minimum total cost.
double Hungarian(int rows, int cols, const std::vector<double>& cost,
                 std::vector<int>& match) {
  std::vector<double> u(rows + 1, 0.0), v(cols + 1, 0.0), minv(cols + 1);
  std::vector<int> p(cols + 1, 0), way(cols + 1, 0);
  std::vector<char> used(cols + 1);
  auto c = [&](int r, int col) {
    return cost[static_cast<std::size_t>(r - 1) * cols + (col - 1)];
  };
  for (int r = 1; r <= rows; ++r) {
    p[0] = r;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= cols; ++j) {
        if (used[j]) continue;
        const double cur = c(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= cols; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  match.assign(rows, -1);
  double total = 0.0;
  for (int j = 1; j <= cols; ++j) {
    if (p[j] != 0) {
      match[p[j] - 1] = j - 1;
      total += c(p[j], j);
    }
  }
  return total;
}

// Optimal weight of the given bidders over the given slots. Each bidder may
// also stay out through its own zero-weight dummy column.
double MatchingValue(const AuctionInstance& instance,
                     std::span<const double> bids,
                     const std::vector<int>& bidder_ids,
                     const std::vector<int>& slot_ids) {
  const int rows = static_cast<int>(bidder_ids.size());
  if (rows == 0 || slot_ids.empty()) return 0.0;
  const int slots = static_cast<int>(slot_ids.size());
  const int cols = slots + rows;
  std::vector<double> cost(static_cast<std::size_t>(rows) * cols, 0.0);
  for (int r = 0; r < rows; ++r) {
    const int i = bidder_ids[r];
    for (int k = 0; k < slots; ++k) {
      cost[static_cast<std::size_t>(r) * cols + k] =
          -instance.discount(i, slot_ids[k]) * bids[i];
    }
  }
  std::vector<int> match;
  return -Hungarian(rows, cols, cost, match);
}

Assignment AllocateOptimalHungarian(const AuctionInstance& instance,
                                    std::span<const double> bids,
                                    int excluded) {
  const int n = instance.bidder_count();
  const int m = instance.slot_count();
  std::vector<int> rest;
  for (int i = 0; i < n; ++i) {
    if (i != excluded) rest.push_back(i);
  }
  std::vector<int> free_slots(m);
  for (int s = 0; s < m; ++s) free_slots[s] = s;
  const double tol =
      TieTolerance(MatchingValue(instance, bids, rest, free_slots));
  std::vector<int> slot_of(n, kUnallocated);
  // Fix bidders one at a time to the smallest slot that keeps the remaining
  // problem optimal.
  for (std::size_t k = 0; k < rest.size(); ++k) {
    const int i = rest[k];
    std::vector<int> later(rest.begin() + k + 1, rest.end());
    std::vector<int> with_i(rest.begin() + k, rest.end());
    const double target = MatchingValue(instance, bids, with_i, free_slots);
    for (std::size_t f = 0; f < free_slots.size(); ++f) {
      std::vector<int> others = free_slots;
      others.erase(others.begin() + f);
      const double value = instance.discount(i, free_slots[f]) * bids[i] +
                           MatchingValue(instance, bids, later, others);
      if (value >= target - tol) {
        slot_of[i] = free_slots[f];
        free_slots = std::move(others);
        break;
      }
    }
  }
  return Assignment::FromSlots(std::move(slot_of), m);
}

struct BruteForceSearch {
  const AuctionInstance& instance;
  std::span<const double> bids;
  int excluded;
  int n;
  int m;
  std::vector<int> slot_of;
  std::vector<char> used;
  double best = -kInf;
  double threshold = kInf;
  bool found = false;
  std::vector<int> result;

  void Run(int i, double weight) {
    if (found) return;
    if (i == n) {
      if (threshold == kInf) {
        best = std::max(best, weight);
      } else if (weight >= threshold) {
        found = true;
        result = slot_of;
      }
      return;
    }
    if (i != excluded) {
      for (int s = 0; s < m; ++s) {
        if (used[s]) continue;
        used[s] = 1;
        slot_of[i] = s;
        Run(i + 1, weight + instance.discount(i, s) * bids[i]);
        slot_of[i] = kUnallocated;
        used[s] = 0;
        if (found) return;
      }
    }
    Run(i + 1, weight);
  }
};

}  // namespace

std::string_view AllocationRuleName(AllocationRule rule) {
  return rule == AllocationRule::kGreedy ? "greedy" : "optimal";
}

Assignment AllocateGreedy(const AuctionInstance& instance,
                          std::span<const double> bids, int excluded) {
  CheckBids(instance, bids, excluded);
  const int n = instance.bidder_count();
  const int m = instance.slot_count();
  Assignment a = Assignment::Empty(n, m);
  for (int s = 0; s < m; ++s) {
    int winner = kNoBidder;
    double top = -1.0;
    for (int i = 0; i < n; ++i) {
      if (i == excluded || a.slot_of[i] != kUnallocated) continue;
      const double w = instance.discount(i, s) * bids[i];
      if (w > top) {
        top = w;
        winner = i;
      }
    }
    if (winner == kNoBidder) break;
    a.slot_of[winner] = s;
    a.bidder_in[s] = winner;
  }
  return a;
}

Assignment AllocateGreedy(const AuctionInstance& instance,
                          const BidProfile& bids) {
  CheckProfileFits(instance, bids);
  return AllocateGreedy(instance, bids.bids());
}

Assignment AllocateOptimal(const AuctionInstance& instance,
                           std::span<const double> bids, int excluded) {
  CheckBids(instance, bids, excluded);
  if (!UseDp(instance.bidder_count(), instance.slot_count())) {
    return AllocateOptimalHungarian(instance, bids, excluded);
  }
  SubsetTable& table = ScratchTable();
  FillSubsetTable(instance, bids, excluded, table);
  return ReconstructLexicographic(instance, bids, excluded, table);
}

Assignment AllocateOptimal(const AuctionInstance& instance,
                           const BidProfile& bids) {
  CheckProfileFits(instance, bids);
  return AllocateOptimal(instance, bids.bids());
}

std::int64_t CountCandidateAssignments(int bidders, int slots) {
  // sum_k C(n, k) * m! / (m - k)!, saturating.
  constexpr double kCap = 9e18;
  double total = 0.0;
  double choose = 1.0;
  double perm = 1.0;
  for (int k = 0; k <= std::min(bidders, slots); ++k) {
    if (k > 0) {
      choose = choose * (bidders - k + 1) / k;
      perm *= (slots - k + 1);
    }
    total += choose * perm;
    if (total > kCap) return std::numeric_limits<std::int64_t>::max();
  }
  return static_cast<std::int64_t>(std::llround(total));
}

Assignment AllocateBruteForce(const AuctionInstance& instance,
                              std::span<const double> bids, int excluded) {
  CheckBids(instance, bids, excluded);
  const int n = instance.bidder_count();
  const int m = instance.slot_count();
  const int active = excluded == kNoBidder ? n : n - 1;
  const std::int64_t candidates = CountCandidateAssignments(active, m);
  if (candidates > kBruteForceCandidateLimit) {
    throw std::length_error("brute force refused: " +
                            std::to_string(candidates) + " candidates");
  }
  BruteForceSearch search{instance,
                          bids,
                          excluded,
                          n,
                          m,
                          std::vector<int>(n, kUnallocated),
                          std::vector<char>(m, 0),
                          -kInf,
                          kInf,
                          false,
                          {}};
  search.Run(0, 0.0);
  search.threshold = search.best - TieTolerance(search.best);
  search.Run(0, 0.0);
  return Assignment::FromSlots(std::move(search.result), m);
}

Assignment AllocateBruteForce(const AuctionInstance& instance,
                              const BidProfile& bids) {
  CheckProfileFits(instance, bids);
  return AllocateBruteForce(instance, bids.bids());
}

Assignment Allocate(AllocationRule rule, const AuctionInstance& instance,
                    std::span<const double> bids, int excluded) {
  return rule == AllocationRule::kGreedy
             ? AllocateGreedy(instance, bids, excluded)
             : AllocateOptimal(instance, bids, excluded);
}

std::vector<double> OptimalValueWithSlotRemoved(const AuctionInstance& instance,
                                                std::span<const double> bids,
                                                int excluded) {
  CheckBids(instance, bids, excluded);
  const int n = instance.bidder_count();
  const int m = instance.slot_count();
  std::vector<double> out(m + 1);
  if (UseDp(n, m)) {
    SubsetTable& table = ScratchTable();
    FillSubsetTable(instance, bids, excluded, table);
    for (int t = 0; t < m; ++t) out[t] = table.at(0, 1u << t);
    out[m] = table.at(0, 0);
    return out;
  }
  std::vector<int> rest;
  for (int i = 0; i < n; ++i) {
    if (i != excluded) rest.push_back(i);
  }
  std::vector<int> all(m);
  for (int s = 0; s < m; ++s) all[s] = s;
  for (int t = 0; t < m; ++t) {
    std::vector<int> slots = all;
    slots.erase(slots.begin() + t);
    out[t] = MatchingValue(instance, bids, rest, slots);
  }
  out[m] = MatchingValue(instance, bids, rest, all);
  return out;
}

}  // namespace adtypes
