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

#ifndef ADTYPES_LEARNING_H_
#define ADTYPES_LEARNING_H_

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "adtypes/model.h"
#include "adtypes/random.h"

namespace adtypes {

// d + 1 evenly spaced bids from 0 to cap. A zero cap collapses to {0}.
class BidGrid {
 public:
  BidGrid(int d, double cap);

  // cap = 1, or the value when value_dependent; doubled when overbidding.
  static BidGrid ForBidder(double value, int d, bool value_dependent,
                           bool overbidding);

  int size() const { return static_cast<int>(points_.size()); }
  double operator[](int k) const { return points_[k]; }
  const std::vector<double>& points() const { return points_; }
  double cap() const { return points_.back(); }

 private:
  std::vector<double> points_;
};

// Affine map of raw utilities into [0, 1] for one bidder. The best case is
// the top-slot discount times the value; the worst is paying the largest grid
// bid above value in the top slot.
struct UtilityScale {
  double lo = 0.0;
  double hi = 1.0;

  static UtilityScale ForBidder(double value, double top_discount,
                                double max_bid);
  double Normalize(double u) const {
    return hi > lo ? (u - lo) / (hi - lo) : 0.0;
  }
};

inline constexpr std::size_t kDefaultHistoryCapacity = 1'000'000;

// Exponential-weights learner over a finite set of arms.
class LearnerState {
 public:
  // Starts uniform. History keeps one played distribution per round until
  // `history_capacity` rounds, then switches to reservoir sampling driven by
  // `history_seed`. Learners sharing a seed and round count keep aligned
  // reservoirs.
  LearnerState(int arms, double eta,
               std::size_t history_capacity = kDefaultHistoryCapacity,
               std::uint64_t history_seed = 0);

  int arms() const { return static_cast<int>(probabilities_.size()); }
  double eta() const { return eta_; }
  std::int64_t rounds() const { return rounds_; }
  const std::vector<double>& weights() const { return probabilities_; }

  // Records `played` (the distribution the arm was drawn from this round) and
  // the full-feedback utilities, then applies w <- w * exp(eta * u).
  // Utilities must be finite; the caller normalizes them to [0, 1].
  void Update(std::span<const double> utilities);
  void Update(std::span<const double> utilities,
              std::span<const double> played);

  const std::vector<double>& cumulative_utility() const {
    return cumulative_utility_;
  }
  double cumulative_expected_utility() const { return cumulative_expected_; }

  std::size_t history_size() const { return history_rounds_.size(); }
  std::span<const double> snapshot(std::size_t k) const;
  std::int64_t snapshot_round(std::size_t k) const {
    return history_rounds_[k];
  }
  bool history_subsampled() const { return subsampled_; }

 private:
  void Record(std::span<const double> played);

  double eta_;
  std::vector<double> log_weights_;
  std::vector<double> probabilities_;
  std::vector<double> cumulative_utility_;
  double cumulative_expected_ = 0.0;
  std::int64_t rounds_ = 0;

  std::size_t capacity_;
  Rng history_rng_;
  std::vector<double> history_;
  std::vector<std::int64_t> history_rounds_;
  bool subsampled_ = false;
};

// Functional form of LearnerState::Update.
LearnerState EwStep(LearnerState state, std::span<const double> utilities);

// sqrt(ln K / T).
double OptimalLearningRate(int arms, std::int64_t horizon);
// ceil(4 ln K / eps^2).
std::int64_t RoundsForEpsilon(int arms, double epsilon);

// (max_a sum_t u_t(a) - sum_t <p_t, u_t>) / T.
double AverageRegret(const LearnerState& state);

// True iff every learner's average regret is at most epsilon. Learners must
// have played the same number of rounds.
bool CertifyCce(std::span<const LearnerState* const> learners, double epsilon);
double MaxAverageRegret(std::span<const LearnerState* const> learners);

// Picks a uniformly random recorded round and draws one arm per learner from
// that round's distributions.
class AverageEmpiricalDistribution {
 public:
  AverageEmpiricalDistribution(std::vector<const LearnerState*> learners,
                               std::vector<BidGrid> grids);

  BidProfile Sample(Rng& rng) const;
  std::vector<int> SampleArms(Rng& rng) const;

 private:
  std::vector<const LearnerState*> learners_;
  std::vector<BidGrid> grids_;
};

// Draws an arm index from a probability vector.
int SampleArm(std::span<const double> probabilities, Rng& rng);

// CSV rows "round,player,arm,weight" for every recorded snapshot.
void WriteTraceCsv(std::ostream& out,
                   std::span<const LearnerState* const> learners);

}  // namespace adtypes

#endif  // ADTYPES_LEARNING_H_
