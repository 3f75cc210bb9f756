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

#include "adtypes/learning.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "adtypes/instance_io.h"

namespace adtypes {

BidGrid::BidGrid(int d, double cap) {
  if (d < 1) throw std::invalid_argument("grid needs d >= 1");
  if (!std::isfinite(cap) || cap < 0.0) {
    throw std::invalid_argument("grid cap must be finite and >= 0");
  }
  if (cap == 0.0) {
    points_ = {0.0};
    return;
  }
  points_.resize(d + 1);
  for (int k = 0; k <= d; ++k) points_[k] = cap * k / d;
}

BidGrid BidGrid::ForBidder(double value, int d, bool value_dependent,
                           bool overbidding) {
  double cap = value_dependent ? value : 1.0;
  if (overbidding) cap *= 2.0;
  return BidGrid(d, cap);
}

UtilityScale UtilityScale::ForBidder(double value, double top_discount,
                                     double max_bid) {
  return {-top_discount * std::max(0.0, max_bid - value),
          top_discount * value};
}

LearnerState::LearnerState(int arms, double eta, std::size_t history_capacity,
                           std::uint64_t history_seed)
    : eta_(eta),
      log_weights_(arms, 0.0),
      probabilities_(arms, arms > 0 ? 1.0 / arms : 0.0),
      cumulative_utility_(arms, 0.0),
      capacity_(history_capacity),
      history_rng_(history_seed) {
  if (arms < 1) throw std::invalid_argument("learner needs at least one arm");
  if (!std::isfinite(eta) || eta < 0.0) {
    throw std::invalid_argument("learning rate must be finite and >= 0");
  }
  if (history_capacity < 1) {
    throw std::invalid_argument("history capacity must be positive");
  }
}

std::span<const double> LearnerState::snapshot(std::size_t k) const {
  return std::span<const double>(history_).subspan(k * probabilities_.size(),
                                                   probabilities_.size());
}

void LearnerState::Record(std::span<const double> played) {
  const std::size_t k = probabilities_.size();
  if (history_rounds_.size() < capacity_) {
    history_.insert(history_.end(), played.begin(), played.end());
    history_rounds_.push_back(rounds_);
    return;
  }
  subsampled_ = true;
  const std::uint64_t j =
      UniformIndex(history_rng_, static_cast<std::uint64_t>(rounds_));
  if (j < capacity_) {
    std::copy(played.begin(), played.end(), history_.begin() + j * k);
    history_rounds_[j] = rounds_;
  }
}

void LearnerState::Update(std::span<const double> utilities) {
  Update(utilities, probabilities_);
}

void LearnerState::Update(std::span<const double> utilities,
                          std::span<const double> played) {
  const int k = arms();
  if (static_cast<int>(utilities.size()) != k ||
      static_cast<int>(played.size()) != k) {
    throw std::invalid_argument("utility vector length does not match arms");
  }
  for (double u : utilities) {
    if (!std::isfinite(u)) throw std::invalid_argument("non-finite utility");
  }
  ++rounds_;
  // Copy first: `played` may alias probabilities_.
  thread_local std::vector<double> snapshot;
  snapshot.assign(played.begin(), played.end());
  Record(snapshot);
  double expected = 0.0;
  for (int a = 0; a < k; ++a) {
    expected += snapshot[a] * utilities[a];
    cumulative_utility_[a] += utilities[a];
    log_weights_[a] += eta_ * utilities[a];
  }
  cumulative_expected_ += expected;
  const double top = *std::max_element(log_weights_.begin(), log_weights_.end());
  double total = 0.0;
  for (int a = 0; a < k; ++a) {
    log_weights_[a] -= top;
    probabilities_[a] = std::exp(log_weights_[a]);
    total += probabilities_[a];
  }
  for (double& p : probabilities_) p /= total;
}

LearnerState EwStep(LearnerState state, std::span<const double> utilities) {
  state.Update(utilities);
  return state;
}

double OptimalLearningRate(int arms, std::int64_t horizon) {
  if (arms < 2) throw std::invalid_argument("need at least two arms");
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  return std::sqrt(std::log(static_cast<double>(arms)) /
                   static_cast<double>(horizon));
}

std::int64_t RoundsForEpsilon(int arms, double epsilon) {
  if (arms < 2) throw std::invalid_argument("need at least two arms");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  return static_cast<std::int64_t>(
      std::ceil(4.0 * std::log(static_cast<double>(arms)) /
                (epsilon * epsilon)));
}

double AverageRegret(const LearnerState& state) {
  if (state.rounds() < 1) throw std::invalid_argument("no rounds played");
  const auto& cum = state.cumulative_utility();
  const double best = *std::max_element(cum.begin(), cum.end());
  return (best - state.cumulative_expected_utility()) /
         static_cast<double>(state.rounds());
}

double MaxAverageRegret(std::span<const LearnerState* const> learners) {
  if (learners.empty()) throw std::invalid_argument("no learners");
  double worst = -std::numeric_limits<double>::infinity();
  for (const LearnerState* l : learners) {
    if (l->rounds() != learners.front()->rounds()) {
      throw std::invalid_argument("learners have different horizons");
    }
    worst = std::max(worst, AverageRegret(*l));
  }
  return worst;
}

bool CertifyCce(std::span<const LearnerState* const> learners,
                double epsilon) {
  return MaxAverageRegret(learners) <= epsilon;
}

int SampleArm(std::span<const double> probabilities, Rng& rng) {
  const double u = Uniform01(rng);
  double acc = 0.0;
  const int k = static_cast<int>(probabilities.size());
  for (int a = 0; a < k; ++a) {
    acc += probabilities[a];
    if (u < acc) return a;
  }
  // Rounding left u above the running total; take the last positive arm.
  for (int a = k - 1; a >= 0; --a) {
    if (probabilities[a] > 0.0) return a;
  }
  return k - 1;
}

AverageEmpiricalDistribution::AverageEmpiricalDistribution(
    std::vector<const LearnerState*> learners, std::vector<BidGrid> grids)
    : learners_(std::move(learners)), grids_(std::move(grids)) {
  if (learners_.empty() || learners_.size() != grids_.size()) {
    throw std::invalid_argument("need one grid per learner");
  }
  const LearnerState& first = *learners_.front();
  if (first.history_size() == 0) {
    throw std::invalid_argument("learners have no history");
  }
  for (std::size_t p = 0; p < learners_.size(); ++p) {
    const LearnerState& l = *learners_[p];
    if (l.arms() != grids_[p].size()) {
      throw std::invalid_argument("grid size does not match learner arms");
    }
    if (l.history_size() != first.history_size()) {
      throw std::invalid_argument("learner histories are not aligned");
    }
    for (std::size_t k = 0; k < l.history_size(); ++k) {
      if (l.snapshot_round(k) != first.snapshot_round(k)) {
        throw std::invalid_argument("learner histories are not aligned");
      }
    }
  }
}

std::vector<int> AverageEmpiricalDistribution::SampleArms(Rng& rng) const {
  const std::size_t t = UniformIndex(rng, learners_.front()->history_size());
  std::vector<int> arms(learners_.size());
  for (std::size_t p = 0; p < learners_.size(); ++p) {
    arms[p] = SampleArm(learners_[p]->snapshot(t), rng);
  }
  return arms;
}

BidProfile AverageEmpiricalDistribution::Sample(Rng& rng) const {
  const std::vector<int> arms = SampleArms(rng);
  std::vector<double> bids(arms.size());
  for (std::size_t p = 0; p < arms.size(); ++p) bids[p] = grids_[p][arms[p]];
  return BidProfile(std::move(bids));
}

void WriteTraceCsv(std::ostream& out,
                   std::span<const LearnerState* const> learners) {
  out << "round,player,arm,weight\n";
  for (std::size_t p = 0; p < learners.size(); ++p) {
    const LearnerState& l = *learners[p];
    for (std::size_t k = 0; k < l.history_size(); ++k) {
      const auto w = l.snapshot(k);
      for (std::size_t a = 0; a < w.size(); ++a) {
        out << l.snapshot_round(k) << ',' << p << ',' << a << ','
            << FormatDouble(w[a]) << '\n';
      }
    }
  }
}

}  // namespace adtypes
