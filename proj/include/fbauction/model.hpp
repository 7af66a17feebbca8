// Copyright 2026 The fbauction Authors
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

#ifndef FBAUCTION_MODEL_HPP_
#define FBAUCTION_MODEL_HPP_

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fba {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an instance or strategy violates one of its invariants.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

struct AgentId {
  std::size_t index = 0;
  friend auto operator<=>(const AgentId&, const AgentId&) = default;
};

// Strictly increasing bid levels starting at 0.
class BidGrid {
 public:
  explicit BidGrid(std::vector<double> bids);

  // [0, max/steps, 2*max/steps, ..., max].
  static BidGrid Uniform(double max, std::size_t steps);

  std::size_t size() const { return bids_.size(); }
  double operator[](std::size_t j) const { return bids_[j]; }
  double max() const { return bids_.back(); }
  std::span<const double> bids() const { return bids_; }

  // True when the grid was built by Uniform (serialized as {max, steps}).
  bool is_uniform() const { return uniform_steps_ > 0; }
  std::size_t uniform_steps() const { return uniform_steps_; }

  friend bool operator==(const BidGrid&, const BidGrid&) = default;

 private:
  std::vector<double> bids_;
  std::size_t uniform_steps_ = 0;
};

struct Scenario {
  std::vector<AgentId> members;  // sorted, unique
  double probability = 0.0;
  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// The winner pays alpha * own bid + (1 - alpha) * highest opposing bid.
struct PaymentRule {
  double alpha = 1.0;
  bool is_first_price() const { return alpha == 1.0; }
  friend bool operator==(const PaymentRule&, const PaymentRule&) = default;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Agent-based auction: per-agent values and a distribution over the subsets
// of agents taking part in the auction.
struct AuctionInstance {
  std::vector<double> values;
  std::vector<Scenario> scenarios;
  BidGrid grid = BidGrid::Uniform(1.0, 1);
  PaymentRule rule;

  std::size_t num_agents() const { return values.size(); }
  double value(AgentId a) const { return values.at(a.index); }

  friend bool operator==(const AuctionInstance&,
                         const AuctionInstance&) = default;
};

class MixedStrategy {
 public:
  explicit MixedStrategy(std::vector<double> weights);

  static MixedStrategy PointMass(std::size_t grid_size, std::size_t index);
  static MixedStrategy Uniform(std::size_t grid_size);

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t j) const { return weights_[j]; }
  std::span<const double> weights() const { return weights_; }
  // Mutable access for the solver's in-place updates; callers keep the
  // weights on the simplex.
  std::span<double> mutable_weights() { return weights_; }

  friend bool operator==(const MixedStrategy&, const MixedStrategy&) = default;

 private:
  std::vector<double> weights_;
};

using StrategyProfile = std::vector<MixedStrategy>;

StrategyProfile UniformProfile(std::size_t num_agents, std::size_t grid_size);
StrategyProfile PointMassProfile(std::size_t num_agents, std::size_t grid_size,
                                 std::size_t index);

// Throws ValidationError unless the profile has one simplex vector of the
// grid's dimension per agent.
void CheckProfile(const StrategyProfile& profile, std::size_t num_agents,
                  std::size_t grid_size);

ValidationReport ValidateInstance(const AuctionInstance& instance);

// Sorts scenario members, merges scenarios with identical member sets and
// drops zero-probability scenarios. Scenario order is by first occurrence.
std::vector<Scenario> CanonicalScenarios(std::vector<Scenario> scenarios);

// Canonicalizes the scenarios and throws ValidationError if the result is
// invalid. Returns the canonical instance.
AuctionInstance MakeInstance(std::vector<double> values,
                             std::vector<Scenario> scenarios, BidGrid grid,
                             PaymentRule rule = {});

// Per-agent total probability of taking part, mu(S contains a).
std::vector<double> ParticipationProbabilities(const AuctionInstance& instance);

// Player-based auction with discrete value sets.
struct PlayerAuction {
  struct Player {
    std::vector<double> values;  // sorted, distinct
  };
  std::vector<Player> players;
  // Joint probability for each value profile, keyed by per-player value
  // indices. Profiles absent from the map have probability 0.
  std::map<std::vector<std::size_t>, double> joint;

  // Builds the product distribution from per-player marginals.
  static PlayerAuction Independent(std::vector<std::vector<double>> values,
                                   std::vector<std::vector<double>> marginals);

  std::size_t num_players() const { return players.size(); }
};

ValidationReport ValidatePlayerAuction(const PlayerAuction& auction);

// Agent bookkeeping for a converted player auction.
struct AgentPartition {
  struct Origin {
    std::size_t player = 0;
    std::size_t value_index = 0;
  };
  std::vector<std::vector<AgentId>> blocks;  // per player, ordered by value
  std::vector<Origin> origin;                // per agent

  std::size_t num_agents() const { return origin.size(); }
};

struct ConvertedAuction {
  std::vector<double> values;
  std::vector<Scenario> scenarios;
  AgentPartition partition;

  // Attaches a grid and payment rule, producing a validated instance.
  AuctionInstance WithGrid(BidGrid grid, PaymentRule rule = {}) const;
};

// One agent per (player, value) pair; one scenario per positive-probability
// value profile, selecting the matching agent of every player.
ConvertedAuction ConvertPlayerToAgent(const PlayerAuction& auction);

// Recomposes player payoffs from participation-conditional agent payoffs:
// sum over the player's agents of payoff(a) * mu(S contains a).
std::vector<double> PlayerPayoff(const AgentPartition& partition,
                                 std::span<const double> agent_payoffs,
                                 std::span<const double> participation);

}  // namespace fba

#endif  // FBAUCTION_MODEL_HPP_
