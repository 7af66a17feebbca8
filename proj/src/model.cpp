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

#include "fbauction/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace fba {
namespace {

constexpr double kProbabilityTolerance = 1e-9;

std::string Num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

std::string JoinViolations(const std::vector<std::string>& violations) {
  std::string msg = "invalid input:";
  for (const auto& v : violations) {
    msg += "\n  - ";
    msg += v;
  }
  return msg;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error(JoinViolations(violations)), violations_(std::move(violations)) {}

BidGrid::BidGrid(std::vector<double> bids) : bids_(std::move(bids)) {
  if (bids_.size() < 2) throw ValidationError({"bid grid needs at least 2 levels"});
  if (bids_.front() != 0.0) throw ValidationError({"bid grid must start at 0"});
  for (std::size_t j = 1; j < bids_.size(); ++j) {
    if (!std::isfinite(bids_[j]) || !(bids_[j] > bids_[j - 1])) {
      throw ValidationError({"bid grid must be finite and strictly increasing (index " +
                             std::to_string(j) + ")"});
    }
  }
}

BidGrid BidGrid::Uniform(double max, std::size_t steps) {
  if (steps == 0) throw ValidationError({"grid steps must be positive"});
  if (!(max > 0.0) || !std::isfinite(max)) {
    throw ValidationError({"grid max must be positive, got " + Num(max)});
  }
  std::vector<double> bids(steps + 1);
  for (std::size_t j = 0; j <= steps; ++j) {
    bids[j] = max * static_cast<double>(j) / static_cast<double>(steps);
  }
  bids[steps] = max;  // max * steps / steps can be off by an ulp
  BidGrid grid(std::move(bids));
  grid.uniform_steps_ = steps;
  return grid;
}

MixedStrategy::MixedStrategy(std::vector<double> weights)
    : weights_(std::move(weights)) {
  if (weights_.empty()) throw ValidationError({"mixed strategy is empty"});
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw ValidationError({"mixed strategy weight " + Num(w) + " is not a probability"});
    }
    total += w;
  }
  if (std::abs(total - 1.0) > kProbabilityTolerance) {
    throw ValidationError({"mixed strategy weights sum to " + Num(total)});
  }
}

MixedStrategy MixedStrategy::PointMass(std::size_t grid_size, std::size_t index) {
  if (index >= grid_size) throw Error("point mass index out of grid range");
  std::vector<double> w(grid_size, 0.0);
  w[index] = 1.0;
  return MixedStrategy(std::move(w));
}

MixedStrategy MixedStrategy::Uniform(std::size_t grid_size) {
  return MixedStrategy(
      std::vector<double>(grid_size, 1.0 / static_cast<double>(grid_size)));
}

StrategyProfile UniformProfile(std::size_t num_agents, std::size_t grid_size) {
  return StrategyProfile(num_agents, MixedStrategy::Uniform(grid_size));
}

StrategyProfile PointMassProfile(std::size_t num_agents, std::size_t grid_size,
                                 std::size_t index) {
  return StrategyProfile(num_agents, MixedStrategy::PointMass(grid_size, index));
}

void CheckProfile(const StrategyProfile& profile, std::size_t num_agents,
                  std::size_t grid_size) {
  std::vector<std::string> violations;
  if (profile.size() != num_agents) {
    violations.push_back("profile has " + std::to_string(profile.size()) +
                         " strategies for " + std::to_string(num_agents) + " agents");
  }
  for (std::size_t a = 0; a < profile.size(); ++a) {
    if (profile[a].size() != grid_size) {
      violations.push_back("strategy of agent " + std::to_string(a) + " has dimension " +
                           std::to_string(profile[a].size()) + ", grid has " +
                           std::to_string(grid_size));
    }
  }
  if (!violations.empty()) throw ValidationError(std::move(violations));
}

std::vector<Scenario> CanonicalScenarios(std::vector<Scenario> scenarios) {
  std::vector<Scenario> out;
  std::map<std::vector<AgentId>, std::size_t> seen;
  for (auto& s : scenarios) {
    std::sort(s.members.begin(), s.members.end());
    s.members.erase(std::unique(s.members.begin(), s.members.end()), s.members.end());
    if (s.probability == 0.0) continue;
    auto [it, inserted] = seen.emplace(s.members, out.size());
    if (inserted) {
      out.push_back(std::move(s));
    } else {
      out[it->second].probability += s.probability;
    }
  }
  return out;
}

ValidationReport ValidateInstance(const AuctionInstance& instance) {
  ValidationReport report;
  auto& v = report.violations;
  const std::size_t n = instance.num_agents();
  if (n == 0) v.push_back("instance has no agents");
  for (std::size_t a = 0; a < n; ++a) {
    double x = instance.values[a];
    if (!(x >= 0.0) || !std::isfinite(x)) {
      v.push_back("agent " + std::to_string(a) + " has invalid value " + Num(x));
    }
  }
  if (!(instance.rule.alpha >= 0.0 && instance.rule.alpha <= 1.0)) {
    v.push_back("payment rule alpha " + Num(instance.rule.alpha) + " outside [0, 1]");
  }

  std::vector<Scenario> raw = instance.scenarios;
  double total = 0.0;
  bool members_ok = true;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    const Scenario& s = raw[k];
    if (s.members.empty()) v.push_back("scenario " + std::to_string(k) + " has no members");
    for (AgentId m : s.members) {
      if (m.index >= n) {
        v.push_back("scenario " + std::to_string(k) + " references unknown agent " +
                    std::to_string(m.index));
        members_ok = false;
      }
    }
    if (!(s.probability >= 0.0) || !std::isfinite(s.probability)) {
      v.push_back("scenario " + std::to_string(k) + " has invalid probability " +
                  Num(s.probability));
    } else {
      total += s.probability;
    }
  }
  if (std::abs(total - 1.0) > kProbabilityTolerance) {
    v.push_back("probabilities sum to " + Num(total));
  }
  if (members_ok) {
    std::vector<double> mass(n, 0.0);
    for (const Scenario& s : CanonicalScenarios(std::move(raw))) {
      if (!(s.probability > 0.0)) continue;
      for (AgentId m : s.members) mass[m.index] += s.probability;
    }
    for (std::size_t a = 0; a < n; ++a) {
      if (!(mass[a] > 0.0)) v.push_back("agent " + std::to_string(a) + " never participates");
    }
  }
  return report;
}

AuctionInstance MakeInstance(std::vector<double> values, std::vector<Scenario> scenarios,
                             BidGrid grid, PaymentRule rule) {
  AuctionInstance instance{std::move(values), std::move(scenarios), std::move(grid), rule};
  ValidationReport report = ValidateInstance(instance);
  if (!report.ok()) throw ValidationError(std::move(report.violations));
  instance.scenarios = CanonicalScenarios(std::move(instance.scenarios));
  return instance;
}

std::vector<double> ParticipationProbabilities(const AuctionInstance& instance) {
  std::vector<double> mass(instance.num_agents(), 0.0);
  for (const Scenario& s : instance.scenarios) {
    for (AgentId m : s.members) mass[m.index] += s.probability;
  }
  return mass;
}

PlayerAuction PlayerAuction::Independent(std::vector<std::vector<double>> values,
                                         std::vector<std::vector<double>> marginals) {
  if (values.size() != marginals.size()) {
    throw ValidationError({"values and marginals disagree on the number of players"});
  }
  PlayerAuction auction;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].size() != marginals[i].size()) {
      throw ValidationError({"player " + std::to_string(i) +
                             " has mismatched values and probabilities"});
    }
    if (values[i].empty()) {
      throw ValidationError({"player " + std::to_string(i) + " has an empty value set"});
    }
    auction.players.push_back({values[i]});
  }
  std::vector<std::size_t> idx(values.size(), 0);
  while (true) {
    double p = 1.0;
    for (std::size_t i = 0; i < idx.size(); ++i) p *= marginals[i][idx[i]];
    if (p != 0.0) auction.joint[idx] = p;
    std::size_t i = 0;
    for (; i < idx.size(); ++i) {
      if (++idx[i] < values[i].size()) break;
      idx[i] = 0;
    }
    if (i == idx.size()) break;
  }
  return auction;
}

ValidationReport ValidatePlayerAuction(const PlayerAuction& auction) {
  ValidationReport report;
  auto& v = report.violations;
  if (auction.players.empty()) v.push_back("auction has no players");
  for (std::size_t i = 0; i < auction.players.size(); ++i) {
    const auto& vals = auction.players[i].values;
    if (vals.empty()) v.push_back("player " + std::to_string(i) + " has an empty value set");
    for (std::size_t k = 0; k < vals.size(); ++k) {
      if (!(vals[k] >= 0.0) || !std::isfinite(vals[k])) {
        v.push_back("player " + std::to_string(i) + " has invalid value " + Num(vals[k]));
      }
      if (k > 0 && !(vals[k] > vals[k - 1])) {
        v.push_back("player " + std::to_string(i) + " values are not strictly increasing");
      }
    }
  }
  double total = 0.0;
  for (const auto& [profile, p] : auction.joint) {
    bool in_range = profile.size() == auction.players.size();
    for (std::size_t i = 0; in_range && i < profile.size(); ++i) {
      in_range = profile[i] < auction.players[i].values.size();
    }
    if (!in_range) v.push_back("joint table has a value profile outside the value sets");
    if (!(p >= 0.0) || !std::isfinite(p)) {
      v.push_back("joint table has invalid probability " + Num(p));
    } else {
      total += p;
    }
  }
  if (std::abs(total - 1.0) > kProbabilityTolerance) {
    v.push_back("probabilities sum to " + Num(total));
  }
  return report;
}

AuctionInstance ConvertedAuction::WithGrid(BidGrid grid, PaymentRule rule) const {
  return MakeInstance(values, scenarios, std::move(grid), rule);
}

ConvertedAuction ConvertPlayerToAgent(const PlayerAuction& auction) {
  ValidationReport report = ValidatePlayerAuction(auction);
  if (!report.ok()) throw ValidationError(std::move(report.violations));

  ConvertedAuction out;
  out.partition.blocks.resize(auction.num_players());
  for (std::size_t i = 0; i < auction.num_players(); ++i) {
    const auto& vals = auction.players[i].values;
    for (std::size_t k = 0; k < vals.size(); ++k) {
      AgentId id{out.values.size()};
      out.values.push_back(vals[k]);
      out.partition.blocks[i].push_back(id);
      out.partition.origin.push_back({i, k});
    }
  }
  for (const auto& [profile, p] : auction.joint) {
    if (p == 0.0) continue;
    Scenario s;
    s.probability = p;
    for (std::size_t i = 0; i < profile.size(); ++i) {
      s.members.push_back(out.partition.blocks[i][profile[i]]);
    }
    out.scenarios.push_back(std::move(s));
  }
  return out;
}

std::vector<double> PlayerPayoff(const AgentPartition& partition,
                                 std::span<const double> agent_payoffs,
                                 std::span<const double> participation) {
  if (agent_payoffs.size() != partition.num_agents() ||
      participation.size() != partition.num_agents()) {
    throw Error("player payoff: expected " + std::to_string(partition.num_agents()) +
                " agent entries, got " + std::to_string(agent_payoffs.size()) + " and " +
                std::to_string(participation.size()));
  }
  std::vector<double> out(partition.blocks.size(), 0.0);
  for (std::size_t i = 0; i < partition.blocks.size(); ++i) {
    for (AgentId a : partition.blocks[i]) {
      out[i] += agent_payoffs[a.index] * participation[a.index];
    }
  }
  return out;
}

}  // namespace fba
