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

// Exact expected payoffs in the agent-based auction.
//
// For an agent a bidding grid level b, the expected payoff against a profile
// of independent opponent strategies is
//
//   sum over scenarios S containing a of  mu(S | a in S) *
//       [ (v_a - alpha * b) * P(M_S < b) - (1 - alpha) * E(M_S ; M_S < b) ]
//
// where M_S is the highest opposing bid in S (0 when a is alone). Ties lose:
// only a strictly higher bid wins. P(M_S < b) is the product of the opponents'
// strict CDFs, and the truncated expectation is accumulated in one sweep over
// the grid from increments of that product.

#ifndef FBAUCTION_PAYOFF_HPP_
#define FBAUCTION_PAYOFF_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "fbauction/model.hpp"

namespace fba {

struct ConditionalScenario {
  std::size_t scenario = 0;      // index into instance.scenarios
  std::size_t opponent_set = 0;  // index into ConditionalScenarioTable::opponent_sets
  double probability = 0.0;      // mu(S | a in S)
};

struct ConditionalScenarioTable {
  std::vector<std::vector<ConditionalScenario>> rows;  // per agent
  // Distinct opponent sets S \ {a}, sorted member lists. May be empty sets.
  std::vector<std::vector<AgentId>> opponent_sets;
};

ConditionalScenarioTable ConditionalScenarios(const AuctionInstance& instance);

// Row a holds P(bid_a < grid[j]) for j in [0, m], where entry m is the
// beyond-grid value (total mass).
class StrictCdfTable {
 public:
  StrictCdfTable() = default;
  StrictCdfTable(std::size_t num_agents, std::size_t grid_size);

  void Assign(const StrategyProfile& profile);

  std::span<const double> row(std::size_t a) const {
    return {data_.data() + a * stride_, stride_};
  }
  std::size_t num_agents() const { return stride_ == 0 ? 0 : data_.size() / stride_; }
  std::size_t grid_size() const { return stride_ == 0 ? 0 : stride_ - 1; }

 private:
  std::size_t stride_ = 0;
  std::vector<double> data_;
};

StrictCdfTable StrictCdf(const StrategyProfile& profile, const BidGrid& grid);

enum class PaymentPath {
  kAuto,     // skips the second-price term when alpha == 1
  kMixture,  // always evaluates the alpha-mixture arithmetic
};

// Precomputed view of an instance for repeated payoff evaluation. Holds a
// copy of what it needs; safe to share across threads once constructed.
class PayoffEngine {
 public:
  explicit PayoffEngine(const AuctionInstance& instance,
                        PaymentPath path = PaymentPath::kAuto);

  std::size_t num_agents() const { return values_.size(); }
  std::size_t grid_size() const { return bids_.size(); }
  const ConditionalScenarioTable& table() const { return table_; }

  // Payoff of agent a at bid indices [0, end), written to out[0, end).
  void Curve(AgentId a, const StrictCdfTable& cdf, std::span<double> out,
             std::size_t end) const;
  void Curve(AgentId a, const StrictCdfTable& cdf, std::span<double> out) const {
    Curve(a, cdf, out, grid_size());
  }

  // Curves of every agent, row-major (agent, bid index). With
  // share_opponent_sets, each distinct opponent set's win probabilities are
  // computed once and reused by all agents facing it; the arithmetic is the
  // same either way, so the results are bit-identical.
  void AllCurves(const StrictCdfTable& cdf, bool share_opponent_sets,
                 std::vector<double>& out) const;

 private:
  bool mixture() const;
  // H(j) = P(all opponents in the set bid below grid[j]) for j in [0, end).
  void WinProbabilities(std::size_t opponent_set, const StrictCdfTable& cdf,
                        std::span<double> h, std::size_t end) const;
  // Turns accumulated win mass and truncated expectation into payoffs.
  void Finish(AgentId a, std::span<const double> win, std::span<const double> below,
              std::span<double> out, std::size_t end) const;
  void Accumulate(double weight, std::span<const double> h, std::span<double> win,
                  std::span<double> below, std::size_t end) const;

  std::vector<double> values_;
  std::vector<double> bids_;
  double alpha_;
  PaymentPath path_;
  ConditionalScenarioTable table_;
};

double ExpectedPayoff(AgentId a, std::size_t bid_index, const StrategyProfile& profile,
                      const AuctionInstance& instance);

std::vector<double> PayoffCurve(AgentId a, const StrategyProfile& profile,
                                const AuctionInstance& instance);

// Payoff of a's own mixed strategy against the rest of the profile.
double MixedPayoff(AgentId a, const StrategyProfile& profile,
                   const AuctionInstance& instance);

// Reference payoff by enumerating every joint opponent bid in the supports.
// Throws Error if more than max_terms outcomes would be enumerated.
double BruteForcePayoff(AgentId a, std::size_t bid_index, const StrategyProfile& profile,
                        const AuctionInstance& instance,
                        std::size_t max_terms = 10'000'000);

}  // namespace fba

#endif  // FBAUCTION_PAYOFF_HPP_
