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

#include "fbauction/payoff.hpp"

#include <algorithm>
#include <map>

namespace fba {

ConditionalScenarioTable ConditionalScenarios(const AuctionInstance& instance) {
  const std::size_t n = instance.num_agents();
  std::vector<double> mass = ParticipationProbabilities(instance);
  for (std::size_t a = 0; a < n; ++a) {
    if (!(mass[a] > 0.0)) {
      throw ValidationError({"agent " + std::to_string(a) + " never participates"});
    }
  }

  ConditionalScenarioTable table;
  table.rows.resize(n);
  std::map<std::vector<AgentId>, std::size_t> set_ids;
  for (std::size_t k = 0; k < instance.scenarios.size(); ++k) {
    const Scenario& s = instance.scenarios[k];
    for (AgentId a : s.members) {
      std::vector<AgentId> opponents;
      opponents.reserve(s.members.size() - 1);
      for (AgentId o : s.members) {
        if (o != a) opponents.push_back(o);
      }
      auto [it, inserted] = set_ids.emplace(opponents, table.opponent_sets.size());
      if (inserted) table.opponent_sets.push_back(std::move(opponents));
      table.rows[a.index].push_back({k, it->second, s.probability / mass[a.index]});
    }
  }
  return table;
}

StrictCdfTable::StrictCdfTable(std::size_t num_agents, std::size_t grid_size)
    : stride_(grid_size + 1), data_(num_agents * (grid_size + 1), 0.0) {}

void StrictCdfTable::Assign(const StrategyProfile& profile) {
  for (std::size_t a = 0; a < profile.size(); ++a) {
    auto w = profile[a].weights();
    double* row = data_.data() + a * stride_;
    double acc = 0.0;
    row[0] = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
      acc += w[j];
      row[j + 1] = acc;
    }
  }
}

StrictCdfTable StrictCdf(const StrategyProfile& profile, const BidGrid& grid) {
  CheckProfile(profile, profile.size(), grid.size());
  StrictCdfTable table(profile.size(), grid.size());
  table.Assign(profile);
  return table;
}

PayoffEngine::PayoffEngine(const AuctionInstance& instance, PaymentPath path)
    : values_(instance.values),
      bids_(instance.grid.bids().begin(), instance.grid.bids().end()),
      alpha_(instance.rule.alpha),
      path_(path),
      table_(ConditionalScenarios(instance)) {}

bool PayoffEngine::mixture() const {
  return path_ == PaymentPath::kMixture || alpha_ != 1.0;
}

void PayoffEngine::WinProbabilities(std::size_t opponent_set, const StrictCdfTable& cdf,
                                    std::span<double> h, std::size_t end) const {
  const auto& opponents = table_.opponent_sets[opponent_set];
  if (opponents.empty()) {
    std::fill(h.begin(), h.begin() + end, 1.0);
    return;
  }
  auto first = cdf.row(opponents[0].index);
  std::copy(first.begin(), first.begin() + end, h.begin());
  for (std::size_t k = 1; k < opponents.size(); ++k) {
    auto row = cdf.row(opponents[k].index);
    for (std::size_t j = 0; j < end; ++j) h[j] *= row[j];
  }
}

void PayoffEngine::Accumulate(double weight, std::span<const double> h,
                              std::span<double> win, std::span<double> below,
                              std::size_t end) const {
  for (std::size_t j = 0; j < end; ++j) win[j] += weight * h[j];
  if (!mixture()) return;
  // E(M ; M < grid[j]) = sum_{i < j} grid[i] * (H(i + 1) - H(i)); products of
  // non-decreasing CDFs are non-decreasing, so every increment is >= 0.
  double truncated = 0.0;
  for (std::size_t j = 0; j < end; ++j) {
    below[j] += weight * truncated;
    if (j + 1 < end) truncated += bids_[j] * (h[j + 1] - h[j]);
  }
}

void PayoffEngine::Finish(AgentId a, std::span<const double> win,
                          std::span<const double> below, std::span<double> out,
                          std::size_t end) const {
  const double v = values_[a.index];
  if (!mixture()) {
    for (std::size_t j = 0; j < end; ++j) out[j] = (v - bids_[j]) * win[j];
    return;
  }
  const double second = 1.0 - alpha_;
  for (std::size_t j = 0; j < end; ++j) {
    out[j] = (v - alpha_ * bids_[j]) * win[j] - second * below[j];
  }
}

void PayoffEngine::Curve(AgentId a, const StrictCdfTable& cdf, std::span<double> out,
                         std::size_t end) const {
  if (a.index >= num_agents()) throw Error("agent index out of range");
  if (end > grid_size() || out.size() < end) throw Error("payoff curve range out of grid");
  std::vector<double> h(end), win(end, 0.0), below(end, 0.0);
  for (const ConditionalScenario& row : table_.rows[a.index]) {
    WinProbabilities(row.opponent_set, cdf, h, end);
    Accumulate(row.probability, h, win, below, end);
  }
  Finish(a, win, below, out, end);
}

void PayoffEngine::AllCurves(const StrictCdfTable& cdf, bool share_opponent_sets,
                             std::vector<double>& out) const {
  const std::size_t m = grid_size();
  const std::size_t n = num_agents();
  out.resize(n * m);
  std::vector<double> win(m), below(m), h(m);
  std::vector<double> shared;
  if (share_opponent_sets) {
    shared.resize(table_.opponent_sets.size() * m);
    for (std::size_t s = 0; s < table_.opponent_sets.size(); ++s) {
      WinProbabilities(s, cdf, std::span<double>(shared).subspan(s * m, m), m);
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    std::fill(win.begin(), win.end(), 0.0);
    std::fill(below.begin(), below.end(), 0.0);
    for (const ConditionalScenario& row : table_.rows[a]) {
      std::span<const double> probs;
      if (share_opponent_sets) {
        probs = std::span<const double>(shared).subspan(row.opponent_set * m, m);
      } else {
        WinProbabilities(row.opponent_set, cdf, h, m);
        probs = h;
      }
      Accumulate(row.probability, probs, win, below, m);
    }
    Finish(AgentId{a}, win, below, std::span<double>(out).subspan(a * m, m), m);
  }
}

double ExpectedPayoff(AgentId a, std::size_t bid_index, const StrategyProfile& profile,
                      const AuctionInstance& instance) {
  if (bid_index >= instance.grid.size()) {
    throw Error("bid index " + std::to_string(bid_index) + " outside grid of size " +
                std::to_string(instance.grid.size()));
  }
  PayoffEngine engine(instance);
  StrictCdfTable cdf = StrictCdf(profile, instance.grid);
  std::vector<double> out(bid_index + 1);
  engine.Curve(a, cdf, out, bid_index + 1);
  return out[bid_index];
}

std::vector<double> PayoffCurve(AgentId a, const StrategyProfile& profile,
                                const AuctionInstance& instance) {
  PayoffEngine engine(instance);
  StrictCdfTable cdf = StrictCdf(profile, instance.grid);
  std::vector<double> out(instance.grid.size());
  engine.Curve(a, cdf, out);
  return out;
}

double MixedPayoff(AgentId a, const StrategyProfile& profile,
                   const AuctionInstance& instance) {
  std::vector<double> curve = PayoffCurve(a, profile, instance);
  auto w = profile[a.index].weights();
  double total = 0.0;
  for (std::size_t j = 0; j < curve.size(); ++j) total += w[j] * curve[j];
  return total;
}

double BruteForcePayoff(AgentId a, std::size_t bid_index, const StrategyProfile& profile,
                        const AuctionInstance& instance, std::size_t max_terms) {
  CheckProfile(profile, instance.num_agents(), instance.grid.size());
  if (bid_index >= instance.grid.size()) throw Error("bid index outside grid");
  const double mass = ParticipationProbabilities(instance).at(a.index);
  if (!(mass > 0.0)) throw Error("agent never participates");

  struct Support {
    std::vector<std::size_t> index;
    std::vector<double> weight;
  };
  auto support_of = [&](AgentId o) {
    Support s;
    for (std::size_t j = 0; j < instance.grid.size(); ++j) {
      if (profile[o.index][j] > 0.0) {
        s.index.push_back(j);
        s.weight.push_back(profile[o.index][j]);
      }
    }
    return s;
  };

  std::size_t terms = 0;
  for (const Scenario& sc : instance.scenarios) {
    if (std::find(sc.members.begin(), sc.members.end(), a) == sc.members.end()) continue;
    std::size_t count = 1;
    for (AgentId o : sc.members) {
      if (o == a) continue;
      count *= support_of(o).index.size();
      if (count > max_terms) break;
    }
    terms += count;
    if (terms > max_terms) {
      throw Error("brute-force enumeration exceeds " + std::to_string(max_terms) + " terms");
    }
  }

  const double v = instance.value(a);
  const double b = instance.grid[bid_index];
  const double alpha = instance.rule.alpha;
  double total = 0.0;
  for (const Scenario& sc : instance.scenarios) {
    if (std::find(sc.members.begin(), sc.members.end(), a) == sc.members.end()) continue;
    std::vector<Support> opp;
    for (AgentId o : sc.members) {
      if (o != a) opp.push_back(support_of(o));
    }
    double scenario_payoff = 0.0;
    std::vector<std::size_t> pos(opp.size(), 0);
    while (true) {
      double weight = 1.0;
      bool wins = true;
      double highest = 0.0;
      for (std::size_t k = 0; k < opp.size(); ++k) {
        std::size_t j = opp[k].index[pos[k]];
        weight *= opp[k].weight[pos[k]];
        if (!(bid_index > j)) wins = false;
        highest = std::max(highest, instance.grid[j]);
      }
      if (wins) {
        double price = alpha * b + (1.0 - alpha) * highest;
        scenario_payoff += weight * (v - price);
      }
      std::size_t k = 0;
      for (; k < opp.size(); ++k) {
        if (++pos[k] < opp[k].index.size()) break;
        pos[k] = 0;
      }
      if (k == opp.size()) break;
    }
    total += (sc.probability / mass) * scenario_payoff;
  }
  return total;
}

}  // namespace fba
