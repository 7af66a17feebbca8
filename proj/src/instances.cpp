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

#include "fbauction/instances.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace fba {
namespace {

Scenario Pair(std::size_t a, std::size_t b, double p) {
  return Scenario{{AgentId{a}, AgentId{b}}, p};
}

// Equal-weight averaging of past best responses, eta_k = 1 / (k + 1). A
// coefficient of 0.01 would leave more than 85% of the initial profile in
// place after 10^6 steps (prod (1 - 0.01 / (k + 1)) ~ (k + 1)^-0.01).
SolverConfig RecommendedConfig(std::size_t iterations) {
  SolverConfig config;
  config.schedule = LearningSchedule::Harmonic(1.0);
  config.max_iterations = iterations;
  config.check_interval = 1000;
  config.init = InitKind::kUniform;
  return config;
}

NamedInstance FromPlayers(std::string name, PlayerAuction players, BidGrid grid) {
  ConvertedAuction converted = ConvertPlayerToAgent(players);
  NamedInstance out;
  out.name = std::move(name);
  out.instance = converted.WithGrid(std::move(grid));
  out.players = std::move(players);
  out.partition = std::move(converted.partition);
  return out;
}

// Settings for the two player-based examples, whose grid, schedule and
// iteration budget were not published. Bids above the top value 0.25 are
// dominated, so the grid stops there.
SolverConfig PlayerExampleConfig() {
  SolverConfig config = RecommendedConfig(100'000);
  config.independent_player_cache = true;
  return config;
}

}  // namespace

NamedInstance Example1() {
  NamedInstance out;
  out.name = "example-1";
  out.instance = MakeInstance({0.0, 0.0, 1.0, 1.0},
                              {Pair(0, 1, 0.25), Pair(2, 3, 0.25), Pair(0, 3, 0.25),
                               Pair(1, 2, 0.25)},
                              BidGrid::Uniform(1.0, 400));
  out.config = RecommendedConfig(100'000);
  out.expected_epsilon = 8e-5;
  return out;
}

NamedInstance Example2() {
  NamedInstance out;
  out.name = "example-2";
  out.instance = MakeInstance({1.0 / 3.0, 2.0 / 3.0, 1.0}, {Pair(0, 1, 0.5), Pair(1, 2, 0.5)},
                              BidGrid::Uniform(1.0, 600));
  out.config = RecommendedConfig(1'000'000);
  out.expected_epsilon = 1.5e-4;
  return out;
}

NamedInstance Example3() {
  NamedInstance out;
  out.name = "example-3";
  Scenario all{{AgentId{0}, AgentId{1}, AgentId{2}, AgentId{3}}, 0.25};
  out.instance = MakeInstance({0.25, 0.5, 0.5, 1.0},
                              {Pair(0, 1, 0.25), Pair(1, 2, 0.25), Pair(0, 2, 0.25), all},
                              BidGrid::Uniform(1.0, 400));
  out.config = RecommendedConfig(100'000);
  out.expected_epsilon = 2.5e-3;
  return out;
}

NamedInstance Example4() {
  const std::vector<double> values = {0.1, 0.2, 0.25};
  PlayerAuction players = PlayerAuction::Independent(
      {values, values, values}, {{0.25, 0.25, 0.5}, {0.05, 0.45, 0.5}, {0.05, 0.45, 0.5}});
  NamedInstance out = FromPlayers("example-4", std::move(players), BidGrid::Uniform(0.25, 400));
  out.config = PlayerExampleConfig();
  out.expected_epsilon = 4e-5;
  return out;
}

NamedInstance Example5() {
  PlayerAuction players = PlayerAuction::Independent(
      {{0.1, 0.25}, {0.1, 0.2, 0.25}}, {{0.25, 0.75}, {0.05, 0.45, 0.5}});
  NamedInstance out = FromPlayers("example-5", std::move(players), BidGrid::Uniform(0.25, 400));
  out.config = PlayerExampleConfig();
  out.expected_epsilon = 9e-4;
  return out;
}

NamedInstance Example(int number) {
  switch (number) {
    case 1: return Example1();
    case 2: return Example2();
    case 3: return Example3();
    case 4: return Example4();
    case 5: return Example5();
    default:
      throw ValidationError({"unknown example " + std::to_string(number) + " (expected 1-5)"});
  }
}

NamedInstance RandomInstance(std::uint64_t seed, std::size_t n_agents,
                             std::size_t n_scenarios) {
  if (n_agents < 2) throw ValidationError({"random instances need at least 2 agents"});
  if (n_scenarios == 0) throw ValidationError({"random instances need at least 1 scenario"});

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> values(n_agents);
  for (double& v : values) v = unit(rng);

  std::uniform_int_distribution<std::size_t> first(0, n_agents - 1);
  std::uniform_int_distribution<std::size_t> second(0, n_agents - 2);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t k = 0; k < n_scenarios; ++k) {
    std::size_t i = first(rng);
    std::size_t j = second(rng);
    if (j >= i) ++j;
    pairs.emplace_back(std::min(i, j), std::max(i, j));
  }

  NamedInstance out;
  out.name = "random-seed-" + std::to_string(seed);
  std::set<std::size_t> used;
  for (auto [i, j] : pairs) used.insert({i, j});
  std::vector<std::size_t> new_index(n_agents, 0);
  std::vector<double> kept;
  for (std::size_t a = 0; a < n_agents; ++a) {
    if (used.count(a)) {
      new_index[a] = kept.size();
      kept.push_back(values[a]);
    } else {
      out.notes.push_back("agent " + std::to_string(a) + " is in no sampled pair; removed");
    }
  }
  const double p = 1.0 / static_cast<double>(n_scenarios);
  std::vector<Scenario> scenarios;
  for (auto [i, j] : pairs) scenarios.push_back(Pair(new_index[i], new_index[j], p));

  out.instance = MakeInstance(std::move(kept), std::move(scenarios), BidGrid::Uniform(1.0, 100));
  out.config = RecommendedConfig(1'000'000);
  return out;
}

}  // namespace fba
