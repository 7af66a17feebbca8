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

#ifndef FBAUCTION_INSTANCES_HPP_
#define FBAUCTION_INSTANCES_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fbauction/model.hpp"
#include "fbauction/solver.hpp"

namespace fba {

class ParseError : public Error {
 public:
  using Error::Error;
};

struct NamedInstance {
  std::string name;
  AuctionInstance instance;
  SolverConfig config;                     // recommended settings
  std::optional<double> expected_epsilon;  // value reported for the original run
  std::optional<PlayerAuction> players;    // set for player-based instances
  std::optional<AgentPartition> partition;
  std::vector<std::string> notes;
};

// Two bidders with values uniform on {0, 1}, written as four agents.
NamedInstance Example1();
// Three agents, values (1/3, 2/3, 1), scenarios {a1,a2} and {a2,a3}.
NamedInstance Example2();
// Four agents, values (1/4, 2/4, 2/4, 1), three pairs and one 4-agent scenario.
NamedInstance Example3();
// Three independent players with values in {0.1, 0.2, 0.25}; nine agents.
NamedInstance Example4();
// Two independent players; two and three agents.
NamedInstance Example5();
// Dispatches on the example number 1..5.
NamedInstance Example(int number);

// n_agents values uniform on [0, 1] and n_scenarios uniformly drawn pairs of
// probability 1/n_scenarios each (repeated pairs merged). Agents that end up
// in no pair are removed and listed in notes.
NamedInstance RandomInstance(std::uint64_t seed, std::size_t n_agents = 10,
                             std::size_t n_scenarios = 20);

struct LoadedInstance {
  std::string name;
  AuctionInstance instance;
  std::optional<AgentPartition> partition;  // player-based files
  std::optional<SolverConfig> config;       // optional "solver" block
};

// Instance JSON. Agent-based:
//   {"values": [..], "scenarios": [{"members": [..], "prob": p}, ..],
//    "grid": {"max": x, "steps": n} | {"bids": [..]}, "rule": {"alpha": a}}
// Player-based (converted on load):
//   {"players": [{"values": [..], "probs": [..]}, ..],
//    "joint": [{"profile": [value index per player], "prob": p}, ..], ...}
// Throws ParseError on malformed documents and ValidationError on invariant
// violations.
LoadedInstance LoadInstanceJson(std::string_view text);
LoadedInstance LoadInstanceFile(const std::filesystem::path& path);

std::string InstanceToJson(const AuctionInstance& instance, const std::string& name = {});
std::string PlayerAuctionToJson(const PlayerAuction& auction, const BidGrid& grid,
                                const PaymentRule& rule, const std::string& name = {});

std::string ConfigToJson(const SolverConfig& config);
std::string CertificateToJson(const EquilibriumCertificate& certificate, const BidGrid& grid,
                              std::optional<std::size_t> iterations,
                              const std::optional<std::string>& config_json);

}  // namespace fba

#endif  // FBAUCTION_INSTANCES_HPP_
