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

// JSON reading and writing for instances, configurations and certificates.

#include <cmath>
#include <fstream>
#include <sstream>

#include "fbauction/instances.hpp"
#include "json.hpp"

namespace fba {
namespace {

using nlohmann::json;

const json& Require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

template <typename T>
T As(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ParseError(std::string("field '") + what + "' has the wrong type");
  }
}

BidGrid ParseGrid(const json& j) {
  if (j.contains("bids")) return BidGrid(As<std::vector<double>>(j.at("bids"), "grid.bids"));
  double max = As<double>(Require(j, "max"), "grid.max");
  auto steps = As<long long>(Require(j, "steps"), "grid.steps");
  if (steps <= 0) throw ValidationError({"grid steps must be positive"});
  return BidGrid::Uniform(max, static_cast<std::size_t>(steps));
}

PaymentRule ParseRule(const json& doc) {
  PaymentRule rule;
  if (doc.contains("rule")) {
    const json& r = doc.at("rule");
    if (r.contains("alpha")) rule.alpha = As<double>(r.at("alpha"), "rule.alpha");
  }
  return rule;
}

SolverConfig ParseConfig(const json& j) {
  SolverConfig config;
  if (!j.is_object()) throw ParseError("field 'solver' must be an object");
  if (j.contains("schedule")) {
    const json& s = j.at("schedule");
    if (s.contains("kind")) {
      config.schedule.kind = ParseScheduleKind(As<std::string>(s.at("kind"), "schedule.kind"));
    }
    if (s.contains("c")) config.schedule.c = As<double>(s.at("c"), "schedule.c");
  }
  if (j.contains("max_iterations")) {
    config.max_iterations = As<std::size_t>(j.at("max_iterations"), "max_iterations");
  }
  if (j.contains("epsilon_target") && !j.at("epsilon_target").is_null()) {
    config.epsilon_target = As<double>(j.at("epsilon_target"), "epsilon_target");
  }
  if (j.contains("check_interval")) {
    config.check_interval = As<std::size_t>(j.at("check_interval"), "check_interval");
  }
  if (j.contains("init")) config.init = ParseInitKind(As<std::string>(j.at("init"), "init"));
  if (config.init == InitKind::kExplicit) {
    throw ParseError("explicit initial profiles cannot be given in instance files");
  }
  if (j.contains("independent_player_cache")) {
    config.independent_player_cache =
        As<bool>(j.at("independent_player_cache"), "independent_player_cache");
  }
  if (j.contains("seed")) config.seed = As<std::uint64_t>(j.at("seed"), "seed");
  ValidateConfig(config);
  return config;
}

PlayerAuction ParsePlayers(const json& doc) {
  const json& players = Require(doc, "players");
  if (!players.is_array()) throw ParseError("field 'players' must be an array");
  const bool has_joint = doc.contains("joint");
  std::vector<std::vector<double>> values;
  std::vector<std::vector<double>> marginals;
  for (const json& p : players) {
    values.push_back(As<std::vector<double>>(Require(p, "values"), "players.values"));
    if (!has_joint) {
      marginals.push_back(As<std::vector<double>>(Require(p, "probs"), "players.probs"));
    }
  }
  if (!has_joint) {
    for (std::size_t i = 0; i < marginals.size(); ++i) {
      double total = 0.0;
      for (double q : marginals[i]) total += q;
      if (std::abs(total - 1.0) > 1e-9) {
        throw ValidationError({"player " + std::to_string(i) + " probabilities sum to " +
                               std::to_string(total)});
      }
    }
    return PlayerAuction::Independent(std::move(values), std::move(marginals));
  }

  PlayerAuction auction;
  for (auto& v : values) auction.players.push_back({std::move(v)});
  const json& joint = doc.at("joint");
  if (!joint.is_array()) throw ParseError("field 'joint' must be an array");
  for (const json& row : joint) {
    auto profile = As<std::vector<std::size_t>>(Require(row, "profile"), "joint.profile");
    double p = As<double>(Require(row, "prob"), "joint.prob");
    auction.joint[profile] += p;
  }
  return auction;
}

json GridToJson(const BidGrid& grid) {
  if (grid.is_uniform()) return {{"max", grid.max()}, {"steps", grid.uniform_steps()}};
  return {{"bids", std::vector<double>(grid.bids().begin(), grid.bids().end())}};
}

}  // namespace

LoadedInstance LoadInstanceJson(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("instance document must be a JSON object");

  LoadedInstance out;
  if (doc.contains("name")) out.name = As<std::string>(doc.at("name"), "name");
  BidGrid grid = ParseGrid(Require(doc, "grid"));
  PaymentRule rule = ParseRule(doc);

  if (doc.contains("players")) {
    ConvertedAuction converted = ConvertPlayerToAgent(ParsePlayers(doc));
    out.instance = converted.WithGrid(std::move(grid), rule);
    out.partition = std::move(converted.partition);
  } else {
    auto values = As<std::vector<double>>(Require(doc, "values"), "values");
    const json& scenarios = Require(doc, "scenarios");
    if (!scenarios.is_array()) throw ParseError("field 'scenarios' must be an array");
    std::vector<Scenario> parsed;
    for (const json& s : scenarios) {
      Scenario scenario;
      for (auto m : As<std::vector<std::size_t>>(Require(s, "members"), "members")) {
        scenario.members.push_back(AgentId{m});
      }
      scenario.probability = As<double>(Require(s, "prob"), "prob");
      parsed.push_back(std::move(scenario));
    }
    out.instance = MakeInstance(std::move(values), std::move(parsed), std::move(grid), rule);
  }
  if (doc.contains("solver")) out.config = ParseConfig(doc.at("solver"));
  return out;
}

LoadedInstance LoadInstanceFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  LoadedInstance loaded = LoadInstanceJson(buffer.str());
  if (loaded.name.empty()) loaded.name = path.stem().string();
  return loaded;
}

std::string InstanceToJson(const AuctionInstance& instance, const std::string& name) {
  json doc;
  if (!name.empty()) doc["name"] = name;
  doc["values"] = instance.values;
  json scenarios = json::array();
  for (const Scenario& s : instance.scenarios) {
    std::vector<std::size_t> members;
    for (AgentId a : s.members) members.push_back(a.index);
    scenarios.push_back({{"members", members}, {"prob", s.probability}});
  }
  doc["scenarios"] = scenarios;
  doc["grid"] = GridToJson(instance.grid);
  doc["rule"] = {{"alpha", instance.rule.alpha}};
  return doc.dump(2);
}

std::string PlayerAuctionToJson(const PlayerAuction& auction, const BidGrid& grid,
                                const PaymentRule& rule, const std::string& name) {
  json doc;
  if (!name.empty()) doc["name"] = name;
  json players = json::array();
  for (const auto& p : auction.players) players.push_back({{"values", p.values}});
  doc["players"] = players;
  json joint = json::array();
  for (const auto& [profile, p] : auction.joint) {
    joint.push_back({{"profile", profile}, {"prob", p}});
  }
  doc["joint"] = joint;
  doc["grid"] = GridToJson(grid);
  doc["rule"] = {{"alpha", rule.alpha}};
  return doc.dump(2);
}

std::string ConfigToJson(const SolverConfig& config) {
  json doc;
  doc["schedule"] = {{"kind", ToString(config.schedule.kind)}, {"c", config.schedule.c}};
  doc["max_iterations"] = config.max_iterations;
  doc["epsilon_target"] =
      config.epsilon_target ? json(*config.epsilon_target) : json(nullptr);
  doc["check_interval"] = config.check_interval;
  doc["init"] = ToString(config.init);
  doc["independent_player_cache"] = config.independent_player_cache;
  doc["seed"] = config.seed;
  doc["tie_break"] = "lowest-index";
  return doc.dump();
}

std::string CertificateToJson(const EquilibriumCertificate& certificate, const BidGrid& grid,
                              std::optional<std::size_t> iterations,
                              const std::optional<std::string>& config_json) {
  json doc;
  doc["epsilon"] = certificate.epsilon;
  doc["gaps"] = certificate.gaps;
  doc["payoffs"] = certificate.payoffs;
  std::vector<double> bids;
  for (std::size_t j : certificate.best_response) bids.push_back(grid[j]);
  doc["best_response_bids"] = bids;
  doc["best_response_indices"] = certificate.best_response;
  doc["clamped_gaps"] = certificate.clamped_gaps;
  doc["iterations"] = iterations ? json(*iterations) : json(nullptr);
  doc["config_echo"] = config_json ? json::parse(*config_json) : json(nullptr);
  return doc.dump(2);
}

}  // namespace fba
