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

#include "fbauction/solver.hpp"

#include <cmath>
#include <random>

namespace fba {
namespace {

constexpr double kRenormalizeDrift = 1e-9;

}  // namespace

void ValidateConfig(const SolverConfig& config) {
  std::vector<std::string> v;
  if (!(config.schedule.c > 0.0 && config.schedule.c <= 1.0)) {
    v.push_back("learning-rate coefficient must lie in (0, 1], got " +
                std::to_string(config.schedule.c));
  }
  if (config.check_interval == 0) v.push_back("check interval must be positive");
  if (config.epsilon_target && !(*config.epsilon_target >= 0.0)) {
    v.push_back("epsilon target must be non-negative");
  }
  if (config.init == InitKind::kExplicit && !config.initial_profile) {
    v.push_back("explicit initialization needs an initial profile");
  }
  if (!v.empty()) throw ValidationError(std::move(v));
}

std::string ToString(ScheduleKind kind) {
  return kind == ScheduleKind::kHarmonic ? "harmonic" : "constant";
}

std::string ToString(InitKind kind) {
  switch (kind) {
    case InitKind::kUniform: return "uniform";
    case InitKind::kPointMassAtZero: return "zero";
    case InitKind::kRandom: return "random";
    case InitKind::kExplicit: return "explicit";
  }
  return "unknown";
}

ScheduleKind ParseScheduleKind(const std::string& name) {
  if (name == "harmonic") return ScheduleKind::kHarmonic;
  if (name == "constant") return ScheduleKind::kConstant;
  throw ValidationError({"unknown schedule kind '" + name + "'"});
}

InitKind ParseInitKind(const std::string& name) {
  if (name == "uniform") return InitKind::kUniform;
  if (name == "zero") return InitKind::kPointMassAtZero;
  if (name == "random") return InitKind::kRandom;
  if (name == "explicit") return InitKind::kExplicit;
  throw ValidationError({"unknown initialization '" + name + "'"});
}

SolverConfig ClassicalFictitiousPlay(SolverConfig base) {
  base.schedule = LearningSchedule::Harmonic(1.0);
  base.init = InitKind::kPointMassAtZero;
  base.initial_profile.reset();
  return base;
}

FictitiousBidding::FictitiousBidding(const AuctionInstance& instance,
                                     bool share_opponent_sets)
    : engine_(instance),
      share_(share_opponent_sets),
      cdf_(instance.num_agents(), instance.grid.size()),
      best_(instance.num_agents(), 0) {}

std::span<const double> FictitiousBidding::Evaluate(const StrategyProfile& profile) {
  cdf_.Assign(profile);
  engine_.AllCurves(cdf_, share_, curves_);
  const std::size_t m = engine_.grid_size();
  for (std::size_t a = 0; a < best_.size(); ++a) {
    best_[a] = ArgmaxLowest(std::span<const double>(curves_).subspan(a * m, m));
  }
  return curves_;
}

std::span<const std::size_t> FictitiousBidding::BestResponses() { return best_; }

double FictitiousBidding::Update(StrategyProfile& profile, double eta,
                                 std::size_t* renormalizations) {
  const double keep = 1.0 - eta;
  double worst = 0.0;
  for (std::size_t a = 0; a < profile.size(); ++a) {
    auto w = profile[a].mutable_weights();
    double total = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
      w[j] *= keep;
      if (j == best_[a]) w[j] += eta;
      total += w[j];
    }
    double drift = std::abs(total - 1.0);
    worst = std::max(worst, drift);
    if (drift > kRenormalizeDrift) {
      for (double& x : w) x /= total;
      if (renormalizations) ++*renormalizations;
    }
  }
  return worst;
}

StrategyProfile InitialProfile(const AuctionInstance& instance, const SolverConfig& config) {
  const std::size_t n = instance.num_agents();
  const std::size_t m = instance.grid.size();
  switch (config.init) {
    case InitKind::kUniform:
      return UniformProfile(n, m);
    case InitKind::kPointMassAtZero:
      return PointMassProfile(n, m, 0);
    case InitKind::kRandom: {
      std::mt19937_64 rng(config.seed);
      std::exponential_distribution<double> exp1(1.0);
      StrategyProfile profile;
      for (std::size_t a = 0; a < n; ++a) {
        std::vector<double> w(m);
        double total = 0.0;
        for (double& x : w) total += (x = exp1(rng));
        for (double& x : w) x /= total;
        profile.emplace_back(std::move(w));
      }
      return profile;
    }
    case InitKind::kExplicit:
      CheckProfile(*config.initial_profile, n, m);
      return *config.initial_profile;
  }
  throw Error("unknown initialization");
}

std::pair<std::size_t, double> BestResponse(AgentId a, const StrategyProfile& profile,
                                            const AuctionInstance& instance) {
  std::vector<double> curve = PayoffCurve(a, profile, instance);
  std::size_t j = ArgmaxLowest(curve);
  return {j, curve[j]};
}

StrategyProfile FbStep(const StrategyProfile& profile, std::size_t k,
                       const SolverConfig& config, const AuctionInstance& instance) {
  ValidateConfig(config);
  CheckProfile(profile, instance.num_agents(), instance.grid.size());
  FictitiousBidding fb(instance, config.independent_player_cache);
  StrategyProfile next = profile;
  fb.Evaluate(next);
  fb.Update(next, config.schedule.Rate(k), nullptr);
  return next;
}

SolverResult Run(const AuctionInstance& instance, const SolverConfig& config,
                 const BestResponseObserver& observer) {
  ValidationReport report = ValidateInstance(instance);
  if (!report.ok()) throw ValidationError(std::move(report.violations));
  ValidateConfig(config);

  SolverResult result;
  result.profile = InitialProfile(instance, config);
  FictitiousBidding fb(instance, config.independent_player_cache);
  const std::size_t m = instance.grid.size();

  std::size_t k = 0;
  for (; k < config.max_iterations; ++k) {
    std::span<const double> curves = fb.Evaluate(result.profile);
    if (k > 0 && k % config.check_interval == 0) {
      double eps = CertifyFromCurves(result.profile, curves, m).epsilon;
      result.trajectory.push_back({k, eps});
      if (config.epsilon_target && eps <= *config.epsilon_target) break;
    }
    if (observer) observer(k, fb.BestResponses());
    double drift =
        fb.Update(result.profile, config.schedule.Rate(k), &result.renormalizations);
    result.max_drift = std::max(result.max_drift, drift);
  }
  result.iterations_run = k;

  result.certificate =
      CertifyFromCurves(result.profile, fb.Evaluate(result.profile), m);
  if (result.trajectory.empty() || result.trajectory.back().iteration != k) {
    result.trajectory.push_back({k, result.certificate.epsilon});
  }
  result.target_reached =
      config.epsilon_target && result.certificate.epsilon <= *config.epsilon_target;
  return result;
}

}  // namespace fba
