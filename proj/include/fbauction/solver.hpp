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

// Fictitious bidding: at every step each agent best-responds (on the bid
// grid) to the current averaged profile, then every strategy moves toward a
// point mass on its best response:
//
//   gamma_a <- (1 - eta_k) * gamma_a + eta_k * delta(best response of a)
//
// All best responses of a step are taken against the same snapshot.

#ifndef FBAUCTION_SOLVER_HPP_
#define FBAUCTION_SOLVER_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fbauction/model.hpp"
#include "fbauction/payoff.hpp"
#include "fbauction/verify.hpp"

namespace fba {

enum class ScheduleKind { kHarmonic, kConstant };

// harmonic: eta_k = c / (k + 1); constant: eta_k = c. Both need c in (0, 1].
struct LearningSchedule {
  ScheduleKind kind = ScheduleKind::kHarmonic;
  double c = 0.01;

  static LearningSchedule Harmonic(double c) { return {ScheduleKind::kHarmonic, c}; }
  static LearningSchedule Constant(double c) { return {ScheduleKind::kConstant, c}; }

  double Rate(std::size_t k) const {
    return kind == ScheduleKind::kHarmonic ? c / static_cast<double>(k + 1) : c;
  }
  friend bool operator==(const LearningSchedule&, const LearningSchedule&) = default;
};

enum class InitKind { kUniform, kPointMassAtZero, kRandom, kExplicit };

struct SolverConfig {
  LearningSchedule schedule;
  std::size_t max_iterations = 100'000;
  std::optional<double> epsilon_target;
  std::size_t check_interval = 1000;
  InitKind init = InitKind::kUniform;
  std::optional<StrategyProfile> initial_profile;  // for InitKind::kExplicit
  bool independent_player_cache = false;
  std::uint64_t seed = 0;  // used by InitKind::kRandom
};

// Throws ValidationError on an inconsistent configuration.
void ValidateConfig(const SolverConfig& config);

std::string ToString(ScheduleKind kind);
std::string ToString(InitKind kind);
ScheduleKind ParseScheduleKind(const std::string& name);
InitKind ParseInitKind(const std::string& name);

// Harmonic schedule with c = 1 started from a point mass at bid 0: the
// profile after k steps is the empirical frequency of the k best responses.
SolverConfig ClassicalFictitiousPlay(SolverConfig base = {});

struct TrajectoryPoint {
  std::size_t iteration = 0;
  double epsilon = 0.0;
};

struct SolverResult {
  StrategyProfile profile;
  std::size_t iterations_run = 0;
  EquilibriumCertificate certificate;
  std::vector<TrajectoryPoint> trajectory;
  std::size_t renormalizations = 0;
  double max_drift = 0.0;  // largest |sum of weights - 1| seen after an update
  bool target_reached = false;
};

// Called after the best responses of step k are computed, before the update.
using BestResponseObserver =
    std::function<void(std::size_t k, std::span<const std::size_t> best_responses)>;

// Reusable stepping state for one instance.
class FictitiousBidding {
 public:
  explicit FictitiousBidding(const AuctionInstance& instance,
                             bool share_opponent_sets = false);

  const PayoffEngine& engine() const { return engine_; }

  // Payoff curves of every agent against the profile (row-major).
  std::span<const double> Evaluate(const StrategyProfile& profile);
  // Lowest-index best responses from the last Evaluate.
  std::span<const std::size_t> BestResponses();
  // Applies the averaging update with rate eta toward the last best responses.
  // Returns the largest simplex drift before any renormalization.
  double Update(StrategyProfile& profile, double eta, std::size_t* renormalizations);

 private:
  PayoffEngine engine_;
  bool share_;
  StrictCdfTable cdf_;
  std::vector<double> curves_;
  std::vector<std::size_t> best_;
};

StrategyProfile InitialProfile(const AuctionInstance& instance, const SolverConfig& config);

std::pair<std::size_t, double> BestResponse(AgentId a, const StrategyProfile& profile,
                                            const AuctionInstance& instance);

// One simultaneous step from the given profile with rate schedule.Rate(k).
StrategyProfile FbStep(const StrategyProfile& profile, std::size_t k,
                       const SolverConfig& config, const AuctionInstance& instance);

SolverResult Run(const AuctionInstance& instance, const SolverConfig& config,
                 const BestResponseObserver& observer = {});

}  // namespace fba

#endif  // FBAUCTION_SOLVER_HPP_
