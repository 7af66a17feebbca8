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

#include <gtest/gtest.h>

#include "fbauction/instances.hpp"
#include "test_util.hpp"

namespace fba {
namespace {

SolverConfig Short(std::size_t iterations, double c = 1.0) {
  SolverConfig config;
  config.schedule = LearningSchedule::Harmonic(c);
  config.max_iterations = iterations;
  config.check_interval = 100;
  return config;
}

TEST(ScheduleTest, Rates) {
  EXPECT_DOUBLE_EQ(LearningSchedule::Harmonic(0.5).Rate(0), 0.5);
  EXPECT_DOUBLE_EQ(LearningSchedule::Harmonic(0.5).Rate(3), 0.125);
  EXPECT_DOUBLE_EQ(LearningSchedule::Constant(0.2).Rate(1000), 0.2);
}

TEST(ConfigTest, RejectsInvalidSettings) {
  SolverConfig config;
  config.schedule.c = 0.0;
  EXPECT_THROW(ValidateConfig(config), ValidationError);
  config.schedule.c = 1.5;
  EXPECT_THROW(ValidateConfig(config), ValidationError);
  config.schedule.c = 1.0;
  EXPECT_NO_THROW(ValidateConfig(config));
  config.check_interval = 0;
  EXPECT_THROW(ValidateConfig(config), ValidationError);
  config.check_interval = 10;
  config.epsilon_target = -1.0;
  EXPECT_THROW(ValidateConfig(config), ValidationError);
  config.epsilon_target.reset();
  config.init = InitKind::kExplicit;
  EXPECT_THROW(ValidateConfig(config), ValidationError);
}

TEST(ConfigTest, NamesRoundTrip) {
  for (auto kind : {ScheduleKind::kHarmonic, ScheduleKind::kConstant}) {
    EXPECT_EQ(ParseScheduleKind(ToString(kind)), kind);
  }
  for (auto kind : {InitKind::kUniform, InitKind::kPointMassAtZero, InitKind::kRandom,
                    InitKind::kExplicit}) {
    EXPECT_EQ(ParseInitKind(ToString(kind)), kind);
  }
  EXPECT_THROW(ParseScheduleKind("cosine"), ValidationError);
  EXPECT_THROW(ParseInitKind("ones"), ValidationError);
}

TEST(InitTest, RandomInitIsSeededAndOnSimplex) {
  AuctionInstance inst = Example2().instance;
  SolverConfig config;
  config.init = InitKind::kRandom;
  config.seed = 42;
  StrategyProfile a = InitialProfile(inst, config);
  StrategyProfile b = InitialProfile(inst, config);
  EXPECT_EQ(a, b);
  config.seed = 43;
  EXPECT_NE(InitialProfile(inst, config), a);
}

TEST(InitTest, ExplicitProfileIsChecked) {
  AuctionInstance inst = Example2().instance;
  SolverConfig config;
  config.init = InitKind::kExplicit;
  config.initial_profile = UniformProfile(2, inst.grid.size());
  EXPECT_THROW(InitialProfile(inst, config), Error);
  config.initial_profile = PointMassProfile(3, inst.grid.size(), 4);
  EXPECT_EQ(InitialProfile(inst, config), *config.initial_profile);
}

// With eta = c / (k + 1) the update is a convex combination, so the weights
// stay non-negative and sum to one up to round-off.
TEST(FbStepTest, PreservesSimplexOnRandomInstances) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    AuctionInstance inst = testing::RandomSmallInstance(rng, trial % 2 ? 1.0 : 0.5);
    StrategyProfile p = testing::RandomProfile(rng, inst.num_agents(), inst.grid.size());
    SolverConfig config = Short(1, 0.3);
    if (trial % 3 == 0) config.schedule = LearningSchedule::Constant(0.7);
    for (std::size_t k = 0; k < 20; ++k) {
      p = FbStep(p, k, config, inst);
      for (const auto& s : p) {
        double total = 0.0;
        for (double w : s.weights()) {
          ASSERT_GE(w, 0.0);
          total += w;
        }
        ASSERT_NEAR(total, 1.0, 1e-12);
      }
    }
  }
}

TEST(FbStepTest, MovesTowardBestResponse) {
  std::mt19937_64 rng(37);
  AuctionInstance inst = testing::RandomSmallInstance(rng, 1.0);
  StrategyProfile p = testing::RandomProfile(rng, inst.num_agents(), inst.grid.size());
  SolverConfig config = Short(1, 0.5);
  StrategyProfile next = FbStep(p, 1, config, inst);  // eta = 0.25
  for (std::size_t a = 0; a < inst.num_agents(); ++a) {
    const std::size_t br = BestResponse(AgentId{a}, p, inst).first;
    for (std::size_t j = 0; j < inst.grid.size(); ++j) {
      const double expected = 0.75 * p[a][j] + (j == br ? 0.25 : 0.0);
      EXPECT_NEAR(next[a][j], expected, 1e-15);
    }
  }
}

TEST(FbStepTest, PureEquilibriumIsAFixedPoint) {
  const std::size_t steps = 10;
  AuctionInstance inst = MakeInstance({1.0, 0.0}, {Scenario{{AgentId{0}, AgentId{1}}, 1.0}},
                                      BidGrid::Uniform(1.0, steps));
  StrategyProfile p = {MixedStrategy::PointMass(steps + 1, 1),
                       MixedStrategy::PointMass(steps + 1, 0)};
  for (std::size_t k = 0; k < 5; ++k) EXPECT_EQ(FbStep(p, k, Short(1), inst), p);
}

TEST(BestResponseTest, LowestIndexOnTies) {
  AuctionInstance inst = MakeInstance({1.0, 0.0}, {Scenario{{AgentId{0}, AgentId{1}}, 1.0}},
                                      BidGrid::Uniform(1.0, 4));
  // Against a bid of 0.5 only 0.75 wins something.
  StrategyProfile p = PointMassProfile(2, 5, 2);
  auto [j, u] = BestResponse(AgentId{0}, p, inst);
  EXPECT_EQ(j, 3u);
  EXPECT_DOUBLE_EQ(u, 0.25);
  // Against a bid of 1 nothing wins: all payoffs tie at 0.
  p = PointMassProfile(2, 5, 4);
  EXPECT_EQ(BestResponse(AgentId{0}, p, inst).first, 0u);
}

TEST(RunTest, DeterministicAcrossRuns) {
  NamedInstance ex = Example3();
  SolverConfig config = Short(2000);
  SolverResult a = fba::Run(ex.instance, config);
  SolverResult b = fba::Run(ex.instance, config);
  EXPECT_EQ(a.profile, b.profile);
  EXPECT_EQ(a.certificate.epsilon, b.certificate.epsilon);
  EXPECT_EQ(a.trajectory.size(), b.trajectory.size());
}

TEST(RunTest, CacheIsBitIdenticalOnPlayerExample) {
  NamedInstance ex = Example4();
  SolverConfig config = Short(3000);
  config.independent_player_cache = false;
  SolverResult off = fba::Run(ex.instance, config);
  config.independent_player_cache = true;
  SolverResult on = fba::Run(ex.instance, config);
  EXPECT_EQ(off.profile, on.profile);
  EXPECT_EQ(off.certificate.epsilon, on.certificate.epsilon);
}

TEST(RunTest, TrajectoryAndEarlyStop) {
  NamedInstance ex = Example1();
  SolverConfig config = Short(5000);
  config.check_interval = 500;
  SolverResult full = fba::Run(ex.instance, config);
  ASSERT_EQ(full.trajectory.size(), 10u);
  EXPECT_EQ(full.trajectory.front().iteration, 500u);
  EXPECT_EQ(full.trajectory.back().iteration, 5000u);
  EXPECT_EQ(full.trajectory.back().epsilon, full.certificate.epsilon);
  EXPECT_EQ(full.iterations_run, 5000u);
  EXPECT_FALSE(full.target_reached);

  // A target met at a checkpoint stops the run there.
  config.epsilon_target = full.trajectory[3].epsilon;
  SolverResult stopped = fba::Run(ex.instance, config);
  EXPECT_TRUE(stopped.target_reached);
  EXPECT_LE(stopped.iterations_run, 2000u);
  EXPECT_EQ(stopped.iterations_run % 500, 0u);
  EXPECT_LE(stopped.certificate.epsilon, *config.epsilon_target);
}

TEST(RunTest, ZeroIterationsCertifiesInitialProfile) {
  NamedInstance ex = Example2();
  SolverResult r = fba::Run(ex.instance, Short(0));
  EXPECT_EQ(r.iterations_run, 0u);
  EXPECT_EQ(r.profile, UniformProfile(3, ex.instance.grid.size()));
  EXPECT_EQ(r.certificate.epsilon, Certify(r.profile, ex.instance).epsilon);
}

TEST(RunTest, RejectsInvalidInstance) {
  AuctionInstance bad = Example1().instance;
  bad.scenarios[0].probability = 0.9;
  EXPECT_THROW(fba::Run(bad, Short(10)), ValidationError);
}

// Harmonic c = 1 from a point mass at 0 is classical fictitious play: after
// k steps the profile is the empirical frequency of the k best responses.
TEST(RunTest, ClassicalFictitiousPlayReplay) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 5; ++trial) {
    AuctionInstance inst = testing::RandomSmallInstance(rng, 1.0);
    SolverConfig config = ClassicalFictitiousPlay(Short(400));
    const std::size_t n = inst.num_agents(), m = inst.grid.size();
    std::vector<std::vector<double>> counts(n, std::vector<double>(m, 0.0));
    SolverResult r = fba::Run(inst, config, [&](std::size_t, std::span<const std::size_t> br) {
      for (std::size_t a = 0; a < n; ++a) counts[a][br[a]] += 1.0;
    });
    const double k = static_cast<double>(r.iterations_run);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t j = 0; j < m; ++j) {
        ASSERT_NEAR(r.profile[a][j], counts[a][j] / k, 1e-12 * k);
      }
    }
  }
}

TEST(RunTest, ConvergesOnExampleOne) {
  NamedInstance ex = Example1();
  SolverConfig config = ex.config;
  config.max_iterations = 20000;
  SolverResult r = fba::Run(ex.instance, config);
  EXPECT_LT(r.certificate.epsilon, 1e-3);
  EXPECT_LT(r.max_drift, 1e-9);
}

}  // namespace
}  // namespace fba
