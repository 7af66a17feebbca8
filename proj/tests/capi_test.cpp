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

// Exercises the shared library through its C interface only.

#include "fbauction/fbauction.h"

#include <cmath>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include <gtest/gtest.h>

namespace {

struct InstanceDeleter {
  void operator()(fba_instance* p) const { fba_instance_destroy(p); }
};
struct ConfigDeleter {
  void operator()(fba_config* p) const { fba_config_destroy(p); }
};
struct ResultDeleter {
  void operator()(fba_result* p) const { fba_result_destroy(p); }
};
struct CertificateDeleter {
  void operator()(fba_certificate* p) const { fba_certificate_destroy(p); }
};
using Instance = std::unique_ptr<fba_instance, InstanceDeleter>;
using Config = std::unique_ptr<fba_config, ConfigDeleter>;
using Result = std::unique_ptr<fba_result, ResultDeleter>;
using Certificate = std::unique_ptr<fba_certificate, CertificateDeleter>;

Instance LoadExample(int n) {
  fba_instance* raw = nullptr;
  EXPECT_EQ(fba_instance_example(n, &raw), FBA_OK);
  return Instance(raw);
}

std::string TakeString(char* s) {
  std::string out = s ? s : "";
  fba_string_free(s);
  return out;
}

TEST(CApiTest, VersionIsSet) { EXPECT_STREQ(fba_version(), "1.0.0"); }

TEST(CApiTest, ExampleAccessors) {
  Instance inst = LoadExample(2);
  EXPECT_STREQ(fba_instance_name(inst.get()), "example-2");
  ASSERT_EQ(fba_instance_num_agents(inst.get()), 3u);
  ASSERT_EQ(fba_instance_grid_size(inst.get()), 601u);
  EXPECT_EQ(fba_instance_alpha(inst.get()), 1.0);
  std::vector<double> values(3), grid(601);
  ASSERT_EQ(fba_instance_values(inst.get(), values.data(), values.size()), FBA_OK);
  EXPECT_DOUBLE_EQ(values[1], 2.0 / 3.0);
  ASSERT_EQ(fba_instance_grid(inst.get(), grid.data(), grid.size()), FBA_OK);
  EXPECT_EQ(grid.front(), 0.0);
  EXPECT_EQ(grid.back(), 1.0);
  EXPECT_EQ(fba_instance_values(inst.get(), values.data(), 2), FBA_ERR_DIMENSION);
}

TEST(CApiTest, ErrorCodes) {
  fba_instance* raw = nullptr;
  EXPECT_EQ(fba_instance_example(9, &raw), FBA_ERR_VALIDATION);
  EXPECT_EQ(raw, nullptr);
  EXPECT_NE(std::strlen(fba_last_error()), 0u);
  EXPECT_EQ(fba_instance_load_json("{not json", &raw), FBA_ERR_PARSE);
  EXPECT_EQ(fba_instance_load_json(
                R"({"values": [1, 1], "scenarios": [{"members": [0], "prob": 1}],
                    "grid": {"max": 1, "steps": 2}})",
                &raw),
            FBA_ERR_VALIDATION);
  EXPECT_NE(std::string(fba_last_error()).find("agent 1 never participates"), std::string::npos);
  EXPECT_EQ(fba_instance_load_file("/nonexistent/instance.json", &raw), FBA_ERR_PARSE);
  EXPECT_EQ(fba_instance_example(1, nullptr), FBA_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(fba_solve(nullptr, nullptr, nullptr), FBA_ERR_INVALID_ARGUMENT);

  Config config(fba_config_create());
  EXPECT_EQ(fba_config_set_schedule(config.get(), FBA_SCHEDULE_HARMONIC, 0.0),
            FBA_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(fba_config_set_check_interval(config.get(), 0), FBA_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(fba_config_set_init(config.get(), static_cast<fba_init_kind>(17)),
            FBA_ERR_INVALID_ARGUMENT);
}

TEST(CApiTest, LoadJsonAndDerive) {
  fba_instance* raw = nullptr;
  ASSERT_EQ(fba_instance_load_json(
                R"({"values": [1, 0.5], "scenarios": [{"members": [0, 1], "prob": 1}],
                    "grid": {"max": 1, "steps": 4}})",
                &raw),
            FBA_OK);
  Instance inst(raw);
  EXPECT_EQ(fba_instance_grid_size(inst.get()), 5u);
  ASSERT_EQ(fba_instance_with_grid(inst.get(), 0.5, 10, &raw), FBA_OK);
  Instance finer(raw);
  EXPECT_EQ(fba_instance_grid_size(finer.get()), 11u);
  ASSERT_EQ(fba_instance_with_alpha(inst.get(), 0.25, &raw), FBA_OK);
  Instance mixed(raw);
  EXPECT_EQ(fba_instance_alpha(mixed.get()), 0.25);
  EXPECT_EQ(fba_instance_with_alpha(inst.get(), 2.0, &raw), FBA_ERR_VALIDATION);

  char* json = nullptr;
  ASSERT_EQ(fba_instance_to_json(mixed.get(), &json), FBA_OK);
  std::string text = TakeString(json);
  ASSERT_EQ(fba_instance_load_json(text.c_str(), &raw), FBA_OK);
  Instance reloaded(raw);
  EXPECT_EQ(fba_instance_alpha(reloaded.get()), 0.25);
}

TEST(CApiTest, RandomInstanceNotes) {
  fba_instance* raw = nullptr;
  ASSERT_EQ(fba_instance_random(5, 10, 2, &raw), FBA_OK);
  Instance inst(raw);
  EXPECT_GE(fba_instance_num_notes(inst.get()), 6u);
  EXPECT_NE(std::string(fba_instance_note(inst.get(), 0)).find("removed"), std::string::npos);
  EXPECT_EQ(fba_instance_note(inst.get(), 1000), nullptr);
}

TEST(CApiTest, SolveAndInspect) {
  Instance inst = LoadExample(1);
  fba_config* raw_config = nullptr;
  ASSERT_EQ(fba_config_recommended(inst.get(), &raw_config), FBA_OK);
  Config config(raw_config);
  ASSERT_EQ(fba_config_set_max_iterations(config.get(), 3000), FBA_OK);
  ASSERT_EQ(fba_config_set_check_interval(config.get(), 1000), FBA_OK);
  EXPECT_EQ(fba_config_has_epsilon_target(config.get()), 0);

  fba_result* raw = nullptr;
  ASSERT_EQ(fba_solve(inst.get(), config.get(), &raw), FBA_OK);
  Result result(raw);
  EXPECT_EQ(fba_result_iterations(result.get()), 3000u);
  EXPECT_EQ(fba_result_target_reached(result.get()), 0);
  const double eps = fba_result_epsilon(result.get());
  EXPECT_GE(eps, 0.0);
  EXPECT_LT(eps, 0.05);

  const size_t m = fba_instance_grid_size(inst.get());
  std::vector<double> weights(4 * m);
  for (size_t a = 0; a < 4; ++a) {
    ASSERT_EQ(fba_result_strategy(result.get(), a, weights.data() + a * m, m), FBA_OK);
  }
  EXPECT_EQ(fba_result_strategy(result.get(), 4, weights.data(), m), FBA_ERR_INVALID_ARGUMENT);

  // Certifying the returned profile reproduces the result's epsilon.
  fba_certificate* raw_cert = nullptr;
  ASSERT_EQ(fba_certify(inst.get(), weights.data(), weights.size(), &raw_cert), FBA_OK);
  Certificate cert(raw_cert);
  EXPECT_EQ(fba_certificate_epsilon(cert.get()), eps);
  EXPECT_EQ(fba_certificate_epsilon(fba_result_certificate(result.get())), eps);
  ASSERT_EQ(fba_certificate_num_agents(cert.get()), 4u);

  std::vector<double> curve(m), payoffs(4), gaps(4);
  std::vector<size_t> br(4);
  ASSERT_EQ(fba_result_payoff_curve(result.get(), 2, curve.data(), m), FBA_OK);
  ASSERT_EQ(fba_certificate_best_responses(cert.get(), br.data(), 4), FBA_OK);
  ASSERT_EQ(fba_certificate_gaps(cert.get(), gaps.data(), 4), FBA_OK);
  ASSERT_EQ(fba_certificate_payoffs(cert.get(), payoffs.data(), 4), FBA_OK);
  EXPECT_NEAR(curve[br[2]] - payoffs[2], gaps[2], 1e-15);

  const size_t points = fba_result_trajectory_size(result.get());
  ASSERT_EQ(points, 3u);
  std::vector<uint64_t> its(points);
  std::vector<double> eps_path(points);
  ASSERT_EQ(fba_result_trajectory(result.get(), its.data(), eps_path.data(), points), FBA_OK);
  EXPECT_EQ(its.back(), 3000u);
  EXPECT_EQ(eps_path.back(), eps);

  char* json = nullptr;
  ASSERT_EQ(fba_certificate_to_json(cert.get(), 3000, config.get(), &json), FBA_OK);
  std::string text = TakeString(json);
  EXPECT_NE(text.find("\"config_echo\""), std::string::npos);
  EXPECT_NE(text.find("\"harmonic\""), std::string::npos);
}

TEST(CApiTest, CertifyRejectsBadProfiles) {
  Instance inst = LoadExample(2);
  const size_t m = fba_instance_grid_size(inst.get());
  std::vector<double> weights(3 * m, 1.0 / static_cast<double>(m));
  fba_certificate* raw = nullptr;
  EXPECT_EQ(fba_certify(inst.get(), weights.data(), weights.size() - 1, &raw),
            FBA_ERR_DIMENSION);
  weights[0] = 0.5;
  EXPECT_EQ(fba_certify(inst.get(), weights.data(), weights.size(), &raw), FBA_ERR_VALIDATION);
  EXPECT_EQ(raw, nullptr);
}

TEST(CApiTest, EpsilonTargetStopsEarly) {
  Instance inst = LoadExample(1);
  Config config(fba_config_create());
  ASSERT_EQ(fba_config_set_schedule(config.get(), FBA_SCHEDULE_HARMONIC, 1.0), FBA_OK);
  ASSERT_EQ(fba_config_set_max_iterations(config.get(), 100000), FBA_OK);
  ASSERT_EQ(fba_config_set_epsilon_target(config.get(), 0.01), FBA_OK);
  EXPECT_EQ(fba_config_has_epsilon_target(config.get()), 1);
  fba_result* raw = nullptr;
  ASSERT_EQ(fba_solve(inst.get(), config.get(), &raw), FBA_OK);
  Result result(raw);
  EXPECT_EQ(fba_result_target_reached(result.get()), 1);
  EXPECT_LT(fba_result_iterations(result.get()), 100000u);
  EXPECT_LE(fba_result_epsilon(result.get()), 0.01);

  char* json = nullptr;
  ASSERT_EQ(fba_config_to_json(config.get(), &json), FBA_OK);
  EXPECT_NE(TakeString(json).find("0.01"), std::string::npos);
  ASSERT_EQ(fba_config_clear_epsilon_target(config.get()), FBA_OK);
  EXPECT_EQ(fba_config_has_epsilon_target(config.get()), 0);
}

}  // namespace
