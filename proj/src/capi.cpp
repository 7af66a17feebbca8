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

#include <cstring>
#include <memory>
#include <string>

#include "fbauction/fbauction.h"
#include "fbauction/instances.hpp"
#include "fbauction/payoff.hpp"
#include "fbauction/solver.hpp"
#include "fbauction/verify.hpp"

struct fba_instance {
  std::string name;
  fba::AuctionInstance instance;
  fba::SolverConfig recommended;
  std::vector<std::string> notes;
};

struct fba_config {
  fba::SolverConfig config;
};

struct fba_certificate {
  fba::EquilibriumCertificate certificate;
  fba::BidGrid grid;
};

struct fba_result {
  std::shared_ptr<const fba_instance> instance;
  fba::SolverResult result;
  fba_certificate certificate;
  std::vector<double> curves;  // agent-major payoff curves at the final profile
};

namespace {

thread_local std::string g_last_error;

fba_status Fail(fba_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs body, translating exceptions into status codes.
template <typename F>
fba_status Guard(F&& body) {
  try {
    return body();
  } catch (const fba::ParseError& e) {
    return Fail(FBA_ERR_PARSE, e.what());
  } catch (const fba::ValidationError& e) {
    return Fail(FBA_ERR_VALIDATION, e.what());
  } catch (const fba::Error& e) {
    return Fail(FBA_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return Fail(FBA_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(FBA_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(FBA_ERR_INTERNAL, "unknown error");
  }
}

fba_status Copy(const std::vector<double>& src, double* out, size_t len) {
  if (!out) return Fail(FBA_ERR_INVALID_ARGUMENT, "null output buffer");
  if (len != src.size()) {
    return Fail(FBA_ERR_DIMENSION, "buffer holds " + std::to_string(len) + " entries, need " +
                                       std::to_string(src.size()));
  }
  std::copy(src.begin(), src.end(), out);
  return FBA_OK;
}

char* Duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

fba_status Emit(const std::string& s, char** out) {
  if (!out) return Fail(FBA_ERR_INVALID_ARGUMENT, "null output pointer");
  *out = Duplicate(s);
  return *out ? FBA_OK : Fail(FBA_ERR_INTERNAL, "out of memory");
}

fba_instance* Wrap(fba::NamedInstance named) {
  return new fba_instance{std::move(named.name), std::move(named.instance),
                          std::move(named.config), std::move(named.notes)};
}

#define FBA_REQUIRE(ptr)                                                   \
  do {                                                                     \
    if (!(ptr)) return Fail(FBA_ERR_INVALID_ARGUMENT, "null argument " #ptr); \
  } while (0)

}  // namespace

extern "C" {

const char* fba_version(void) { return "1.0.0"; }

const char* fba_last_error(void) { return g_last_error.c_str(); }

void fba_string_free(char* s) { std::free(s); }

fba_status fba_instance_example(int number, fba_instance** out) {
  FBA_REQUIRE(out);
  return Guard([&] {
    *out = Wrap(fba::Example(number));
    return FBA_OK;
  });
}

fba_status fba_instance_random(uint64_t seed, size_t n_agents, size_t n_scenarios,
                               fba_instance** out) {
  FBA_REQUIRE(out);
  return Guard([&] {
    *out = Wrap(fba::RandomInstance(seed, n_agents, n_scenarios));
    return FBA_OK;
  });
}

static fba_instance* WrapLoaded(fba::LoadedInstance loaded) {
  auto* inst = new fba_instance{std::move(loaded.name), std::move(loaded.instance), {}, {}};
  if (loaded.config) inst->recommended = *loaded.config;
  return inst;
}

fba_status fba_instance_load_file(const char* path, fba_instance** out) {
  FBA_REQUIRE(path);
  FBA_REQUIRE(out);
  return Guard([&] {
    *out = WrapLoaded(fba::LoadInstanceFile(path));
    return FBA_OK;
  });
}

fba_status fba_instance_load_json(const char* text, fba_instance** out) {
  FBA_REQUIRE(text);
  FBA_REQUIRE(out);
  return Guard([&] {
    *out = WrapLoaded(fba::LoadInstanceJson(text));
    return FBA_OK;
  });
}

void fba_instance_destroy(fba_instance* instance) { delete instance; }

fba_status fba_instance_with_grid(const fba_instance* instance, double max, size_t steps,
                                  fba_instance** out) {
  FBA_REQUIRE(instance);
  FBA_REQUIRE(out);
  return Guard([&] {
    auto copy = std::make_unique<fba_instance>(*instance);
    copy->instance.grid = fba::BidGrid::Uniform(max, steps);
    *out = copy.release();
    return FBA_OK;
  });
}

fba_status fba_instance_with_alpha(const fba_instance* instance, double alpha,
                                   fba_instance** out) {
  FBA_REQUIRE(instance);
  FBA_REQUIRE(out);
  return Guard([&] {
    auto copy = std::make_unique<fba_instance>(*instance);
    copy->instance.rule.alpha = alpha;
    fba::ValidationReport report = fba::ValidateInstance(copy->instance);
    if (!report.ok()) throw fba::ValidationError(report.violations);
    *out = copy.release();
    return FBA_OK;
  });
}

const char* fba_instance_name(const fba_instance* instance) {
  return instance ? instance->name.c_str() : "";
}

size_t fba_instance_num_agents(const fba_instance* instance) {
  return instance ? instance->instance.num_agents() : 0;
}

size_t fba_instance_grid_size(const fba_instance* instance) {
  return instance ? instance->instance.grid.size() : 0;
}

double fba_instance_alpha(const fba_instance* instance) {
  return instance ? instance->instance.rule.alpha : 0.0;
}

fba_status fba_instance_grid(const fba_instance* instance, double* out, size_t len) {
  FBA_REQUIRE(instance);
  auto bids = instance->instance.grid.bids();
  return Copy(std::vector<double>(bids.begin(), bids.end()), out, len);
}

fba_status fba_instance_values(const fba_instance* instance, double* out, size_t len) {
  FBA_REQUIRE(instance);
  return Copy(instance->instance.values, out, len);
}

size_t fba_instance_num_notes(const fba_instance* instance) {
  return instance ? instance->notes.size() : 0;
}

const char* fba_instance_note(const fba_instance* instance, size_t index) {
  if (!instance || index >= instance->notes.size()) return nullptr;
  return instance->notes[index].c_str();
}

fba_status fba_instance_to_json(const fba_instance* instance, char** out) {
  FBA_REQUIRE(instance);
  return Guard([&] { return Emit(fba::InstanceToJson(instance->instance, instance->name), out); });
}

fba_config* fba_config_create(void) { return new (std::nothrow) fba_config{}; }

fba_status fba_config_recommended(const fba_instance* instance, fba_config** out) {
  FBA_REQUIRE(instance);
  FBA_REQUIRE(out);
  return Guard([&] {
    *out = new fba_config{instance->recommended};
    return FBA_OK;
  });
}

void fba_config_destroy(fba_config* config) { delete config; }

fba_status fba_config_set_schedule(fba_config* config, fba_schedule_kind kind, double c) {
  FBA_REQUIRE(config);
  if (kind != FBA_SCHEDULE_HARMONIC && kind != FBA_SCHEDULE_CONSTANT) {
    return Fail(FBA_ERR_INVALID_ARGUMENT, "unknown schedule kind");
  }
  if (!(c > 0.0 && c <= 1.0)) {
    return Fail(FBA_ERR_INVALID_ARGUMENT, "learning-rate coefficient must lie in (0, 1]");
  }
  config->config.schedule = {kind == FBA_SCHEDULE_HARMONIC ? fba::ScheduleKind::kHarmonic
                                                           : fba::ScheduleKind::kConstant,
                             c};
  return FBA_OK;
}

fba_status fba_config_set_max_iterations(fba_config* config, uint64_t iterations) {
  FBA_REQUIRE(config);
  config->config.max_iterations = iterations;
  return FBA_OK;
}

fba_status fba_config_set_epsilon_target(fba_config* config, double target) {
  FBA_REQUIRE(config);
  if (!(target >= 0.0)) return Fail(FBA_ERR_INVALID_ARGUMENT, "epsilon target must be >= 0");
  config->config.epsilon_target = target;
  return FBA_OK;
}

fba_status fba_config_clear_epsilon_target(fba_config* config) {
  FBA_REQUIRE(config);
  config->config.epsilon_target.reset();
  return FBA_OK;
}

fba_status fba_config_set_check_interval(fba_config* config, uint64_t interval) {
  FBA_REQUIRE(config);
  if (interval == 0) return Fail(FBA_ERR_INVALID_ARGUMENT, "check interval must be positive");
  config->config.check_interval = interval;
  return FBA_OK;
}

fba_status fba_config_set_init(fba_config* config, fba_init_kind init) {
  FBA_REQUIRE(config);
  switch (init) {
    case FBA_INIT_UNIFORM: config->config.init = fba::InitKind::kUniform; break;
    case FBA_INIT_ZERO: config->config.init = fba::InitKind::kPointMassAtZero; break;
    case FBA_INIT_RANDOM: config->config.init = fba::InitKind::kRandom; break;
    default: return Fail(FBA_ERR_INVALID_ARGUMENT, "unknown initialization");
  }
  return FBA_OK;
}

fba_status fba_config_set_seed(fba_config* config, uint64_t seed) {
  FBA_REQUIRE(config);
  config->config.seed = seed;
  return FBA_OK;
}

fba_status fba_config_set_independent_player_cache(fba_config* config, int enabled) {
  FBA_REQUIRE(config);
  config->config.independent_player_cache = enabled != 0;
  return FBA_OK;
}

int fba_config_has_epsilon_target(const fba_config* config) {
  return config && config->config.epsilon_target ? 1 : 0;
}

fba_status fba_config_to_json(const fba_config* config, char** out) {
  FBA_REQUIRE(config);
  return Guard([&] { return Emit(fba::ConfigToJson(config->config), out); });
}

fba_status fba_solve(const fba_instance* instance, const fba_config* config,
                     fba_result** out) {
  FBA_REQUIRE(instance);
  FBA_REQUIRE(config);
  FBA_REQUIRE(out);
  return Guard([&] {
    auto shared = std::make_shared<const fba_instance>(*instance);
    fba::SolverResult result = fba::Run(shared->instance, config->config);
    fba::PayoffEngine engine(shared->instance);
    fba::StrictCdfTable cdf = fba::StrictCdf(result.profile, shared->instance.grid);
    std::vector<double> curves;
    engine.AllCurves(cdf, true, curves);
    fba_certificate cert{result.certificate, shared->instance.grid};
    *out = new fba_result{std::move(shared), std::move(result), std::move(cert),
                          std::move(curves)};
    return FBA_OK;
  });
}

void fba_result_destroy(fba_result* result) { delete result; }

uint64_t fba_result_iterations(const fba_result* result) {
  return result ? result->result.iterations_run : 0;
}

uint64_t fba_result_renormalizations(const fba_result* result) {
  return result ? result->result.renormalizations : 0;
}

int fba_result_target_reached(const fba_result* result) {
  return result && result->result.target_reached ? 1 : 0;
}

double fba_result_epsilon(const fba_result* result) {
  return result ? result->result.certificate.epsilon : 0.0;
}

const fba_certificate* fba_result_certificate(const fba_result* result) {
  return result ? &result->certificate : nullptr;
}

fba_status fba_result_strategy(const fba_result* result, size_t agent, double* out,
                               size_t len) {
  FBA_REQUIRE(result);
  if (agent >= result->result.profile.size()) {
    return Fail(FBA_ERR_INVALID_ARGUMENT, "agent index out of range");
  }
  auto w = result->result.profile[agent].weights();
  return Copy(std::vector<double>(w.begin(), w.end()), out, len);
}

fba_status fba_result_payoff_curve(const fba_result* result, size_t agent, double* out,
                                   size_t len) {
  FBA_REQUIRE(result);
  const size_t m = result->instance->instance.grid.size();
  if (agent >= result->result.profile.size()) {
    return Fail(FBA_ERR_INVALID_ARGUMENT, "agent index out of range");
  }
  auto first = result->curves.begin() + static_cast<std::ptrdiff_t>(agent * m);
  return Copy(std::vector<double>(first, first + static_cast<std::ptrdiff_t>(m)), out, len);
}

size_t fba_result_trajectory_size(const fba_result* result) {
  return result ? result->result.trajectory.size() : 0;
}

fba_status fba_result_trajectory(const fba_result* result, uint64_t* iterations,
                                 double* epsilons, size_t len) {
  FBA_REQUIRE(result);
  FBA_REQUIRE(iterations);
  FBA_REQUIRE(epsilons);
  const auto& t = result->result.trajectory;
  if (len != t.size()) return Fail(FBA_ERR_DIMENSION, "trajectory buffer size mismatch");
  for (size_t i = 0; i < t.size(); ++i) {
    iterations[i] = t[i].iteration;
    epsilons[i] = t[i].epsilon;
  }
  return FBA_OK;
}

fba_status fba_certify(const fba_instance* instance, const double* weights, size_t len,
                       fba_certificate** out) {
  FBA_REQUIRE(instance);
  FBA_REQUIRE(weights);
  FBA_REQUIRE(out);
  const size_t n = instance->instance.num_agents();
  const size_t m = instance->instance.grid.size();
  if (len != n * m) {
    return Fail(FBA_ERR_DIMENSION, "profile has " + std::to_string(len) + " weights, instance needs " +
                                       std::to_string(n) + " x " + std::to_string(m));
  }
  return Guard([&] {
    fba::StrategyProfile profile;
    for (size_t a = 0; a < n; ++a) {
      profile.emplace_back(std::vector<double>(weights + a * m, weights + (a + 1) * m));
    }
    *out = new fba_certificate{fba::Certify(profile, instance->instance),
                               instance->instance.grid};
    return FBA_OK;
  });
}

void fba_certificate_destroy(fba_certificate* certificate) { delete certificate; }

double fba_certificate_epsilon(const fba_certificate* certificate) {
  return certificate ? certificate->certificate.epsilon : 0.0;
}

size_t fba_certificate_num_agents(const fba_certificate* certificate) {
  return certificate ? certificate->certificate.gaps.size() : 0;
}

fba_status fba_certificate_gaps(const fba_certificate* certificate, double* out, size_t len) {
  FBA_REQUIRE(certificate);
  return Copy(certificate->certificate.gaps, out, len);
}

fba_status fba_certificate_payoffs(const fba_certificate* certificate, double* out,
                                   size_t len) {
  FBA_REQUIRE(certificate);
  return Copy(certificate->certificate.payoffs, out, len);
}

fba_status fba_certificate_best_responses(const fba_certificate* certificate, size_t* out,
                                          size_t len) {
  FBA_REQUIRE(certificate);
  FBA_REQUIRE(out);
  const auto& br = certificate->certificate.best_response;
  if (len != br.size()) return Fail(FBA_ERR_DIMENSION, "best-response buffer size mismatch");
  std::copy(br.begin(), br.end(), out);
  return FBA_OK;
}

fba_status fba_certificate_to_json(const fba_certificate* certificate, int64_t iterations,
                                   const fba_config* config, char** out) {
  FBA_REQUIRE(certificate);
  return Guard([&] {
    std::optional<std::size_t> iters;
    if (iterations >= 0) iters = static_cast<std::size_t>(iterations);
    std::optional<std::string> echo;
    if (config) echo = fba::ConfigToJson(config->config);
    return Emit(fba::CertificateToJson(certificate->certificate, certificate->grid, iters, echo),
                out);
  });
}

}  // extern "C"
