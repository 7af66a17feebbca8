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

// Command-line front end. Talks to the solver only through the C API.
//
//   fbauction solve  --example 1 --out run1
//   fbauction verify --example 1 --strategies run1/strategies.csv
//   fbauction batch  --seed-from 1 --seed-to 10 --out batch
//   fbauction export --example 4 > example_4.json
//
// Exit codes: 0 success, 1 command-line or JSON parse error, 2 validation or
// dimension error, 3 epsilon target not reached.

#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fbauction/fbauction.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitValidation = 2;
constexpr int kExitTargetMissed = 3;

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
using InstancePtr = std::unique_ptr<fba_instance, InstanceDeleter>;
using ConfigPtr = std::unique_ptr<fba_config, ConfigDeleter>;
using ResultPtr = std::unique_ptr<fba_result, ResultDeleter>;
using CertificatePtr = std::unique_ptr<fba_certificate, CertificateDeleter>;

// Carries the exit code of a failed C API call up to main.
struct CliError {
  int code;
  std::string message;
};

int ExitCodeFor(fba_status status) {
  switch (status) {
    case FBA_ERR_PARSE: return kExitParse;
    case FBA_ERR_VALIDATION:
    case FBA_ERR_DIMENSION: return kExitValidation;
    default: return kExitParse;
  }
}

void Check(fba_status status, const std::string& what) {
  if (status != FBA_OK) throw CliError{ExitCodeFor(status), what + ": " + fba_last_error()};
}

// Out-of-range option values are validation failures.
void CheckOption(fba_status status, const std::string& what) {
  if (status != FBA_OK) throw CliError{kExitValidation, what + ": " + fba_last_error()};
}

std::string TakeString(char* s) {
  std::string out = s ? s : "";
  fba_string_free(s);
  return out;
}

std::string Fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::uint64_t Fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{kExitParse, "cannot read " + path.string()};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Options shared by every subcommand that needs an instance.
struct SourceOptions {
  std::optional<int> example;
  std::optional<std::string> file;
  std::optional<std::uint64_t> random_seed;
  std::size_t agents = 10;
  std::size_t scenarios = 20;
  std::optional<std::size_t> grid_steps;
  std::optional<double> alpha;

  void Register(CLI::App* app) {
    auto* ex = app->add_option("--example", example, "Built-in example number (1-5)");
    auto* f = app->add_option("--file", file, "Instance JSON file");
    auto* r = app->add_option("--random", random_seed, "Random pair instance with this seed");
    ex->excludes(f)->excludes(r);
    f->excludes(r);
    app->add_option("--agents", agents, "Agents in a random instance")->capture_default_str();
    app->add_option("--scenarios", scenarios, "Scenarios in a random instance")
        ->capture_default_str();
    app->add_option("--grid-steps", grid_steps, "Override the number of grid steps");
    app->add_option("--alpha", alpha, "Override the payment rule (1 = first price)");
  }
};

struct LoadedSource {
  InstancePtr instance;
  json identity;
};

LoadedSource Load(const SourceOptions& opts) {
  fba_instance* raw = nullptr;
  json identity;
  if (opts.example) {
    Check(fba_instance_example(*opts.example, &raw), "example");
    identity["source"] = "example";
    identity["example"] = *opts.example;
  } else if (opts.file) {
    Check(fba_instance_load_file(opts.file->c_str(), &raw), "instance file " + *opts.file);
    identity["source"] = "file";
    identity["path"] = *opts.file;
    char hex[17];
    std::snprintf(hex, sizeof(hex), "%016" PRIx64, Fnv1a(ReadFile(*opts.file)));
    identity["fnv1a64"] = hex;
  } else if (opts.random_seed) {
    Check(fba_instance_random(*opts.random_seed, opts.agents, opts.scenarios, &raw), "random");
    identity["source"] = "random";
    identity["seed"] = *opts.random_seed;
    identity["agents"] = opts.agents;
    identity["scenarios"] = opts.scenarios;
  } else {
    throw CliError{kExitParse, "one of --example, --file or --random is required"};
  }
  InstancePtr instance(raw);
  for (std::size_t i = 0; i < fba_instance_num_notes(instance.get()); ++i) {
    std::cerr << "note: " << fba_instance_note(instance.get(), i) << "\n";
  }
  if (opts.grid_steps) {
    std::vector<double> grid(fba_instance_grid_size(instance.get()));
    Check(fba_instance_grid(instance.get(), grid.data(), grid.size()), "grid");
    fba_instance* regridded = nullptr;
    Check(fba_instance_with_grid(instance.get(), grid.back(), *opts.grid_steps, &regridded),
          "--grid-steps");
    instance.reset(regridded);
  }
  if (opts.alpha) {
    fba_instance* changed = nullptr;
    Check(fba_instance_with_alpha(instance.get(), *opts.alpha, &changed), "--alpha");
    instance.reset(changed);
  }
  identity["name"] = fba_instance_name(instance.get());
  return {std::move(instance), std::move(identity)};
}

struct ConfigOptions {
  std::optional<std::string> eta_kind;
  std::optional<double> eta_c;
  std::optional<std::uint64_t> max_iters;
  std::optional<double> eps_target;
  std::optional<std::uint64_t> check_interval;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> init;
  std::optional<bool> cache;

  void Register(CLI::App* app) {
    app->add_option("--eta-kind", eta_kind, "Learning-rate schedule")
        ->check(CLI::IsMember({"harmonic", "constant"}));
    app->add_option("--eta-c", eta_c, "Learning-rate coefficient in (0, 1]");
    app->add_option("--max-iters", max_iters, "Iteration budget");
    app->add_option("--eps-target", eps_target, "Stop once epsilon is at most this");
    app->add_option("--check-interval", check_interval, "Iterations between epsilon checks");
    app->add_option("--seed", seed, "Seed for random initialization");
    app->add_option("--init", init, "Initial profile")
        ->check(CLI::IsMember({"uniform", "zero", "random"}));
    app->add_option("--cache", cache, "Share opponent win probabilities across agents");
  }

  ConfigPtr Build(const fba_instance* instance) const {
    fba_config* raw = nullptr;
    Check(fba_config_recommended(instance, &raw), "config");
    ConfigPtr config(raw);
    fba_config* c = config.get();
    if (eta_kind || eta_c) {
      json current = json::parse(TakeString([&] {
        char* s = nullptr;
        Check(fba_config_to_json(c, &s), "config");
        return s;
      }()));
      std::string kind = eta_kind.value_or(current["schedule"]["kind"].get<std::string>());
      double coeff = eta_c.value_or(current["schedule"]["c"].get<double>());
      CheckOption(fba_config_set_schedule(
                c, kind == "constant" ? FBA_SCHEDULE_CONSTANT : FBA_SCHEDULE_HARMONIC, coeff),
            "--eta-c");
    }
    if (max_iters) CheckOption(fba_config_set_max_iterations(c, *max_iters), "--max-iters");
    if (eps_target) CheckOption(fba_config_set_epsilon_target(c, *eps_target), "--eps-target");
    if (check_interval) {
      CheckOption(fba_config_set_check_interval(c, *check_interval), "--check-interval");
    }
    if (seed) CheckOption(fba_config_set_seed(c, *seed), "--seed");
    if (init) {
      fba_init_kind k = *init == "zero"     ? FBA_INIT_ZERO
                        : *init == "random" ? FBA_INIT_RANDOM
                                            : FBA_INIT_UNIFORM;
      CheckOption(fba_config_set_init(c, k), "--init");
    }
    if (cache) CheckOption(fba_config_set_independent_player_cache(c, *cache ? 1 : 0), "--cache");
    return config;
  }
};

std::string ConfigJson(const fba_config* config) {
  char* s = nullptr;
  Check(fba_config_to_json(config, &s), "config");
  return TakeString(s);
}

std::string CertificateJson(const fba_certificate* cert, std::int64_t iterations,
                            const fba_config* config) {
  char* s = nullptr;
  Check(fba_certificate_to_json(cert, iterations, config, &s), "certificate");
  return TakeString(s);
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError{kExitParse, "cannot write " + path.string()};
  out << text;
}

int Solve(const SourceOptions& source, const ConfigOptions& overrides, const fs::path& out_dir) {
  LoadedSource loaded = Load(source);
  const fba_instance* instance = loaded.instance.get();
  ConfigPtr config = overrides.Build(instance);

  const auto start = std::chrono::steady_clock::now();
  fba_result* raw = nullptr;
  Check(fba_solve(instance, config.get(), &raw), "solve");
  ResultPtr result(raw);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::size_t n = fba_instance_num_agents(instance);
  const std::size_t m = fba_instance_grid_size(instance);
  std::vector<double> grid(m), weights(m), curve(m);
  Check(fba_instance_grid(instance, grid.data(), m), "grid");

  fs::create_directories(out_dir);
  std::ostringstream strategies, payoffs;
  strategies << "agent_id,bid,pdf,cdf\n";
  payoffs << "agent_id,bid,expected_payoff\n";
  for (std::size_t a = 0; a < n; ++a) {
    Check(fba_result_strategy(result.get(), a, weights.data(), m), "strategy");
    Check(fba_result_payoff_curve(result.get(), a, curve.data(), m), "payoff curve");
    double cdf = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      cdf += weights[j];
      strategies << a << ',' << Fmt(grid[j]) << ',' << Fmt(weights[j]) << ',' << Fmt(cdf) << '\n';
      payoffs << a << ',' << Fmt(grid[j]) << ',' << Fmt(curve[j]) << '\n';
    }
  }
  const fs::path strategies_path = out_dir / "strategies.csv";
  const fs::path payoffs_path = out_dir / "payoffs.csv";
  const fs::path certificate_path = out_dir / "certificate.json";
  const fs::path manifest_path = out_dir / "manifest.json";
  WriteText(strategies_path, strategies.str());
  WriteText(payoffs_path, payoffs.str());

  const auto iterations = static_cast<std::int64_t>(fba_result_iterations(result.get()));
  const fba_certificate* cert = fba_result_certificate(result.get());
  WriteText(certificate_path, CertificateJson(cert, iterations, config.get()) + "\n");

  const std::size_t t = fba_result_trajectory_size(result.get());
  std::vector<std::uint64_t> ks(t);
  std::vector<double> eps(t);
  Check(fba_result_trajectory(result.get(), ks.data(), eps.data(), t), "trajectory");
  json trajectory = json::array();
  for (std::size_t i = 0; i < t; ++i) {
    trajectory.push_back({{"iteration", ks[i]}, {"epsilon", eps[i]}});
  }

  char* instance_json = nullptr;
  Check(fba_instance_to_json(instance, &instance_json), "instance");
  json manifest;
  manifest["library_version"] = fba_version();
  manifest["instance"] = loaded.identity;
  manifest["instance_definition"] = json::parse(TakeString(instance_json));
  manifest["config"] = json::parse(ConfigJson(config.get()));
  manifest["artifacts"] = {{"strategies", strategies_path.string()},
                           {"payoffs", payoffs_path.string()},
                           {"certificate", certificate_path.string()}};
  manifest["duration_seconds"] = seconds;
  manifest["iterations"] = iterations;
  manifest["renormalizations"] = fba_result_renormalizations(result.get());
  manifest["epsilon"] = fba_result_epsilon(result.get());
  manifest["trajectory"] = trajectory;
  WriteText(manifest_path, manifest.dump(2) + "\n");

  const double epsilon = fba_result_epsilon(result.get());
  std::cout << fba_instance_name(instance) << ": epsilon " << Fmt(epsilon) << " after "
            << iterations << " iterations (" << seconds << " s), outputs in "
            << out_dir.string() << "\n";
  if (fba_config_has_epsilon_target(config.get()) && !fba_result_target_reached(result.get())) {
    std::cerr << "epsilon target not reached\n";
    return kExitTargetMissed;
  }
  return kExitOk;
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double ParseNumber(const std::string& s, std::size_t line_no) {
  try {
    std::size_t used = 0;
    double x = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return x;
  } catch (const std::exception&) {
    throw CliError{kExitValidation,
                   "strategies CSV line " + std::to_string(line_no) + ": bad number '" + s + "'"};
  }
}

// Reads agent-major pdf weights and checks them against the instance grid.
std::vector<double> ReadStrategies(const fs::path& path, const std::vector<double>& grid,
                                   std::size_t n) {
  std::ifstream in(path);
  if (!in) throw CliError{kExitValidation, "cannot read " + path.string()};
  const std::size_t m = grid.size();
  std::string line;
  if (!std::getline(in, line) || line.rfind("agent_id,bid,pdf", 0) != 0) {
    throw CliError{kExitValidation, "strategies CSV must start with 'agent_id,bid,pdf,cdf'"};
  }
  std::vector<double> weights;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = SplitCsvLine(line);
    if (fields.size() < 3) {
      throw CliError{kExitValidation, "strategies CSV line " + std::to_string(line_no) +
                                          " has " + std::to_string(fields.size()) + " fields"};
    }
    const std::size_t row = weights.size();
    const double agent = ParseNumber(fields[0], line_no);
    const double bid = ParseNumber(fields[1], line_no);
    if (row >= n * m || agent != static_cast<double>(row / m) ||
        std::abs(bid - grid[row % m]) > 1e-12 * std::max(1.0, std::abs(grid[row % m]))) {
      throw CliError{kExitValidation, "strategies CSV line " + std::to_string(line_no) +
                                          " does not match the instance agents and grid"};
    }
    weights.push_back(ParseNumber(fields[2], line_no));
  }
  if (weights.size() != n * m) {
    throw CliError{kExitValidation, "strategies CSV has " + std::to_string(weights.size()) +
                                        " rows, instance needs " + std::to_string(n * m)};
  }
  return weights;
}

int Verify(const SourceOptions& source, const fs::path& strategies_path) {
  LoadedSource loaded = Load(source);
  const fba_instance* instance = loaded.instance.get();
  const std::size_t n = fba_instance_num_agents(instance);
  std::vector<double> grid(fba_instance_grid_size(instance));
  Check(fba_instance_grid(instance, grid.data(), grid.size()), "grid");
  std::vector<double> weights = ReadStrategies(strategies_path, grid, n);

  fba_certificate* raw = nullptr;
  fba_status status = fba_certify(instance, weights.data(), weights.size(), &raw);
  if (status != FBA_OK) {
    throw CliError{kExitValidation, std::string("certify: ") + fba_last_error()};
  }
  CertificatePtr cert(raw);
  std::cout << CertificateJson(cert.get(), -1, nullptr) << "\n";
  return kExitOk;
}

int Batch(std::uint64_t from, std::uint64_t to, std::size_t agents, std::size_t scenarios,
          const ConfigOptions& overrides, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  std::ostringstream csv;
  csv << "seed,epsilon,duration_seconds,status\n";
  for (std::uint64_t seed = from; seed <= to && from <= to; ++seed) {
    std::string status = "ok";
    std::string epsilon;
    double seconds = 0.0;
    try {
      SourceOptions source;
      source.random_seed = seed;
      source.agents = agents;
      source.scenarios = scenarios;
      LoadedSource loaded = Load(source);
      ConfigPtr config = overrides.Build(loaded.instance.get());
      const auto start = std::chrono::steady_clock::now();
      fba_result* raw = nullptr;
      Check(fba_solve(loaded.instance.get(), config.get(), &raw), "solve");
      ResultPtr result(raw);
      seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      epsilon = Fmt(fba_result_epsilon(result.get()));
      std::cout << "seed " << seed << ": epsilon " << epsilon << "\n";
    } catch (const CliError& e) {
      status = "error: " + e.message;
      std::cerr << "seed " << seed << " failed: " << e.message << "\n";
    }
    for (char& c : status) {
      if (c == ',' || c == '\n') c = ';';
    }
    csv << seed << ',' << epsilon << ',' << Fmt(seconds) << ',' << status << '\n';
    if (seed == UINT64_MAX) break;
  }
  WriteText(out_dir / "batch.csv", csv.str());
  return kExitOk;
}

int Export(const SourceOptions& source) {
  LoadedSource loaded = Load(source);
  char* s = nullptr;
  Check(fba_instance_to_json(loaded.instance.get(), &s), "export");
  std::cout << TakeString(s) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fictitious bidding solver for sealed-bid auctions with correlated values"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(fba_version()));

  SourceOptions solve_source;
  ConfigOptions solve_config;
  std::string solve_out = "out";
  auto* solve = app.add_subcommand("solve", "Run fictitious bidding and write strategies");
  solve_source.Register(solve);
  solve_config.Register(solve);
  solve->add_option("--out", solve_out, "Output directory")->capture_default_str();

  SourceOptions verify_source;
  std::string strategies_path;
  auto* verify = app.add_subcommand("verify", "Certify a strategies.csv file");
  verify_source.Register(verify);
  verify->add_option("--strategies", strategies_path, "strategies.csv to certify")->required();

  std::uint64_t seed_from = 1, seed_to = 10;
  std::size_t batch_agents = 10, batch_scenarios = 20;
  ConfigOptions batch_config;
  std::string batch_out = "batch";
  auto* batch = app.add_subcommand("batch", "Solve a range of random instances");
  batch->add_option("--seed-from", seed_from, "First seed")->capture_default_str();
  batch->add_option("--seed-to", seed_to, "Last seed (inclusive)")->capture_default_str();
  batch->add_option("--agents", batch_agents, "Agents per instance")->capture_default_str();
  batch->add_option("--scenarios", batch_scenarios, "Pairs per instance")->capture_default_str();
  batch_config.Register(batch);
  batch->add_option("--out", batch_out, "Output directory")->capture_default_str();

  SourceOptions export_source;
  auto* exp = app.add_subcommand("export", "Print an instance as JSON");
  export_source.Register(exp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    if (*solve) return Solve(solve_source, solve_config, solve_out);
    if (*verify) return Verify(verify_source, strategies_path);
    if (*batch) {
      return Batch(seed_from, seed_to, batch_agents, batch_scenarios, batch_config, batch_out);
    }
    if (*exp) return Export(export_source);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitParse;
}
