// Copyright 2026 The taxlab Authors.
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


// Command-line experiment runner.
//
//   taxlab run --config <path> [--seed N] [--out DIR] [--jobs K] [--quiet]
//   taxlab validate --config <path>
//
// Exit status: 0 when every suite passes, 1 on a failing suite, 2 on an
// invalid config or unwritable output.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "taxlab/experiment.hpp"

namespace {

constexpr int kExitInvalid = 2;

int Run(const std::string& config, std::optional<std::uint64_t> seed,
        std::optional<std::string> out, std::optional<int> jobs, bool quiet) {
  taxlab::ExperimentConfig cfg = taxlab::LoadExperimentConfig(config);
  if (seed) cfg.seed = *seed;
  if (out) cfg.out = *out;
  if (jobs) {
    if (*jobs < 1) throw taxlab::ConfigError("--jobs must be positive");
    cfg.jobs = *jobs;
  }
  std::ostringstream detail;
  const taxlab::ExperimentResult res = taxlab::run_experiment(cfg, quiet ? detail : std::cout);
  if (quiet) {
    for (const taxlab::SuiteOutcome& s : res.suites) {
      std::cout << s.name << ": " << (s.pass ? "PASS" : "FAIL") << "\n";
      for (const std::string& line : s.lines) {
        if (line.rfind("FAIL", 0) == 0 || line.find(": FAIL") != std::string::npos) {
          std::cout << "  " << line << "\n";
        }
      }
    }
  }
  return res.exit_code;
}

int Validate(const std::string& config) {
  const taxlab::ExperimentConfig cfg = taxlab::LoadExperimentConfig(config);
  std::cout << "valid: " << cfg.mechanisms.size() << " mechanism(s), " << cfg.suites.size()
            << " suite(s)\n";
  for (const auto& em : cfg.mechanisms) {
    std::cout << "  " << em.spec.label << " n=" << em.spec.n << " m=" << em.spec.m
              << " catalog=";
    for (int i = 0; i < em.catalog.n(); ++i) {
      std::cout << (i ? "x" : "") << em.catalog.size(i);
    }
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"taxlab: complexity experiments for truthful combinatorial auctions"};
  app.require_subcommand(1);

  std::string run_config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<int> jobs;
  bool quiet = false;
  CLI::App* run = app.add_subcommand("run", "Run the suites listed in a config");
  run->add_option("--config", run_config, "Experiment config (JSON)")->required();
  run->add_option("--seed", seed, "Override the config seed");
  run->add_option("--out", out, "Override the output directory");
  run->add_option("--jobs", jobs, "Worker threads for catalog sweeps");
  run->add_flag("-q,--quiet", quiet, "Print only suite verdicts and failures");

  std::string validate_config;
  CLI::App* validate = app.add_subcommand("validate", "Check a config without running it");
  validate->add_option("--config", validate_config, "Experiment config (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (*run) return Run(run_config, seed, out, jobs, quiet);
    return Validate(validate_config);
  } catch (const taxlab::ConfigError& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
  } catch (const taxlab::IoError& e) {
    std::cerr << "output error: " << e.what() << "\n";
  } catch (const taxlab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitInvalid;
}
