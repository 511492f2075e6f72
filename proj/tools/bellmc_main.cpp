// Copyright 2026 The bellmc Authors
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

// bellmc command line: runs one experiment and emits a machine-readable
// report (JSON or CSV) on stdout or to a file. Identical invocations produce
// byte-identical output, independent of the worker count.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include "CLI11.hpp"

#include "bellmc/analysis.hpp"
#include "bellmc/report_io.hpp"

namespace {

struct CliOptions {
  std::int64_t trials = 100000;
  double eta = 1.0;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out;
  int threads = 0;  // 0 -> all available
};

void add_output_flags(CLI::App& cmd, CliOptions& options) {
  cmd.add_option("--format", options.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  cmd.add_option("--out", options.out,
                 "Write the report to this path instead of stdout");
}

void add_sampling_flags(CLI::App& cmd, CliOptions& options, bool with_eta) {
  cmd.add_option("--trials", options.trials, "Trials per setting")
      ->capture_default_str();
  if (with_eta) {
    cmd.add_option("--eta", options.eta, "Per-detector efficiency in (0, 1]")
        ->capture_default_str();
  }
  cmd.add_option("--seed", options.seed, "Random seed")->capture_default_str();
  cmd.add_option("--threads", options.threads,
                 "Worker threads (default: all available)");
  add_output_flags(cmd, options);
}

int resolved_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

bellmc::engine::ExperimentConfig config_from(const CliOptions& options) {
  bellmc::engine::ExperimentConfig config;
  config.trials_per_setting = options.trials;
  config.eta = options.eta;
  config.seed = options.seed;
  bellmc::engine::validate(config);
  return config;
}

int emit(const bellmc::analysis::Report& report, const CliOptions& options) {
  const std::string payload = options.format == "csv"
                                  ? bellmc::report_io::to_csv(report)
                                  : bellmc::report_io::to_json(report);
  if (options.out.empty()) {
    std::cout << payload;
    return 0;
  }
  std::ofstream file(options.out, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot open output file: " << options.out << "\n";
    return 2;
  }
  file << payload;
  return file.good() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Monte-Carlo Bell experiments on a two-particle singlet with "
      "postselection, plus exhaustive non-contextual hidden-variable checks"};
  app.require_subcommand(1);

  CliOptions options;

  auto* ghz = app.add_subcommand(
      "ghz", "Sampled three-particle product measurements: deterministic "
             "outcome products on the entangled state");
  add_sampling_flags(*ghz, options, /*with_eta=*/false);

  auto* ideal = app.add_subcommand(
      "ideal", "Ideal (eta = 1) postselected singlet experiment");
  add_sampling_flags(*ideal, options, /*with_eta=*/false);

  auto* detector = app.add_subcommand(
      "detector", "Detector-limited postselected singlet experiment");
  add_sampling_flags(*detector, options, /*with_eta=*/true);

  auto* hv = app.add_subcommand(
      "hv", "Non-contextual hidden-variable model through the same pipeline, "
            "side by side with the quantum run");
  add_sampling_flags(*hv, options, /*with_eta=*/true);

  auto* enumerate = app.add_subcommand(
      "enumerate", "Exhaustive assignment enumeration checks");
  add_output_flags(*enumerate, options);

  auto* chsh = app.add_subcommand(
      "chsh", "CHSH correlation estimates from the same run data");
  add_sampling_flags(*chsh, options, /*with_eta=*/true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const int threads = resolved_threads(options.threads);
    bellmc::analysis::ExperimentResults results;
    if (ghz->parsed()) {
      auto config = config_from(options);
      config.state = bellmc::engine::StateKind::kGhz;
      results = bellmc::analysis::run_ghz_experiment(config, threads);
    } else if (ideal->parsed()) {
      auto config = config_from(options);
      config.selection = bellmc::engine::SelectionMode::kIdeal;
      results = bellmc::analysis::run_singlet_experiment(config, "ideal", threads);
    } else if (detector->parsed()) {
      results = bellmc::analysis::run_singlet_experiment(config_from(options),
                                                         "detector", threads);
    } else if (hv->parsed()) {
      results = bellmc::analysis::run_hv_experiment(
          bellmc::hv::uniform_two_particle_model(), config_from(options),
          threads);
    } else if (enumerate->parsed()) {
      results = bellmc::analysis::run_enumeration_experiment();
    } else {
      results = bellmc::analysis::run_singlet_experiment(config_from(options),
                                                         "chsh", threads);
    }
    return emit(bellmc::analysis::summarize(results), options);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
