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

// CHSH evaluation, experiment drivers and structured report assembly.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bellmc/engine.hpp"
#include "bellmc/hvcore.hpp"
#include "bellmc/select.hpp"

namespace bellmc::analysis {

struct EstimateWithError {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t count = 0;
};

/// Per-setting product means over all runs (zeros included).
struct CorrelationEstimates {
  EstimateWithError r;
  EstimateWithError rp;
  EstimateWithError q;
  EstimateWithError qp;
};

CorrelationEstimates correlation_estimates(
    const engine::ExperimentTallies& tallies);

struct ChshResult {
  double value = 0.0;      // |<R> + <R'> + <Q> - <Q'>|
  double std_error = 0.0;  // propagated from the four means
  bool satisfied = false;  // value <= 2 + 3 * std_error
};

ChshResult chsh(const CorrelationEstimates& estimates);

/// One reported quantity; std_error / count are omitted where meaningless.
struct Quantity {
  std::string name;
  double value = 0.0;
  std::optional<double> std_error;
  std::optional<std::int64_t> count;
};

struct ConfigEcho {
  std::int64_t trials_per_setting = 0;
  double eta = 1.0;
  std::uint64_t seed = 0;
  std::string state;
  std::string selection;
};

struct Report {
  std::string experiment;
  std::string status;  // "ok" | "insufficient-data"
  std::optional<ConfigEcho> config;
  std::vector<Quantity> quantities;
  std::vector<std::pair<std::string, std::string>> verdicts;
};

struct GhzObservableTally {
  std::string label;
  std::int64_t trials = 0;
  std::int64_t product_plus = 0;
  std::int64_t product_minus = 0;
  double exact_expectation = 0.0;
  bool deterministic = false;  // every product equals the exact expectation
};

/// Everything a finished experiment may contribute to a report. Sections are
/// optional; summarize() renders whichever are present.
struct ExperimentResults {
  std::string kind;
  bool insufficient_data = false;
  std::optional<engine::ExperimentConfig> config;
  std::vector<GhzObservableTally> ghz;
  std::optional<select::STEstimate> quantum_st;
  std::optional<select::BoundCheck> bound;
  std::optional<double> kept_t_fraction;
  std::optional<std::int64_t> dropped_t_plus;
  std::optional<double> s_plus_fraction;
  std::optional<double> st_closed_form;      // detector reference value
  std::optional<double> st_order_reference;  // -(eta^2)^4
  std::optional<hv::HvStEstimate> hv_st;
  std::optional<double> hv_protocol_expectation;
  std::optional<double> hv_expectation_st;
  std::optional<hv::GhzContradictionResult> ghz_enumeration;
  std::optional<hv::StProductResult> st_enumeration;
  std::optional<CorrelationEstimates> correlations;
  std::optional<ChshResult> chsh_result;
};

/// Deterministic report assembly; an empty results object yields status
/// "insufficient-data".
Report summarize(const ExperimentResults& results);

// Experiment drivers shared by the CLI and the test suites.
ExperimentResults run_ghz_experiment(const engine::ExperimentConfig& config,
                                     int num_threads = 1);
ExperimentResults run_singlet_experiment(const engine::ExperimentConfig& config,
                                         const std::string& kind,
                                         int num_threads = 1);
ExperimentResults run_hv_experiment(const hv::NoncontextualModel& model,
                                    const engine::ExperimentConfig& config,
                                    int num_threads = 1);
ExperimentResults run_enumeration_experiment();

/// Closed-form selected-ensemble value -eta^4 * (eta^4/2) / (1 - eta^4/2)
/// for the exact singlet under this protocol.
double detector_closed_form(double eta);

}  // namespace bellmc::analysis
