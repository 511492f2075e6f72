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

#include "bellmc/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace bellmc::analysis {

namespace {

EstimateWithError mean_of_setting(const engine::SettingTally& tally) {
  EstimateWithError estimate;
  estimate.count = tally.total;
  if (tally.total == 0) return estimate;
  const double n = static_cast<double>(tally.total);
  estimate.mean = static_cast<double>(tally.plus - tally.minus) / n;
  const double second_moment = static_cast<double>(tally.plus + tally.minus) / n;
  const double variance =
      std::max(0.0, second_moment - estimate.mean * estimate.mean);
  estimate.std_error = std::sqrt(variance / n);
  return estimate;
}

double binomial_std_error(double p, std::int64_t n) {
  return n > 0 ? std::sqrt(p * (1.0 - p) / static_cast<double>(n)) : 0.0;
}

}  // namespace

CorrelationEstimates correlation_estimates(
    const engine::ExperimentTallies& tallies) {
  CorrelationEstimates estimates;
  estimates.r = mean_of_setting(tallies.of(engine::Setting::kR));
  estimates.rp = mean_of_setting(tallies.of(engine::Setting::kRp));
  estimates.q = mean_of_setting(tallies.of(engine::Setting::kQ));
  estimates.qp = mean_of_setting(tallies.of(engine::Setting::kQp));
  return estimates;
}

ChshResult chsh(const CorrelationEstimates& estimates) {
  ChshResult result;
  result.value = std::abs(estimates.r.mean + estimates.rp.mean +
                          estimates.q.mean - estimates.qp.mean);
  result.std_error = std::sqrt(
      estimates.r.std_error * estimates.r.std_error +
      estimates.rp.std_error * estimates.rp.std_error +
      estimates.q.std_error * estimates.q.std_error +
      estimates.qp.std_error * estimates.qp.std_error);
  result.satisfied = result.value <= 2.0 + 3.0 * result.std_error;
  return result;
}

double detector_closed_form(double eta) {
  const double eta4 = eta * eta * eta * eta;
  return -eta4 * (eta4 / 2.0) / (1.0 - eta4 / 2.0);
}

namespace {

ConfigEcho echo_of(const engine::ExperimentConfig& config) {
  ConfigEcho echo;
  echo.trials_per_setting = config.trials_per_setting;
  echo.eta = config.eta;
  echo.seed = config.seed;
  echo.state =
      config.state == engine::StateKind::kSinglet ? "singlet" : "ghz";
  echo.selection = config.selection == engine::SelectionMode::kIdeal
                       ? "ideal"
                       : "postselected";
  return echo;
}

void push(std::vector<Quantity>& rows, std::string name, double value,
          std::optional<double> std_error = std::nullopt,
          std::optional<std::int64_t> count = std::nullopt) {
  rows.push_back(Quantity{std::move(name), value, std_error, count});
}

void append_st_rows(std::vector<Quantity>& rows,
                    const select::STEstimate& st) {
  push(rows, "p_R_minus", st.p_R_minus,
       binomial_std_error(st.p_R_minus, st.r_total), st.r_total);
  push(rows, "p_Rp_minus", st.p_Rp_minus,
       binomial_std_error(st.p_Rp_minus, st.rp_total), st.rp_total);
  push(rows, "p_T_minus", st.p_T_minus,
       binomial_std_error(st.p_T_minus, st.t_kept_total), st.t_kept_total);
  push(rows, "st_value", st.st_value, st.standard_error, st.t_kept_total);
}

}  // namespace

Report summarize(const ExperimentResults& results) {
  Report report;
  report.experiment = results.kind;
  if (results.config) report.config = echo_of(*results.config);

  auto& rows = report.quantities;

  for (const auto& obs : results.ghz) {
    const double n = static_cast<double>(obs.trials);
    const double mean =
        obs.trials > 0
            ? static_cast<double>(obs.product_plus - obs.product_minus) / n
            : 0.0;
    const double variance = std::max(0.0, 1.0 - mean * mean);
    push(rows, obs.label + ".product_mean", mean,
         obs.trials > 0 ? std::sqrt(variance / n) : 0.0, obs.trials);
    push(rows, obs.label + ".exact_expectation", obs.exact_expectation);
    push(rows, obs.label + ".deterministic", obs.deterministic ? 1.0 : 0.0,
         std::nullopt, obs.trials);
  }
  if (!results.ghz.empty()) {
    const bool all = std::all_of(results.ghz.begin(), results.ghz.end(),
                                 [](const auto& o) { return o.deterministic; });
    report.verdicts.emplace_back("ghz_determinism",
                                 all ? "DETERMINISTIC" : "VIOLATED");
  }

  if (results.quantum_st) append_st_rows(rows, *results.quantum_st);
  if (results.st_closed_form) {
    push(rows, "st_closed_form", *results.st_closed_form);
  }
  if (results.st_order_reference) {
    push(rows, "st_order_reference", *results.st_order_reference);
  }
  if (results.kept_t_fraction && results.quantum_st) {
    const auto& st = *results.quantum_st;
    const std::int64_t t_total =
        st.t_kept_total + results.dropped_t_plus.value_or(0);
    push(rows, "kept_t_fraction", *results.kept_t_fraction,
         binomial_std_error(*results.kept_t_fraction, t_total), t_total);
  }
  if (results.dropped_t_plus) {
    push(rows, "dropped_t_plus", static_cast<double>(*results.dropped_t_plus),
         std::nullopt, *results.dropped_t_plus);
  }
  if (results.s_plus_fraction) {
    push(rows, "s_plus_fraction", *results.s_plus_fraction);
  }
  if (results.bound) {
    report.verdicts.emplace_back(
        "upper_limit", results.bound->within_upper_limit ? "SATISFIED" : "BREACHED");
    report.verdicts.emplace_back("bound",
                                 select::verdict_name(results.bound->verdict));
  }

  if (results.correlations) {
    const auto& c = *results.correlations;
    push(rows, "mean_R", c.r.mean, c.r.std_error, c.r.count);
    push(rows, "mean_Rp", c.rp.mean, c.rp.std_error, c.rp.count);
    push(rows, "mean_Q", c.q.mean, c.q.std_error, c.q.count);
    push(rows, "mean_Qp", c.qp.mean, c.qp.std_error, c.qp.count);
  }
  if (results.chsh_result) {
    push(rows, "chsh_value", results.chsh_result->value,
         results.chsh_result->std_error);
    report.verdicts.emplace_back(
        "chsh", results.chsh_result->satisfied ? "SATISFIED" : "VIOLATED");
    // the bound's ideal-case analysis assumes full efficiency
    if (results.config) {
      report.verdicts.emplace_back(
          "chsh_regime",
          results.config->eta == 1.0 ? "IDEAL" : "BEYOND_IDEAL_CASE");
    }
  }

  if (results.hv_st) {
    const auto& hv = *results.hv_st;
    push(rows, "hv_st_value", hv.st_value, hv.standard_error, hv.kept);
    push(rows, "hv_rounds", static_cast<double>(hv.rounds), std::nullopt,
         hv.rounds);
    push(rows, "hv_kept", static_cast<double>(hv.kept), std::nullopt, hv.kept);
    push(rows, "hv_defined", static_cast<double>(hv.defined), std::nullopt,
         hv.defined);
    push(rows, "hv_dropped_t_plus", static_cast<double>(hv.dropped_t_plus),
         std::nullopt, hv.dropped_t_plus);
    report.verdicts.emplace_back(
        "hv_floor", hv.st_value >= -3.0 * hv.standard_error
                        ? "NONNEGATIVE_WITHIN_NOISE"
                        : "BELOW_FLOOR");
  }
  if (results.hv_protocol_expectation) {
    push(rows, "hv_protocol_expectation", *results.hv_protocol_expectation);
  }
  if (results.hv_expectation_st) {
    push(rows, "hv_expectation_st", *results.hv_expectation_st);
  }

  if (results.ghz_enumeration) {
    const auto& e = *results.ghz_enumeration;
    push(rows, "assignments_3p", static_cast<double>(e.total), std::nullopt,
         e.total);
    push(rows, "ghz_satisfying_count",
         static_cast<double>(e.satisfying_count), std::nullopt,
         e.satisfying_count);
    push(rows, "ghz_abcd_product_always_one",
         e.abcd_product_always_one ? 1.0 : 0.0);
    push(rows, "ghz_all_plus_count", static_cast<double>(e.all_plus_count),
         std::nullopt, e.all_plus_count);
    report.verdicts.emplace_back(
        "noncontextual_completion",
        e.satisfying_count == 0 ? "IMPOSSIBLE" : "POSSIBLE");
  }
  if (results.st_enumeration) {
    const auto& e = *results.st_enumeration;
    push(rows, "assignments_2p", static_cast<double>(e.total), std::nullopt,
         e.total);
    push(rows, "st_all_equal", e.all_equal ? 1.0 : 0.0);
    push(rows, "st_products_one", e.all_products_one ? 1.0 : 0.0);
    report.verdicts.emplace_back(
        "st_identity",
        e.all_equal && e.all_products_one ? "HOLDS" : "FAILS");
  }

  report.status = rows.empty() || results.insufficient_data
                      ? "insufficient-data"
                      : "ok";
  return report;
}

namespace {

struct GhzTally {
  std::int64_t plus = 0;
  std::int64_t minus = 0;

  GhzTally& operator+=(const GhzTally& other) {
    plus += other.plus;
    minus += other.minus;
    return *this;
  }
};

}  // namespace

ExperimentResults run_ghz_experiment(const engine::ExperimentConfig& config,
                                     int num_threads) {
  engine::validate(config);
  const auto state = qcore::make_ghz();
  const auto observables = qcore::ghz_product_observables();

  ExperimentResults results;
  results.kind = "ghz";
  auto ghz_config = config;
  ghz_config.state = engine::StateKind::kGhz;
  results.config = ghz_config;

  const std::int64_t trials = config.trials_per_setting;
  for (std::size_t o = 0; o < observables.size(); ++o) {
    const auto dist = qcore::joint_outcome_distribution(state, observables[o]);
    const auto tally = engine::parallel_tally<GhzTally>(
        trials, num_threads, [&](std::int64_t begin, std::int64_t end) {
          GhzTally local;
          for (std::int64_t i = begin; i < end; ++i) {
            CounterStream stream(
                config.seed, Stream::kOutcome,
                static_cast<std::uint64_t>(o) * static_cast<std::uint64_t>(trials) +
                    static_cast<std::uint64_t>(i));
            const int idx = dist.sample_index(stream.next_uniform());
            (dist.products[static_cast<std::size_t>(idx)] > 0 ? local.plus
                                                              : local.minus)++;
          }
          return local;
        });

    GhzObservableTally summary;
    summary.label = observables[o].label;
    summary.trials = trials;
    summary.product_plus = tally.plus;
    summary.product_minus = tally.minus;
    summary.exact_expectation = qcore::expectation(state, observables[o]);
    const int eigenvalue = summary.exact_expectation > 0 ? 1 : -1;
    summary.deterministic =
        eigenvalue > 0 ? tally.minus == 0 : tally.plus == 0;
    results.ghz.push_back(std::move(summary));
  }
  return results;
}

ExperimentResults run_singlet_experiment(const engine::ExperimentConfig& config,
                                         const std::string& kind,
                                         int num_threads) {
  auto singlet_config = config;
  singlet_config.state = engine::StateKind::kSinglet;
  const auto tallies = engine::run_experiment(singlet_config, num_threads);

  ExperimentResults results;
  results.kind = kind;
  results.config = singlet_config;

  const auto kept = select::select_T(tallies.t_events);
  results.dropped_t_plus = kept.dropped_plus;
  if (tallies.t_events.total() > 0) {
    results.kept_t_fraction = static_cast<double>(kept.kept_total()) /
                              static_cast<double>(tallies.t_events.total());
  }
  if (tallies.s_events.total() > 0) {
    results.s_plus_fraction = static_cast<double>(tallies.s_events.plus) /
                              static_cast<double>(tallies.s_events.total());
  }

  try {
    const auto st = select::st_estimate(select::estimate_probabilities(tallies));
    results.quantum_st = st;
    results.bound = select::check_bound(st);
  } catch (const select::InsufficientDataError&) {
    results.insufficient_data = true;  // the report still shows what survived
  }

  if (kind == "detector") {
    results.st_closed_form = detector_closed_form(config.eta);
    const double eta2 = config.eta * config.eta;
    results.st_order_reference = -(eta2 * eta2 * eta2 * eta2);
  }
  if (kind == "chsh") {
    results.correlations = correlation_estimates(tallies);
    results.chsh_result = chsh(*results.correlations);
  }
  return results;
}

ExperimentResults run_hv_experiment(const hv::NoncontextualModel& model,
                                    const engine::ExperimentConfig& config,
                                    int num_threads) {
  ExperimentResults results =
      run_singlet_experiment(config, "hv", num_threads);
  results.hv_st = hv::simulate_hv_experiment(model, config, num_threads);
  results.hv_protocol_expectation =
      hv::hv_protocol_expectation(model, config.eta);
  results.hv_expectation_st = hv::hv_expectation_st(model);
  return results;
}

ExperimentResults run_enumeration_experiment() {
  ExperimentResults results;
  results.kind = "enumerate";
  results.ghz_enumeration = hv::ghz_consistency_count();
  results.st_enumeration = hv::st_product_check();
  return results;
}

}  // namespace bellmc::analysis
