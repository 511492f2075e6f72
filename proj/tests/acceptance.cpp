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

// Acceptance suite. Each criterion prints one PASS/FAIL line; the exit code
// is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "bellmc/analysis.hpp"
#include "bellmc/hvcore.hpp"
#include "bellmc/report_io.hpp"
#include "bellmc/select.hpp"

using namespace bellmc;

namespace {

struct Failure {
  std::string reason;
};

void require(bool condition, const std::string& reason) {
  if (!condition) throw Failure{reason};
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

engine::ExperimentConfig config_with(std::int64_t trials, double eta,
                                     std::uint64_t seed) {
  engine::ExperimentConfig config;
  config.trials_per_setting = trials;
  config.eta = eta;
  config.seed = seed;
  return config;
}

hv::NoncontextualModel random_model(std::uint64_t seed) {
  CounterStream stream(seed, Stream::kAssignment, 0);
  hv::NoncontextualModel model;
  double total = 0.0;
  for (const auto& a :
       hv::enumerate_assignments(2, {qcore::Axis::kX, qcore::Axis::kY})) {
    const double raw = stream.next_uniform();
    const double weight = raw < 0.4 ? 0.0 : raw;
    model.support.emplace_back(a, weight);
    total += weight;
  }
  if (total == 0.0) {
    model.support[0].second = 1.0;
    total = 1.0;
  }
  for (auto& [assignment, weight] : model.support) weight /= total;
  model.detection_probability = stream.next_uniform();
  return model;
}

// 1. Sampled three-particle products are deterministic: +1 for A, B, C and
//    -1 for D on every one of 10^5 trials per observable. Runtime < 5 s.
void criterion_ghz_determinism() {
  const auto start = std::chrono::steady_clock::now();
  const auto results =
      analysis::run_ghz_experiment(config_with(100000, 1.0, 42), 2);
  const int expected[] = {+1, +1, +1, -1};
  for (std::size_t i = 0; i < results.ghz.size(); ++i) {
    const auto& obs = results.ghz[i];
    require(obs.trials == 100000, obs.label + ": wrong trial count");
    const std::int64_t wanted =
        expected[i] > 0 ? obs.product_plus : obs.product_minus;
    require(wanted == obs.trials,
            obs.label + ": a sampled product deviated from the eigenvalue");
    require(obs.deterministic, obs.label + ": determinism flag not set");
  }
  const double elapsed = seconds_since(start);
  require(elapsed < 5.0, "runtime " + std::to_string(elapsed) + " s >= 5 s");
  std::printf("       4 x 100000 sampled products exact, %.2f s\n", elapsed);
}

// 2. Exhaustive enumeration: no assignment satisfies {A=B=C=+1, D=-1} among
//    the 64, their ABCD product is always +1, and all 16 two-particle
//    assignments give v(S)=v(T) with product +1. Runtime < 1 s.
void criterion_enumeration() {
  const auto start = std::chrono::steady_clock::now();
  const auto ghz = hv::ghz_consistency_count();
  require(ghz.total == 64, "expected 64 assignments");
  require(ghz.satisfying_count == 0,
          "found assignments reproducing the quantum GHZ values");
  require(ghz.abcd_product_always_one, "ABCD product deviated from +1");
  const auto st = hv::st_product_check();
  require(st.total == 16, "expected 16 assignments");
  require(st.all_equal, "found an assignment with v(S) != v(T)");
  require(st.all_products_one, "found an assignment with v(S)v(T) != 1");
  const double elapsed = seconds_since(start);
  require(elapsed < 1.0, "runtime " + std::to_string(elapsed) + " s >= 1 s");
  std::printf("       0 of 64 satisfy {A=B=C=+1, D=-1}; 16 of 16 give v(S)=v(T)\n");
}

// 3. Ideal postselected singlet at eta = 1: every R and R' product is -1,
//    st is exactly -1 for any trial count >= 1, and the kept-T fraction sits
//    within 3 sigma of 1/2 over 10^5 T events.
void criterion_ideal_postselection() {
  const auto tallies = engine::run_experiment(config_with(100000, 1.0, 8), 2);
  const auto& r = tallies.of(engine::Setting::kR);
  const auto& rp = tallies.of(engine::Setting::kRp);
  require(r.minus == r.total && r.total == 100000,
          "an R run deviated from product -1");
  require(rp.minus == rp.total, "an R' run deviated from product -1");

  const auto kept = select::select_T(tallies.t_events);
  const double fraction = static_cast<double>(kept.kept_total()) / 100000.0;
  const double bound = 3.0 * std::sqrt(0.25 / 100000.0);
  require(std::abs(fraction - 0.5) < bound,
          "kept-T fraction " + std::to_string(fraction) + " outside 3 sigma");

  int evaluated = 0;
  for (const std::int64_t trials : {1, 2, 3, 7, 100, 1000}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto small = engine::run_experiment(config_with(trials, 1.0, seed));
      if (select::select_T(small.t_events).kept_total() == 0) continue;
      const auto estimate =
          select::st_estimate(select::estimate_probabilities(small));
      require(estimate.st_value == -1.0,
              "st at " + std::to_string(trials) + " trials was not exactly -1");
      ++evaluated;
    }
  }
  require(evaluated > 30, "too few non-empty selections to conclude");
  std::printf("       st = -1 exactly down to single-trial runs; kept fraction %.4f\n",
              fraction);
}

// 4. CHSH boundary from 10^5 trials per setting: means within 3 se of
//    (-1, -1, 0, 0), the CHSH value within 3 sigma of 2 and flagged
//    satisfied, while the same run data yields st = -1.
void criterion_chsh_boundary() {
  const auto results =
      analysis::run_singlet_experiment(config_with(100000, 1.0, 15), "chsh", 2);
  require(results.correlations.has_value(), "missing correlation estimates");
  const auto& c = *results.correlations;
  require(c.r.mean == -1.0 && c.rp.mean == -1.0,
          "R or R' mean deviated from -1 at full efficiency");
  require(std::abs(c.q.mean) <= 3.0 * c.q.std_error,
          "mean_Q outside 3 se of 0");
  require(std::abs(c.qp.mean) <= 3.0 * c.qp.std_error,
          "mean_Q' outside 3 se of 0");

  require(results.chsh_result.has_value(), "missing CHSH result");
  const auto& chsh = *results.chsh_result;
  require(std::abs(chsh.value - 2.0) <= 3.0 * chsh.std_error,
          "CHSH value " + std::to_string(chsh.value) + " outside 3 sigma of 2");
  require(chsh.satisfied, "CHSH flagged as violated");

  require(results.quantum_st.has_value(), "missing st estimate");
  require(results.quantum_st->st_value == -1.0,
          "same-run selected-event value was not -1");
  std::printf("       CHSH = %.4f +- %.4f (satisfied) with st = -1 from the same runs\n",
              chsh.value, chsh.std_error);
}

// 5. Detector-limited run at eta = 0.5 with 10^7 trials per setting:
//    st within 3 propagated se of -eta^4 (eta^4/2) / (1 - eta^4/2)
//    = -2.0161e-3, strictly negative beyond 3 se, and within a factor of 10
//    of the -(eta^2)^4 order estimate. Runtime < 60 s.
void criterion_detector_limited() {
  const auto start = std::chrono::steady_clock::now();
  const double eta = 0.5;
  const auto tallies =
      engine::run_experiment(config_with(10000000, eta, 7), 2);
  const auto estimate =
      select::st_estimate(select::estimate_probabilities(tallies));
  const double elapsed = seconds_since(start);

  const double closed_form = -0.0020161290322580645;
  require(std::abs(analysis::detector_closed_form(eta) - closed_form) < 1e-18,
          "closed form drifted from the frozen value");

  const double p_r_expected = eta * eta;
  const double se_r = std::sqrt(p_r_expected * (1.0 - p_r_expected) / 1e7);
  require(std::abs(estimate.p_R_minus - p_r_expected) <= 3.0 * se_r,
          "p_R_minus outside 3 sigma of eta^2");
  const double p_t_expected = 0.03225806451612903;
  const double se_t = std::sqrt(p_t_expected * (1.0 - p_t_expected) /
                                static_cast<double>(estimate.t_kept_total));
  require(std::abs(estimate.p_T_minus - p_t_expected) <= 3.0 * se_t,
          "p_T_minus outside 3 sigma of the enumeration value");

  require(std::abs(estimate.st_value - closed_form) <=
              3.0 * estimate.standard_error,
          "st " + std::to_string(estimate.st_value) + " outside 3 se of closed form");
  require(estimate.st_value < -3.0 * estimate.standard_error,
          "st not negative beyond 3 se");

  const double order_reference = -std::pow(eta * eta, 4);
  const double ratio = estimate.st_value / order_reference;
  require(std::abs(std::log10(ratio)) <= 1.0,
          "st not within one order of magnitude of -(eta^2)^4");
  require(elapsed < 60.0, "runtime " + std::to_string(elapsed) + " s >= 60 s");
  std::printf("       st = %.6e +- %.1e vs closed form %.6e, %.1f s\n",
              estimate.st_value, estimate.standard_error, closed_form, elapsed);
}

// 6. Hidden-variable positivity: the model expectation is >= 0 for 1000
//    random models, and the simulated estimator never drops below -3 sigma
//    across 20 seeded repetitions at eta in {0.5, 1.0}.
void criterion_hv_positivity() {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto model = random_model(seed);
    const double value = hv::hv_expectation_st(model);
    require(value >= 0.0,
            "model expectation negative at seed " + std::to_string(seed));
  }

  for (const double eta : {0.5, 1.0}) {
    for (std::uint64_t rep = 0; rep < 20; ++rep) {
      auto model =
          rep % 2 == 0 ? hv::uniform_two_particle_model() : random_model(5000 + rep);
      model.detection_probability = 1.0;
      const auto estimate = hv::simulate_hv_experiment(
          model, config_with(20000, eta, rep), 2);
      require(estimate.st_value >= -3.0 * estimate.standard_error,
              "estimate below its noise floor at eta " + std::to_string(eta) +
                  ", rep " + std::to_string(rep));
    }
  }
  std::printf("       1000 model expectations >= 0; 40 simulated runs above -3 sigma\n");
}

// 7. Identical seeds produce byte-identical reports across 1 and N workers.
void criterion_reproducibility() {
  const auto config = config_with(100000, 0.5, 21);
  std::vector<std::string> reports;
  for (const int threads : {1, 2, 3}) {
    reports.push_back(report_io::to_json(analysis::summarize(
        analysis::run_singlet_experiment(config, "detector", threads))));
  }
  require(reports[0] == reports[1] && reports[0] == reports[2],
          "detector reports differ across worker counts");

  std::vector<std::string> hv_reports;
  for (const int threads : {1, 4}) {
    hv_reports.push_back(report_io::to_json(analysis::summarize(
        analysis::run_hv_experiment(hv::uniform_two_particle_model(),
                                    config_with(20000, 0.5, 22), threads))));
  }
  require(hv_reports[0] == hv_reports[1],
          "hv reports differ across worker counts");

  std::vector<std::string> ghz_reports;
  for (const int threads : {1, 3}) {
    ghz_reports.push_back(report_io::to_json(analysis::summarize(
        analysis::run_ghz_experiment(config_with(20000, 1.0, 23), threads))));
  }
  require(ghz_reports[0] == ghz_reports[1],
          "ghz reports differ across worker counts");
  std::printf("       detector/hv/ghz reports byte-identical for 1..4 workers\n");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void()>>> criteria = {
      {"1. GHZ determinism (sampled products exact)", criterion_ghz_determinism},
      {"2. exhaustive hidden-variable contradiction", criterion_enumeration},
      {"3. ideal postselected singlet (st = -1 exactly)",
       criterion_ideal_postselection},
      {"4. CHSH boundary satisfied alongside the contradiction",
       criterion_chsh_boundary},
      {"5. detector-limited st matches the closed form", criterion_detector_limited},
      {"6. hidden-variable positivity floor", criterion_hv_positivity},
      {"7. byte-identical reports across worker counts",
       criterion_reproducibility},
  };

  int failures = 0;
  for (const auto& [name, body] : criteria) {
    try {
      body();
      std::printf("[PASS] %s\n", name.c_str());
    } catch (const Failure& failure) {
      ++failures;
      std::printf("[FAIL] %s: %s\n", name.c_str(), failure.reason.c_str());
    } catch (const std::exception& error) {
      ++failures;
      std::printf("[FAIL] %s: unexpected error: %s\n", name.c_str(),
                  error.what());
    }
  }
  return failures;
}
