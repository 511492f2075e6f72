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

#include "bellmc/select.hpp"

#include <cmath>

namespace bellmc::select {

namespace {

// Binomial variance of a proportion estimated from `count` successes in `n`.
double proportion_variance(double p, std::int64_t n) {
  return n > 0 ? p * (1.0 - p) / static_cast<double>(n) : 0.0;
}

}  // namespace

SelectedEnsemble select_T(const std::vector<engine::CompositeEvent>& t_events) {
  SelectedEnsemble ensemble;
  for (const auto& event : t_events) {
    if (event.kind != engine::EventKind::kT) {
      throw std::invalid_argument("kind error: S event passed to the T filter");
    }
    if (event.value > 0) {
      ++ensemble.dropped_T_plus;
    } else {
      ensemble.kept_T.push_back(event);
    }
  }
  return ensemble;
}

SelectedEnsemble select_events(const std::vector<engine::CompositeEvent>& events) {
  SelectedEnsemble ensemble =
      select_T(engine::events_of_kind(events, engine::EventKind::kT));
  ensemble.kept_S = engine::events_of_kind(events, engine::EventKind::kS);
  return ensemble;
}

SelectionTally select_T(const engine::EventTally& t_events) {
  return SelectionTally{t_events.minus, t_events.zero, t_events.plus};
}

namespace {

SelectionProbabilities probabilities_from_counts(
    std::int64_t r_minus, std::int64_t r_total, std::int64_t rp_minus,
    std::int64_t rp_total, std::int64_t t_minus, std::int64_t t_kept) {
  if (r_total == 0 || rp_total == 0) {
    throw InsufficientDataError("no R or R' runs to estimate from");
  }
  if (t_kept == 0) {
    throw InsufficientDataError("no kept T events to estimate from");
  }
  SelectionProbabilities p;
  p.r_minus_count = r_minus;
  p.r_total = r_total;
  p.rp_minus_count = rp_minus;
  p.rp_total = rp_total;
  p.t_minus_count = t_minus;
  p.t_kept_total = t_kept;
  p.p_R_minus = static_cast<double>(r_minus) / static_cast<double>(r_total);
  p.p_Rp_minus = static_cast<double>(rp_minus) / static_cast<double>(rp_total);
  p.p_T_minus = static_cast<double>(t_minus) / static_cast<double>(t_kept);
  return p;
}

}  // namespace

SelectionProbabilities estimate_probabilities(
    const std::vector<engine::RunRecord>& runs,
    const SelectedEnsemble& ensemble) {
  std::int64_t r_minus = 0, r_total = 0, rp_minus = 0, rp_total = 0;
  for (const auto& run : runs) {
    if (run.setting == engine::Setting::kR) {
      ++r_total;
      if (run.product == -1) ++r_minus;
    } else if (run.setting == engine::Setting::kRp) {
      ++rp_total;
      if (run.product == -1) ++rp_minus;
    }
  }
  std::int64_t t_minus = 0;
  for (const auto& event : ensemble.kept_T) {
    if (event.value > 0) {
      throw std::invalid_argument("selected ensemble contains a +1 T event");
    }
    if (event.value == -1) ++t_minus;
  }
  return probabilities_from_counts(
      r_minus, r_total, rp_minus, rp_total, t_minus,
      static_cast<std::int64_t>(ensemble.kept_T.size()));
}

SelectionProbabilities estimate_probabilities(
    const engine::ExperimentTallies& tallies) {
  const auto& r = tallies.of(engine::Setting::kR);
  const auto& rp = tallies.of(engine::Setting::kRp);
  const auto kept = select_T(tallies.t_events);
  return probabilities_from_counts(r.minus, r.total, rp.minus, rp.total,
                                   kept.kept_minus, kept.kept_total());
}

STEstimate st_estimate(const SelectionProbabilities& probabilities) {
  const double p1 = probabilities.p_R_minus;
  const double p2 = probabilities.p_Rp_minus;
  const double p3 = probabilities.p_T_minus;

  STEstimate estimate;
  estimate.p_R_minus = p1;
  estimate.p_Rp_minus = p2;
  estimate.p_T_minus = p3;
  estimate.r_minus_count = probabilities.r_minus_count;
  estimate.r_total = probabilities.r_total;
  estimate.rp_minus_count = probabilities.rp_minus_count;
  estimate.rp_total = probabilities.rp_total;
  estimate.t_minus_count = probabilities.t_minus_count;
  estimate.t_kept_total = probabilities.t_kept_total;

  estimate.st_value = -(p1 * p2 * p3);

  const double v1 = proportion_variance(p1, probabilities.r_total);
  const double v2 = proportion_variance(p2, probabilities.rp_total);
  const double v3 = proportion_variance(p3, probabilities.t_kept_total);
  estimate.standard_error = std::sqrt(
      (p2 * p3) * (p2 * p3) * v1 + (p1 * p3) * (p1 * p3) * v2 +
      (p1 * p2) * (p1 * p2) * v3);
  return estimate;
}

const char* verdict_name(Verdict verdict) {
  switch (verdict) {
    case Verdict::kQuantumViolation: return "QUANTUM_VIOLATION";
    case Verdict::kHvConsistent: return "HV_CONSISTENT";
    default: return "RANGE_BREACH";
  }
}

BoundCheck check_bound(const STEstimate& estimate) {
  BoundCheck check;
  check.threshold = 3.0 * estimate.standard_error;
  check.within_upper_limit = estimate.st_value <= 0.0;

  constexpr double kRangeTolerance = 1e-12;
  if (estimate.st_value > kRangeTolerance ||
      estimate.st_value < -1.0 - kRangeTolerance) {
    check.verdict = Verdict::kRangeBreach;
  } else if (estimate.st_value < -check.threshold) {
    check.verdict = Verdict::kQuantumViolation;
  } else {
    check.verdict = Verdict::kHvConsistent;
  }
  return check;
}

}  // namespace bellmc::select
