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

// Postselection of composite T events and the selected-ensemble probability
// estimators: p(R=-1), p(R'=-1), p(T=-1) and the composite product value
// st = -p(R=-1) p(R'=-1) p(T=-1), with first-order error propagation.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bellmc/engine.hpp"

namespace bellmc::select {

class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// T events surviving the qq' filter (values -1 and 0 kept, +1 dropped);
/// S events pass through unfiltered.
struct SelectedEnsemble {
  std::vector<engine::CompositeEvent> kept_S;
  std::vector<engine::CompositeEvent> kept_T;
  std::int64_t dropped_T_plus = 0;
};

/// Filters T-kind events; throws on an S-kind input.
SelectedEnsemble select_T(const std::vector<engine::CompositeEvent>& t_events);

/// Filter + pass-through over a full paired event list.
SelectedEnsemble select_events(const std::vector<engine::CompositeEvent>& events);

/// Tally-level filter for streamed runs.
struct SelectionTally {
  std::int64_t kept_minus = 0;
  std::int64_t kept_zero = 0;
  std::int64_t dropped_plus = 0;

  std::int64_t kept_total() const { return kept_minus + kept_zero; }
};

SelectionTally select_T(const engine::EventTally& t_events);

/// The three selected-ensemble probabilities with their backing counts.
/// p_R_minus and p_Rp_minus are normalized over all runs of their setting
/// (non-detections included); p_T_minus over the kept T ensemble (zeros
/// included in the denominator).
struct SelectionProbabilities {
  double p_R_minus = 0.0;
  double p_Rp_minus = 0.0;
  double p_T_minus = 0.0;
  std::int64_t r_minus_count = 0;
  std::int64_t r_total = 0;
  std::int64_t rp_minus_count = 0;
  std::int64_t rp_total = 0;
  std::int64_t t_minus_count = 0;
  std::int64_t t_kept_total = 0;
};

SelectionProbabilities estimate_probabilities(
    const std::vector<engine::RunRecord>& runs,
    const SelectedEnsemble& ensemble);

SelectionProbabilities estimate_probabilities(
    const engine::ExperimentTallies& tallies);

struct STEstimate {
  double p_R_minus = 0.0;
  double p_Rp_minus = 0.0;
  double p_T_minus = 0.0;
  double st_value = 0.0;        // -(p_R_minus * p_Rp_minus * p_T_minus)
  double standard_error = 0.0;  // delta-method propagation
  std::int64_t r_minus_count = 0;
  std::int64_t r_total = 0;
  std::int64_t rp_minus_count = 0;
  std::int64_t rp_total = 0;
  std::int64_t t_minus_count = 0;
  std::int64_t t_kept_total = 0;
};

STEstimate st_estimate(const SelectionProbabilities& probabilities);

enum class Verdict {
  kQuantumViolation,  // st_value negative beyond 3 standard errors
  kHvConsistent,      // st_value within noise of the non-negative floor
  kRangeBreach,       // st_value outside [-1, 0]
};

const char* verdict_name(Verdict verdict);

struct BoundCheck {
  Verdict verdict = Verdict::kHvConsistent;
  bool within_upper_limit = false;  // st_value <= 0
  double threshold = 0.0;           // 3 * standard_error
};

BoundCheck check_bound(const STEstimate& estimate);

}  // namespace bellmc::select
