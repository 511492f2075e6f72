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

// Non-contextual hidden-variable models over the (particle, axis) value grid:
// exhaustive assignment enumeration, the algebraic contradictions they run
// into for the GHZ and singlet experiments, and a Monte-Carlo simulation of
// such a model driven through the same trial pipeline as the quantum engine.

#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "bellmc/engine.hpp"
#include "bellmc/qcore.hpp"

namespace bellmc::hv {

/// A value map over the (particle, axis in {x, y}) grid; entries are +-1,
/// 0 marks an unset cell.
struct Assignment {
  int num_particles = 0;
  std::array<std::array<int, 2>, 3> values{};  // [particle][axis], 0 = unset

  int value(int particle, qcore::Axis axis) const;
  void set(int particle, qcore::Axis axis, int v);

  bool operator==(const Assignment&) const = default;
};

/// All 2^(num_particles * |axes|) assignments, lexicographic over the grid
/// (+1 sorts before -1; the first result is all +1).
std::vector<Assignment> enumerate_assignments(
    int num_particles, const std::vector<qcore::Axis>& axes);

/// Product of the assigned values over the factors of `obs`.
int assigned_product(const Assignment& assignment,
                     const qcore::PauliObservable& obs);

/// Product over (context_i, obs_i) pairs: the contextual-local value of a
/// compatible-observable product, before any non-contextual reduction.
int contextual_product(const std::vector<Assignment>& contexts,
                       const std::vector<qcore::PauliObservable>& observables);

struct GhzContradictionResult {
  std::int64_t total = 0;            // assignments examined (64)
  std::int64_t satisfying_count = 0; // assignments with A=B=C=+1 and D=-1
  bool abcd_product_always_one = false;
  std::int64_t all_plus_count = 0;   // assignments with A=B=C=D=+1
};

/// Exhausts the 3-particle x {x,y} grid against the four GHZ observables.
GhzContradictionResult ghz_consistency_count();

struct StProductResult {
  std::int64_t total = 0;  // assignments examined (16)
  bool all_equal = false;        // v(S) == v(T) everywhere
  bool all_products_one = false; // v(S) * v(T) == +1 everywhere
};

/// Exhausts the 2-particle grid against the composite S = RR' and T = QQ'.
StProductResult st_product_check();

int assigned_s_value(const Assignment& assignment);
int assigned_t_value(const Assignment& assignment);

/// Weighted mixture of assignments; `detection_probability` is the chance
/// that a composite evaluation is fully detected, independent of the
/// assignment.
struct NoncontextualModel {
  std::vector<std::pair<Assignment, double>> support;
  double detection_probability = 1.0;
};

void validate(const NoncontextualModel& model);

/// Uniform mixture over all 16 two-particle assignments.
NoncontextualModel uniform_two_particle_model();

/// Point mass on one assignment.
NoncontextualModel point_model(const Assignment& assignment,
                               double detection_probability = 1.0);

/// Closed-form model expectation of the composite product S*T counting only
/// fully detected events: p(v(S)=+1, v(T)=+1) + p(v(S)=-1, v(T)=-1), scaled
/// by the detection mass. Non-negative for every valid model.
double hv_expectation_st(const NoncontextualModel& model);

/// Exact limit of the simulate_hv_experiment estimator for this model at
/// per-detector efficiency eta. Non-negative for every valid model.
double hv_protocol_expectation(const NoncontextualModel& model, double eta);

struct HvStEstimate {
  double st_value = 0.0;
  double standard_error = 0.0;
  std::int64_t rounds = 0;        // schedule rounds simulated
  std::int64_t kept = 0;          // rounds surviving the T filter
  std::int64_t defined = 0;       // kept rounds with both S and T nonzero
  std::int64_t dropped_t_plus = 0;
};

/// Drives the model through the same schedule, detection, pairing and
/// postselection protocol as the quantum engine. One fresh assignment is
/// drawn per schedule round and shared by its four runs, so S and T are
/// evaluated at a single assignment; the estimate is the mean of S*T over
/// kept rounds (zeros included in the denominator, 0 when nothing is kept).
HvStEstimate simulate_hv_experiment(const NoncontextualModel& model,
                                    const engine::ExperimentConfig& config,
                                    int num_threads = 1);

}  // namespace bellmc::hv
