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

#include "bellmc/hvcore.hpp"

#include <cmath>
#include <stdexcept>

namespace bellmc::hv {

namespace {

int axis_slot(qcore::Axis axis) {
  switch (axis) {
    case qcore::Axis::kX: return 0;
    case qcore::Axis::kY: return 1;
    default:
      throw std::invalid_argument("assignment grid only covers axes x and y");
  }
}

}  // namespace

int Assignment::value(int particle, qcore::Axis axis) const {
  if (particle < 0 || particle >= num_particles) {
    throw std::invalid_argument("incomplete assignment: particle outside grid");
  }
  const int v = values[static_cast<std::size_t>(particle)]
                      [static_cast<std::size_t>(axis_slot(axis))];
  if (v == 0) {
    throw std::invalid_argument("incomplete assignment: grid entry unset");
  }
  return v;
}

void Assignment::set(int particle, qcore::Axis axis, int v) {
  if (particle < 0 || particle >= 3 || (v != 1 && v != -1)) {
    throw std::invalid_argument("assignment entries must be +-1 on particles 0..2");
  }
  values[static_cast<std::size_t>(particle)]
        [static_cast<std::size_t>(axis_slot(axis))] = v;
}

std::vector<Assignment> enumerate_assignments(
    int num_particles, const std::vector<qcore::Axis>& axes) {
  if (num_particles != 2 && num_particles != 3) {
    throw std::invalid_argument("num_particles must be 2 or 3");
  }
  if (axes.empty()) {
    throw std::invalid_argument("axis list must be non-empty");
  }

  const int cells = num_particles * static_cast<int>(axes.size());
  std::vector<Assignment> out;
  out.reserve(std::size_t{1} << cells);
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << cells); ++code) {
    Assignment a;
    a.num_particles = num_particles;
    int cell = 0;
    for (int p = 0; p < num_particles; ++p) {
      for (const auto axis : axes) {
        // first grid cell is the most significant bit; 0 -> +1
        const int bit = static_cast<int>(code >> (cells - 1 - cell)) & 1;
        a.set(p, axis, bit ? -1 : +1);
        ++cell;
      }
    }
    out.push_back(a);
  }
  return out;
}

int assigned_product(const Assignment& assignment,
                     const qcore::PauliObservable& obs) {
  int product = 1;
  for (const auto& factor : obs.factors) {
    product *= assignment.value(factor.particle, factor.axis);
  }
  return product;
}

int contextual_product(const std::vector<Assignment>& contexts,
                       const std::vector<qcore::PauliObservable>& observables) {
  if (contexts.size() != observables.size()) {
    throw std::invalid_argument("context arity: one assignment per observable");
  }
  int product = 1;
  for (std::size_t i = 0; i < contexts.size(); ++i) {
    product *= assigned_product(contexts[i], observables[i]);
  }
  return product;
}

GhzContradictionResult ghz_consistency_count() {
  const auto observables = qcore::ghz_product_observables();
  GhzContradictionResult result;
  result.abcd_product_always_one = true;

  for (const auto& a : enumerate_assignments(
           3, {qcore::Axis::kX, qcore::Axis::kY})) {
    const int va = assigned_product(a, observables[0]);
    const int vb = assigned_product(a, observables[1]);
    const int vc = assigned_product(a, observables[2]);
    const int vd = assigned_product(a, observables[3]);
    ++result.total;
    if (va == 1 && vb == 1 && vc == 1 && vd == -1) ++result.satisfying_count;
    if (va == 1 && vb == 1 && vc == 1 && vd == 1) ++result.all_plus_count;
    if (va * vb * vc * vd != 1) result.abcd_product_always_one = false;
  }
  return result;
}

int assigned_s_value(const Assignment& assignment) {
  using engine::Setting;
  return assigned_product(assignment, engine::setting_observable(Setting::kR)) *
         assigned_product(assignment, engine::setting_observable(Setting::kRp));
}

int assigned_t_value(const Assignment& assignment) {
  using engine::Setting;
  return assigned_product(assignment, engine::setting_observable(Setting::kQ)) *
         assigned_product(assignment, engine::setting_observable(Setting::kQp));
}

StProductResult st_product_check() {
  StProductResult result;
  result.all_equal = true;
  result.all_products_one = true;
  for (const auto& a : enumerate_assignments(
           2, {qcore::Axis::kX, qcore::Axis::kY})) {
    const int s = assigned_s_value(a);
    const int t = assigned_t_value(a);
    ++result.total;
    if (s != t) result.all_equal = false;
    if (s * t != 1) result.all_products_one = false;
  }
  return result;
}

void validate(const NoncontextualModel& model) {
  if (model.support.empty()) {
    throw std::invalid_argument("model support must be non-empty");
  }
  double total = 0.0;
  for (const auto& [assignment, weight] : model.support) {
    if (!(weight >= 0.0)) {
      throw std::invalid_argument("model weights must be non-negative");
    }
    if (assignment.num_particles != 2) {
      throw std::invalid_argument("model assignments must cover 2 particles");
    }
    total += weight;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("model weights must sum to 1");
  }
  if (model.detection_probability < 0.0 || model.detection_probability > 1.0) {
    throw std::invalid_argument("detection_probability must lie in [0, 1]");
  }
}

NoncontextualModel uniform_two_particle_model() {
  NoncontextualModel model;
  const auto assignments =
      enumerate_assignments(2, {qcore::Axis::kX, qcore::Axis::kY});
  model.support.reserve(assignments.size());
  for (const auto& a : assignments) {
    model.support.emplace_back(a, 1.0 / static_cast<double>(assignments.size()));
  }
  return model;
}

NoncontextualModel point_model(const Assignment& assignment,
                               double detection_probability) {
  NoncontextualModel model;
  model.support.emplace_back(assignment, 1.0);
  model.detection_probability = detection_probability;
  return model;
}

double hv_expectation_st(const NoncontextualModel& model) {
  validate(model);
  double plus_plus = 0.0;
  double minus_minus = 0.0;
  for (const auto& [assignment, weight] : model.support) {
    const int s = assigned_s_value(assignment);
    const int t = assigned_t_value(assignment);
    if (s == 1 && t == 1) plus_plus += weight;
    if (s == -1 && t == -1) minus_minus += weight;
  }
  return model.detection_probability * (plus_plus + minus_minus);
}

double hv_protocol_expectation(const NoncontextualModel& model, double eta) {
  validate(model);
  if (!(eta > 0.0) || eta > 1.0) {
    throw std::invalid_argument("eta must lie in (0, 1]");
  }
  double t_plus = 0.0;
  double t_minus = 0.0;
  for (const auto& [assignment, weight] : model.support) {
    (assigned_t_value(assignment) == 1 ? t_plus : t_minus) += weight;
  }
  const double eta4 = eta * eta * eta * eta;
  // A round is dropped when its T event is fully detected with value +1;
  // a kept round contributes +1 exactly when T = -1 and S is also detected.
  const double kept = 1.0 - eta4 * t_plus;
  return kept > 0.0 ? eta4 * t_minus * eta4 / kept : 0.0;
}

namespace {

struct HvTallies {
  std::int64_t kept = 0;
  std::int64_t defined = 0;
  std::int64_t dropped_t_plus = 0;
  std::int64_t st_sum = 0;

  HvTallies& operator+=(const HvTallies& other) {
    kept += other.kept;
    defined += other.defined;
    dropped_t_plus += other.dropped_t_plus;
    st_sum += other.st_sum;
    return *this;
  }
};

}  // namespace

HvStEstimate simulate_hv_experiment(const NoncontextualModel& model,
                                    const engine::ExperimentConfig& config,
                                    int num_threads) {
  validate(model);
  engine::validate(config);

  // Cumulative weights for the per-round assignment draw.
  std::vector<double> cumulative;
  cumulative.reserve(model.support.size());
  double acc = 0.0;
  for (const auto& [assignment, weight] : model.support) {
    acc += weight;
    cumulative.push_back(acc);
  }

  auto draw_assignment = [&](double u) -> const Assignment& {
    for (std::size_t i = 0; i < cumulative.size(); ++i) {
      if (u < cumulative[i]) return model.support[i].first;
    }
    return model.support.back().first;
  };

  const auto tallies = engine::parallel_tally<HvTallies>(
      config.trials_per_setting, num_threads,
      [&](std::int64_t begin, std::int64_t end) {
        HvTallies local;
        for (std::int64_t round = begin; round < end; ++round) {
          CounterStream assignment_stream(
              config.seed, Stream::kAssignment,
              static_cast<std::uint64_t>(round));
          const Assignment& lambda =
              draw_assignment(assignment_stream.next_uniform());

          std::array<int, 4> products{};
          for (std::size_t s = 0; s < 4; ++s) {
            const std::int64_t trial = 4 * round + static_cast<std::int64_t>(s);
            const auto axes =
                engine::setting_axes(engine::kSettingCycle[s]);
            auto detection =
                engine::TrialRng(config.seed, trial).detection_stream();
            const bool detected1 = detection.next_uniform() < config.eta;
            const bool detected2 = detection.next_uniform() < config.eta;
            const int o1 = detected1 ? lambda.value(0, axes[0]) : 0;
            const int o2 = detected2 ? lambda.value(1, axes[1]) : 0;
            products[s] = o1 * o2;
          }

          const int s_value = products[0] * products[1];
          const int t_value = products[2] * products[3];
          if (t_value > 0) {
            ++local.dropped_t_plus;
            continue;
          }
          ++local.kept;
          const int st = s_value * t_value;
          if (st != 0) ++local.defined;
          local.st_sum += st;
        }
        return local;
      });

  HvStEstimate estimate;
  estimate.rounds = config.trials_per_setting;
  estimate.kept = tallies.kept;
  estimate.defined = tallies.defined;
  estimate.dropped_t_plus = tallies.dropped_t_plus;
  if (tallies.kept > 0) {
    const double n = static_cast<double>(tallies.kept);
    const double mean = static_cast<double>(tallies.st_sum) / n;
    // S*T is +-1 on defined rounds and 0 otherwise, so sum of squares is
    // just the defined count.
    const double variance =
        std::max(0.0, static_cast<double>(tallies.defined) / n - mean * mean);
    estimate.st_value = mean;
    estimate.standard_error = std::sqrt(variance / n);
  }
  return estimate;
}

}  // namespace bellmc::hv
