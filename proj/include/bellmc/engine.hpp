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

// Trial generation for the two-particle experiment: setting schedule,
// Born-rule runs with per-detector efficiency, and rank pairing of
// independent runs into composite S = RR' and T = QQ' events.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "bellmc/qcore.hpp"
#include "bellmc/rng.hpp"

namespace bellmc::engine {

/// Measurement setting applied to particles 0 and 1.
enum class Setting : int { kR = 0, kRp = 1, kQ = 2, kQp = 3 };

inline constexpr std::array<Setting, 4> kSettingCycle = {
    Setting::kR, Setting::kRp, Setting::kQ, Setting::kQp};

std::array<qcore::Axis, 2> setting_axes(Setting setting);
qcore::PauliObservable setting_observable(Setting setting);
const char* setting_name(Setting setting);

/// One experimental run. Outcomes are in {-1, 0, +1}; 0 means the detector
/// did not fire.
struct RunRecord {
  std::int64_t trial_index = 0;
  Setting setting = Setting::kR;
  int outcome1 = 0;
  int outcome2 = 0;
  int product = 0;

  bool operator==(const RunRecord&) const = default;
};

enum class EventKind { kS, kT };

/// Pairing of two independent runs: S pairs (R, R'), T pairs (Q, Q').
struct CompositeEvent {
  EventKind kind = EventKind::kS;
  RunRecord first;
  RunRecord second;
  int value = 0;  // first.product * second.product

  bool operator==(const CompositeEvent&) const = default;
};

enum class StateKind { kSinglet, kGhz };
enum class SelectionMode { kIdeal, kPostselected };

struct ExperimentConfig {
  std::int64_t trials_per_setting = 100000;
  double eta = 1.0;  // per-detector efficiency
  std::uint64_t seed = 0;
  StateKind state = StateKind::kSinglet;
  SelectionMode selection = SelectionMode::kPostselected;
};

void validate(const ExperimentConfig& config);

/// Per-trial randomness: a pure function of (seed, trial index, purpose tag),
/// so trials can be evaluated in any order or partition.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::int64_t trial_index)
      : seed_(seed), trial_(static_cast<std::uint64_t>(trial_index)) {}

  std::int64_t trial_index() const { return static_cast<std::int64_t>(trial_); }

  CounterStream detection_stream() const {
    return CounterStream(seed_, Stream::kDetection, trial_);
  }
  CounterStream outcome_stream() const {
    return CounterStream(seed_, Stream::kOutcome, trial_);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t trial_;
};

/// Setting under the fixed round-robin schedule R, R', Q, Q'.
inline Setting setting_at(std::int64_t trial_index) {
  return kSettingCycle[static_cast<std::size_t>(trial_index & 3)];
}

std::vector<Setting> schedule(std::int64_t trials_per_setting);

/// Caches the joint and single-particle marginal distributions of one
/// (state, setting) pair for repeated sampling.
class SettingSampler {
 public:
  SettingSampler(const qcore::PureState& state, Setting setting);

  Setting setting() const { return setting_; }
  const qcore::OutcomeDistribution<double>& joint() const { return joint_; }

  /// Detection coins first, then at most one outcome draw; draws for
  /// undetected particles are skipped.
  RunRecord run(double eta, const TrialRng& rng) const;

 private:
  Setting setting_;
  qcore::OutcomeDistribution<double> joint_;
  std::array<qcore::OutcomeDistribution<double>, 2> marginals_;
};

/// One run of `setting` on `state` with per-detector efficiency `eta`.
RunRecord run_trial(const qcore::PureState& state, Setting setting, double eta,
                    const TrialRng& rng);

/// All 4 * trials_per_setting runs of an experiment, in trial order.
std::vector<RunRecord> run_trials(const ExperimentConfig& config,
                                  int num_threads = 1);

/// Rank pairing: i-th R with i-th R' into S_i, i-th Q with i-th Q' into T_i.
/// Returns all S events followed by all T events.
std::vector<CompositeEvent> pair_events(const std::vector<RunRecord>& records);

std::vector<CompositeEvent> events_of_kind(
    const std::vector<CompositeEvent>& events, EventKind kind);

// Integer tallies; merging partitions commutes, so parallel runs are
// bit-identical to serial ones.
struct SettingTally {
  std::int64_t total = 0;
  std::int64_t plus = 0;
  std::int64_t minus = 0;
  std::int64_t zero = 0;
  std::int64_t undetected_any = 0;  // runs with at least one 0 outcome

  void add(const RunRecord& record);
  SettingTally& operator+=(const SettingTally& other);
  bool operator==(const SettingTally&) const = default;
};

struct EventTally {
  std::int64_t plus = 0;
  std::int64_t minus = 0;
  std::int64_t zero = 0;

  std::int64_t total() const { return plus + minus + zero; }
  void add(int value);
  EventTally& operator+=(const EventTally& other);
  bool operator==(const EventTally&) const = default;
};

struct ExperimentTallies {
  std::array<SettingTally, 4> runs;  // indexed by Setting
  EventTally s_events;
  EventTally t_events;

  const SettingTally& of(Setting setting) const {
    return runs[static_cast<std::size_t>(setting)];
  }
  ExperimentTallies& operator+=(const ExperimentTallies& other);
  bool operator==(const ExperimentTallies&) const = default;
};

/// Streaming experiment: every schedule round contributes one run per setting
/// plus one S and one T event. Partition-invariant for a fixed seed.
ExperimentTallies run_experiment(const ExperimentConfig& config,
                                 int num_threads = 1);

ExperimentTallies tally_records(const std::vector<RunRecord>& records,
                                const std::vector<CompositeEvent>& events);

/// Splits [0, n) into contiguous chunks, evaluates them on `num_threads`
/// workers and merges the partial tallies in chunk order.
template <typename Tally, typename Fn>
Tally parallel_tally(std::int64_t n, int num_threads, Fn per_range);

}  // namespace bellmc::engine

#include "bellmc/engine_impl.hpp"
