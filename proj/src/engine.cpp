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

#include "bellmc/engine.hpp"

#include <stdexcept>

namespace bellmc::engine {

namespace {

qcore::PureState state_for(StateKind kind) {
  return kind == StateKind::kSinglet ? qcore::make_singlet()
                                     : qcore::make_ghz();
}

}  // namespace

std::array<qcore::Axis, 2> setting_axes(Setting setting) {
  using enum qcore::Axis;
  switch (setting) {
    case Setting::kR: return {kX, kX};
    case Setting::kRp: return {kY, kY};
    case Setting::kQ: return {kX, kY};
    default: return {kY, kX};
  }
}

qcore::PauliObservable setting_observable(Setting setting) {
  const auto axes = setting_axes(setting);
  return {{{0, axes[0]}, {1, axes[1]}}, setting_name(setting)};
}

const char* setting_name(Setting setting) {
  switch (setting) {
    case Setting::kR: return "R";
    case Setting::kRp: return "R'";
    case Setting::kQ: return "Q";
    default: return "Q'";
  }
}

void validate(const ExperimentConfig& config) {
  if (config.trials_per_setting < 1) {
    throw std::invalid_argument("trials_per_setting must be >= 1");
  }
  if (!(config.eta > 0.0) || config.eta > 1.0) {
    throw std::invalid_argument("eta must lie in (0, 1]");
  }
}

std::vector<Setting> schedule(std::int64_t trials_per_setting) {
  if (trials_per_setting < 1) {
    throw std::invalid_argument("trials_per_setting must be >= 1");
  }
  std::vector<Setting> settings;
  settings.reserve(static_cast<std::size_t>(4 * trials_per_setting));
  for (std::int64_t i = 0; i < 4 * trials_per_setting; ++i) {
    settings.push_back(setting_at(i));
  }
  return settings;
}

SettingSampler::SettingSampler(const qcore::PureState& state, Setting setting)
    : setting_(setting) {
  const auto axes = setting_axes(setting);
  joint_ = qcore::joint_outcome_distribution(state, setting_observable(setting));
  for (int p = 0; p < 2; ++p) {
    marginals_[static_cast<std::size_t>(p)] = qcore::joint_outcome_distribution(
        state, qcore::PauliObservable{
                   {{p, axes[static_cast<std::size_t>(p)]}}, ""});
  }
}

RunRecord SettingSampler::run(double eta, const TrialRng& rng) const {
  if (!(eta > 0.0) || eta > 1.0) {
    throw std::invalid_argument("eta must lie in (0, 1]");
  }

  auto detection = rng.detection_stream();
  const bool detected1 = detection.next_uniform() < eta;
  const bool detected2 = detection.next_uniform() < eta;

  int outcome1 = 0;
  int outcome2 = 0;
  if (detected1 && detected2) {
    auto outcomes = rng.outcome_stream();
    const int idx = joint_.sample_index(outcomes.next_uniform());
    outcome1 = joint_.outcomes[static_cast<std::size_t>(idx)][0];
    outcome2 = joint_.outcomes[static_cast<std::size_t>(idx)][1];
  } else if (detected1 || detected2) {
    const auto& marginal = marginals_[detected1 ? 0 : 1];
    auto outcomes = rng.outcome_stream();
    const int idx = marginal.sample_index(outcomes.next_uniform());
    (detected1 ? outcome1 : outcome2) =
        marginal.outcomes[static_cast<std::size_t>(idx)][0];
  }

  return RunRecord{rng.trial_index(), setting_, outcome1, outcome2,
                   outcome1 * outcome2};
}

RunRecord run_trial(const qcore::PureState& state, Setting setting, double eta,
                    const TrialRng& rng) {
  return SettingSampler(state, setting).run(eta, rng);
}

namespace {

struct RecordChunk {
  std::vector<RunRecord> records;

  RecordChunk& operator+=(RecordChunk&& other) {
    records.insert(records.end(), other.records.begin(), other.records.end());
    return *this;
  }
  RecordChunk& operator+=(const RecordChunk& other) {
    records.insert(records.end(), other.records.begin(), other.records.end());
    return *this;
  }
};

std::array<SettingSampler, 4> make_samplers(const ExperimentConfig& config) {
  const auto state = state_for(config.state);
  return {SettingSampler(state, Setting::kR), SettingSampler(state, Setting::kRp),
          SettingSampler(state, Setting::kQ), SettingSampler(state, Setting::kQp)};
}

}  // namespace

std::vector<RunRecord> run_trials(const ExperimentConfig& config,
                                  int num_threads) {
  validate(config);
  const auto samplers = make_samplers(config);
  const std::int64_t total = 4 * config.trials_per_setting;

  auto chunk = parallel_tally<RecordChunk>(
      total, num_threads, [&](std::int64_t begin, std::int64_t end) {
        RecordChunk out;
        out.records.reserve(static_cast<std::size_t>(end - begin));
        for (std::int64_t i = begin; i < end; ++i) {
          const auto setting = setting_at(i);
          out.records.push_back(samplers[static_cast<std::size_t>(setting)].run(
              config.eta, TrialRng(config.seed, i)));
        }
        return out;
      });
  return std::move(chunk.records);
}

std::vector<CompositeEvent> pair_events(const std::vector<RunRecord>& records) {
  std::array<std::vector<const RunRecord*>, 4> by_setting;
  for (const auto& record : records) {
    by_setting[static_cast<std::size_t>(record.setting)].push_back(&record);
  }
  const std::size_t n = by_setting[0].size();
  for (const auto& list : by_setting) {
    if (list.size() != n) {
      throw std::invalid_argument("pairing error: unbalanced setting counts");
    }
  }

  std::vector<CompositeEvent> events;
  events.reserve(2 * n);
  auto emit = [&](EventKind kind, const RunRecord& first,
                  const RunRecord& second) {
    events.push_back(CompositeEvent{kind, first, second,
                                    first.product * second.product});
  };
  for (std::size_t i = 0; i < n; ++i) {
    emit(EventKind::kS, *by_setting[static_cast<std::size_t>(Setting::kR)][i],
         *by_setting[static_cast<std::size_t>(Setting::kRp)][i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    emit(EventKind::kT, *by_setting[static_cast<std::size_t>(Setting::kQ)][i],
         *by_setting[static_cast<std::size_t>(Setting::kQp)][i]);
  }
  return events;
}

std::vector<CompositeEvent> events_of_kind(
    const std::vector<CompositeEvent>& events, EventKind kind) {
  std::vector<CompositeEvent> out;
  for (const auto& event : events) {
    if (event.kind == kind) out.push_back(event);
  }
  return out;
}

void SettingTally::add(const RunRecord& record) {
  ++total;
  if (record.product > 0) {
    ++plus;
  } else if (record.product < 0) {
    ++minus;
  } else {
    ++zero;
  }
  if (record.outcome1 == 0 || record.outcome2 == 0) ++undetected_any;
}

SettingTally& SettingTally::operator+=(const SettingTally& other) {
  total += other.total;
  plus += other.plus;
  minus += other.minus;
  zero += other.zero;
  undetected_any += other.undetected_any;
  return *this;
}

void EventTally::add(int value) {
  if (value > 0) {
    ++plus;
  } else if (value < 0) {
    ++minus;
  } else {
    ++zero;
  }
}

EventTally& EventTally::operator+=(const EventTally& other) {
  plus += other.plus;
  minus += other.minus;
  zero += other.zero;
  return *this;
}

ExperimentTallies& ExperimentTallies::operator+=(const ExperimentTallies& other) {
  for (std::size_t i = 0; i < runs.size(); ++i) runs[i] += other.runs[i];
  s_events += other.s_events;
  t_events += other.t_events;
  return *this;
}

ExperimentTallies run_experiment(const ExperimentConfig& config,
                                 int num_threads) {
  validate(config);
  const auto samplers = make_samplers(config);

  return parallel_tally<ExperimentTallies>(
      config.trials_per_setting, num_threads,
      [&](std::int64_t begin, std::int64_t end) {
        ExperimentTallies tallies;
        std::array<RunRecord, 4> round{};
        for (std::int64_t r = begin; r < end; ++r) {
          for (std::size_t s = 0; s < 4; ++s) {
            const std::int64_t trial = 4 * r + static_cast<std::int64_t>(s);
            round[s] = samplers[s].run(config.eta, TrialRng(config.seed, trial));
            tallies.runs[s].add(round[s]);
          }
          tallies.s_events.add(round[0].product * round[1].product);
          tallies.t_events.add(round[2].product * round[3].product);
        }
        return tallies;
      });
}

ExperimentTallies tally_records(const std::vector<RunRecord>& records,
                                const std::vector<CompositeEvent>& events) {
  ExperimentTallies tallies;
  for (const auto& record : records) {
    tallies.runs[static_cast<std::size_t>(record.setting)].add(record);
  }
  for (const auto& event : events) {
    (event.kind == EventKind::kS ? tallies.s_events : tallies.t_events)
        .add(event.value);
  }
  return tallies;
}

}  // namespace bellmc::engine
