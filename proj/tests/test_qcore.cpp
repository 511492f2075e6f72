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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>

#include "bellmc/qcore.hpp"
#include "test_oracles.hpp"

using namespace bellmc;
using qcore::Axis;
using qcore::PauliObservable;

namespace {

constexpr double kTol = 1e-12;
constexpr double kInvSqrt2 = 0.70710678118654752;

PauliObservable obs2(Axis a0, Axis a1) {
  return PauliObservable{{{0, a0}, {1, a1}}, ""};
}

std::map<int, int> axes_of(const PauliObservable& obs) {
  std::map<int, int> axes;
  for (const auto& f : obs.factors) axes[f.particle] = static_cast<int>(f.axis);
  return axes;
}

// Compares a library distribution against the raw projector oracle.
void check_against_oracle(const qcore::PureState& state,
                          const PauliObservable& obs,
                          const oracle::Vector& psi) {
  const auto dist = qcore::joint_outcome_distribution(state, obs);
  const auto axes = axes_of(obs);
  for (std::size_t i = 0; i < dist.outcomes.size(); ++i) {
    std::map<int, int> outcomes;
    for (std::size_t j = 0; j < obs.factors.size(); ++j) {
      outcomes[obs.factors[j].particle] = dist.outcomes[i][j];
    }
    const double expected = oracle::expectation(
        psi, oracle::outcome_projector(state.num_particles, axes, outcomes));
    CHECK(std::abs(dist.probabilities[static_cast<Eigen::Index>(i)] - expected) < kTol);
  }
}

}  // namespace

TEST_CASE("singlet amplitudes and normalization") {
  const auto state = qcore::make_singlet();
  REQUIRE(state.dim() == 4);
  CHECK(std::abs(state.amplitudes[2].real() - kInvSqrt2) < kTol);  // |+->
  CHECK(std::abs(state.amplitudes[1].real() + kInvSqrt2) < kTol);  // |-+>
  CHECK(std::abs(state.amplitudes[0]) == 0.0);
  CHECK(std::abs(state.amplitudes[3]) == 0.0);
  CHECK(std::abs(state.amplitudes.squaredNorm() - 1.0) < kTol);
}

TEST_CASE("ghz amplitudes and normalization") {
  const auto state = qcore::make_ghz();
  REQUIRE(state.dim() == 8);
  CHECK(std::abs(state.amplitudes[0].real() - kInvSqrt2) < kTol);  // |+++>
  CHECK(std::abs(state.amplitudes[7].real() + kInvSqrt2) < kTol);  // |--->
  CHECK(std::abs(state.amplitudes[4]) == 0.0);                     // |++->
  CHECK(std::abs(state.amplitudes.squaredNorm() - 1.0) < kTol);
}

TEST_CASE("ghz observables have the expected eigenstate expectations") {
  const auto state = qcore::make_ghz();
  const auto observables = qcore::ghz_product_observables();
  const double expected[] = {1.0, 1.0, 1.0, -1.0};
  for (std::size_t i = 0; i < observables.size(); ++i) {
    const double value = qcore::expectation(state, observables[i]);
    CHECK(std::abs(value - expected[i]) < kTol);
    // cross-check against the raw-matrix oracle
    const double reference = oracle::expectation(
        oracle::ghz(), oracle::product_operator(3, axes_of(observables[i])));
    CHECK(std::abs(value - reference) < kTol);
  }
}

TEST_CASE("singlet expectations for the four settings") {
  const auto state = qcore::make_singlet();
  const struct {
    Axis a0, a1;
    double expected;
  } cases[] = {
      {Axis::kX, Axis::kX, -1.0},
      {Axis::kY, Axis::kY, -1.0},
      {Axis::kX, Axis::kY, 0.0},
      {Axis::kY, Axis::kX, 0.0},
  };
  for (const auto& c : cases) {
    const auto obs = obs2(c.a0, c.a1);
    const double value = qcore::expectation(state, obs);
    CHECK(std::abs(value - c.expected) < kTol);
    const double reference = oracle::expectation(
        oracle::singlet(), oracle::product_operator(2, axes_of(obs)));
    CHECK(std::abs(value - reference) < kTol);
  }
}

TEST_CASE("singlet (x,x) distribution: perfect anticorrelation") {
  const auto dist = qcore::joint_outcome_distribution(qcore::make_singlet(),
                                                      obs2(Axis::kX, Axis::kX));
  CHECK(std::abs(dist.probability_of({+1, -1}) - 0.5) < kTol);
  CHECK(std::abs(dist.probability_of({-1, +1}) - 0.5) < kTol);
  CHECK(dist.probability_of({+1, +1}) == 0.0);
  CHECK(dist.probability_of({-1, -1}) == 0.0);
  CHECK(std::abs(dist.probabilities.sum() - 1.0) < kTol);
  check_against_oracle(qcore::make_singlet(), obs2(Axis::kX, Axis::kX),
                       oracle::singlet());
}

TEST_CASE("singlet (x,y) distribution: four equal quarters") {
  const auto dist = qcore::joint_outcome_distribution(qcore::make_singlet(),
                                                      obs2(Axis::kX, Axis::kY));
  for (const auto& tuple : dist.outcomes) {
    CHECK(std::abs(dist.probability_of(tuple) - 0.25) < kTol);
  }
  check_against_oracle(qcore::make_singlet(), obs2(Axis::kX, Axis::kY),
                       oracle::singlet());
}

TEST_CASE("ghz (x,y,y) distribution concentrates on product +1") {
  const auto obs = qcore::ghz_product_observables()[0];  // A
  const auto dist = qcore::joint_outcome_distribution(qcore::make_ghz(), obs);
  for (std::size_t i = 0; i < dist.outcomes.size(); ++i) {
    const double p = dist.probabilities[static_cast<Eigen::Index>(i)];
    if (dist.products[i] == 1) {
      CHECK(std::abs(p - 0.25) < kTol);
    } else {
      CHECK(p == 0.0);
    }
  }
  check_against_oracle(qcore::make_ghz(), obs, oracle::ghz());
}

TEST_CASE("marginals of a joint distribution match the reduced observable") {
  const auto state = qcore::make_singlet();
  for (const Axis a0 : {Axis::kX, Axis::kY}) {
    for (const Axis a1 : {Axis::kX, Axis::kY}) {
      const auto joint = qcore::joint_outcome_distribution(state, obs2(a0, a1));
      const auto reduced = qcore::joint_outcome_distribution(
          state, PauliObservable{{{0, a0}}, ""});
      for (const int s : {+1, -1}) {
        double summed = 0.0;
        for (std::size_t i = 0; i < joint.outcomes.size(); ++i) {
          if (joint.outcomes[i][0] == s) {
            summed += joint.probabilities[static_cast<Eigen::Index>(i)];
          }
        }
        CHECK(std::abs(summed - reduced.probability_of({s})) < kTol);
      }
    }
  }
}

TEST_CASE("expectation equals the distribution-weighted product mean") {
  const auto singlet = qcore::make_singlet();
  const auto ghz = qcore::make_ghz();
  for (const Axis a0 : {Axis::kX, Axis::kY}) {
    for (const Axis a1 : {Axis::kX, Axis::kY}) {
      const auto obs = obs2(a0, a1);
      const auto dist = qcore::joint_outcome_distribution(singlet, obs);
      CHECK(std::abs(dist.product_expectation() -
                     qcore::expectation(singlet, obs)) < kTol);
    }
  }
  for (const auto& obs : qcore::ghz_product_observables()) {
    const auto dist = qcore::joint_outcome_distribution(ghz, obs);
    CHECK(std::abs(dist.product_expectation() - qcore::expectation(ghz, obs)) <
          kTol);
  }
}

TEST_CASE("eigenstate sampling is exactly deterministic in the product") {
  const auto ghz = qcore::make_ghz();
  const auto observables = qcore::ghz_product_observables();
  const int expected[] = {1, 1, 1, -1};
  for (std::size_t o = 0; o < observables.size(); ++o) {
    CounterStream stream(13, Stream::kOutcome, o);
    for (int i = 0; i < 2000; ++i) {
      const auto tuple = qcore::sample_joint(ghz, observables[o], stream);
      int product = 1;
      for (const int v : tuple) product *= v;
      REQUIRE(product == expected[o]);
    }
  }

  const auto singlet = qcore::make_singlet();
  for (const Axis axis : {Axis::kX, Axis::kY}) {
    CounterStream stream(14, Stream::kOutcome, static_cast<std::uint64_t>(axis));
    for (int i = 0; i < 2000; ++i) {
      const auto tuple = qcore::sample_joint(singlet, obs2(axis, axis), stream);
      REQUIRE(tuple[0] * tuple[1] == -1);
    }
  }
}

TEST_CASE("sampling is reproducible for a fixed stream position") {
  const auto state = qcore::make_singlet();
  const auto obs = obs2(Axis::kX, Axis::kY);
  CounterStream a(5, Stream::kOutcome, 0);
  CounterStream b(5, Stream::kOutcome, 0);
  for (int i = 0; i < 200; ++i) {
    CHECK(qcore::sample_joint(state, obs, a) == qcore::sample_joint(state, obs, b));
  }
}

TEST_CASE("empirical frequencies agree with the distribution") {
  const auto state = qcore::make_singlet();
  const auto obs = obs2(Axis::kX, Axis::kY);
  const auto dist = qcore::joint_outcome_distribution(state, obs);

  const int n = 100000;
  std::array<int, 4> counts{};
  CounterStream stream(2026, Stream::kOutcome, 0);
  for (int i = 0; i < n; ++i) {
    counts[static_cast<std::size_t>(
        dist.sample_index(stream.next_uniform()))]++;
  }
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double p = dist.probabilities[static_cast<Eigen::Index>(i)];
    const double se = std::sqrt(p * (1.0 - p) / n);
    CHECK(std::abs(static_cast<double>(counts[i]) / n - p) < 5.0 * se);
  }
  // frozen pin for P(+1,+1) under (x, y)
  const double p_plus_plus = static_cast<double>(counts[0]) / n;
  CHECK(std::abs(p_plus_plus - 0.25) < 3.0 * std::sqrt(0.25 * 0.75 / n));
}

TEST_CASE("invalid observables are rejected") {
  const auto state = qcore::make_singlet();
  CHECK_THROWS_AS(
      qcore::expectation(state, PauliObservable{{{2, Axis::kX}}, ""}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      qcore::expectation(state, PauliObservable{{{-1, Axis::kX}}, ""}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      qcore::expectation(
          state, PauliObservable{{{0, Axis::kX}, {0, Axis::kY}}, ""}),
      std::invalid_argument);
  CHECK_THROWS_AS(qcore::expectation(state, PauliObservable{}),
                  std::invalid_argument);
}

TEST_CASE("unnormalized states are rejected") {
  qcore::PureState state = qcore::make_singlet();
  state.amplitudes *= 2.0;
  CHECK_THROWS_AS(
      qcore::joint_outcome_distribution(state, obs2(Axis::kX, Axis::kX)),
      std::invalid_argument);
}

TEST_CASE("observable matrices are Hermitian involutions") {
  const qcore::PauliObservable settings[] = {
      obs2(Axis::kX, Axis::kX), obs2(Axis::kY, Axis::kY),
      obs2(Axis::kX, Axis::kY), obs2(Axis::kY, Axis::kX)};
  for (const auto& obs : settings) {
    const auto m = qcore::observable_matrix(obs, 2);
    CHECK((m - m.adjoint()).norm() < kTol);
    CHECK((m * m - qcore::ComplexMatrix<double>::Identity(4, 4)).norm() < kTol);
  }
  for (const auto& obs : qcore::ghz_product_observables()) {
    const auto m = qcore::observable_matrix(obs, 3);
    CHECK((m - m.adjoint()).norm() < kTol);
    CHECK((m * m - qcore::ComplexMatrix<double>::Identity(8, 8)).norm() < kTol);
  }
}

TEST_CASE("the core instantiates for other real scalars") {
  const auto state = qcore::make_singlet<float>();
  CHECK(std::abs(state.amplitudes.squaredNorm() - 1.0f) < 1e-6f);
  const float value = qcore::expectation(
      state, obs2(Axis::kX, Axis::kX));
  CHECK(std::abs(value + 1.0f) < 1e-6f);
}
