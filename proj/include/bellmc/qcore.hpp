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

// Exact quantum core for 2- and 3-particle spin-1/2 systems: state vectors,
// Pauli product observables, Born-rule joint outcome distributions and
// reproducible outcome sampling. Basis convention: bit k of a basis index
// encodes particle k, with 0 -> spin up along z.

#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bellmc/rng.hpp"

namespace bellmc::qcore {

enum class Axis : int { kX = 0, kY = 1, kZ = 2 };

inline char axis_name(Axis axis) {
  switch (axis) {
    case Axis::kX: return 'x';
    case Axis::kY: return 'y';
    default: return 'z';
  }
}

/// One single-particle spin component inside a product observable.
struct PauliFactor {
  int particle = 0;
  Axis axis = Axis::kX;
};

/// Tensor product of single-particle spin components, one axis per particle.
/// The induced matrix is Hermitian with eigenvalues in {+1, -1}.
struct PauliObservable {
  std::vector<PauliFactor> factors;
  std::string label;
};

template <typename Scalar = double>
using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar = double>
using ComplexMatrix =
    Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar = double>
using RealVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Normalized amplitude vector over the z-basis of 2 or 3 spin-1/2 particles.
template <typename Scalar = double>
struct BasicPureState {
  int num_particles = 0;
  ComplexVector<Scalar> amplitudes;

  Eigen::Index dim() const { return amplitudes.size(); }
};

using PureState = BasicPureState<double>;

// Probabilities below this are algebraic zeros contaminated by rounding and
// are clamped, so that eigenstate outcomes stay exact under sampling.
template <typename Scalar>
Scalar probability_floor() {
  return std::max(Scalar(1e-13),
                  Scalar(100) * Eigen::NumTraits<Scalar>::epsilon());
}

template <typename Scalar = double>
ComplexMatrix<Scalar> pauli_matrix(Axis axis) {
  using C = std::complex<Scalar>;
  ComplexMatrix<Scalar> m(2, 2);
  switch (axis) {
    case Axis::kX:
      m << C(0), C(1), C(1), C(0);
      break;
    case Axis::kY:
      m << C(0), C(0, -1), C(0, 1), C(0);
      break;
    default:
      m << C(1), C(0), C(0), C(-1);
      break;
  }
  return m;
}

template <typename Scalar>
void validate_state(const BasicPureState<Scalar>& state) {
  if (state.num_particles != 2 && state.num_particles != 3) {
    throw std::invalid_argument("state must have 2 or 3 particles");
  }
  if (state.dim() != (Eigen::Index{1} << state.num_particles)) {
    throw std::invalid_argument("amplitude vector length must be 2^num_particles");
  }
  if (std::abs(state.amplitudes.squaredNorm() - Scalar(1)) >
      Eigen::NumTraits<Scalar>::dummy_precision()) {
    throw std::invalid_argument("state is not normalized");
  }
}

inline void validate_observable(const PauliObservable& obs, int num_particles) {
  if (obs.factors.empty()) {
    throw std::invalid_argument("invalid observable: no factors");
  }
  std::array<bool, 3> seen{};
  for (const auto& f : obs.factors) {
    if (f.particle < 0 || f.particle >= num_particles) {
      throw std::invalid_argument("invalid observable: particle index out of range");
    }
    if (seen[static_cast<std::size_t>(f.particle)]) {
      throw std::invalid_argument("invalid observable: repeated particle index");
    }
    seen[static_cast<std::size_t>(f.particle)] = true;
  }
}

namespace detail {

// Folds per-particle 2x2 blocks into the full operator, particle 0 on the
// lowest basis bit. `block(k)` returns the 2x2 acting on particle k.
template <typename Scalar, typename BlockFn>
ComplexMatrix<Scalar> fold_particle_blocks(int num_particles, BlockFn block) {
  ComplexMatrix<Scalar> full = ComplexMatrix<Scalar>::Identity(1, 1);
  for (int k = num_particles - 1; k >= 0; --k) {
    full = Eigen::kroneckerProduct(full, block(k)).eval();
  }
  return full;
}

}  // namespace detail

/// Full matrix of a Pauli product observable on an n-particle register.
template <typename Scalar = double>
ComplexMatrix<Scalar> observable_matrix(const PauliObservable& obs,
                                        int num_particles) {
  validate_observable(obs, num_particles);
  const ComplexMatrix<Scalar> id = ComplexMatrix<Scalar>::Identity(2, 2);
  return detail::fold_particle_blocks<Scalar>(num_particles, [&](int k) {
    for (const auto& f : obs.factors) {
      if (f.particle == k) return pauli_matrix<Scalar>(f.axis);
    }
    return id;
  });
}

/// Two-particle singlet: (|+-> - |-+>) / sqrt(2).
template <typename Scalar = double>
BasicPureState<Scalar> make_singlet() {
  BasicPureState<Scalar> state;
  state.num_particles = 2;
  state.amplitudes = ComplexVector<Scalar>::Zero(4);
  const Scalar inv_sqrt2 = Scalar(1) / std::sqrt(Scalar(2));
  state.amplitudes[2] = inv_sqrt2;   // |+->: particle 0 up, particle 1 down
  state.amplitudes[1] = -inv_sqrt2;  // |-+>
  return state;
}

/// Three-particle entangled state (|+++> - |--->) / sqrt(2).
template <typename Scalar = double>
BasicPureState<Scalar> make_ghz() {
  BasicPureState<Scalar> state;
  state.num_particles = 3;
  state.amplitudes = ComplexVector<Scalar>::Zero(8);
  const Scalar inv_sqrt2 = Scalar(1) / std::sqrt(Scalar(2));
  state.amplitudes[0] = inv_sqrt2;
  state.amplitudes[7] = -inv_sqrt2;
  return state;
}

/// <state|obs|state>, a real number in [-1, +1].
template <typename Scalar>
Scalar expectation(const BasicPureState<Scalar>& state,
                   const PauliObservable& obs) {
  validate_state(state);
  const ComplexMatrix<Scalar> m = observable_matrix<Scalar>(obs, state.num_particles);
  const std::complex<Scalar> value = state.amplitudes.dot(m * state.amplitudes);
  return value.real();
}

/// Born-rule distribution over simultaneous single-particle outcomes for one
/// measurement context (one axis per measured particle).
template <typename Scalar = double>
struct OutcomeDistribution {
  std::vector<PauliFactor> factors;        // measured (particle, axis) pairs
  std::vector<std::vector<int>> outcomes;  // tuple i, aligned with factors
  RealVector<Scalar> probabilities;
  std::vector<int> products;               // outcome product per tuple

  /// Inverse-CDF draw; tuples with probability zero are never returned.
  int sample_index(Scalar u) const {
    Scalar cumulative = 0;
    int last_positive = -1;
    for (Eigen::Index i = 0; i < probabilities.size(); ++i) {
      const Scalar p = probabilities[i];
      if (p <= Scalar(0)) continue;
      last_positive = static_cast<int>(i);
      cumulative += p;
      if (u < cumulative) return last_positive;
    }
    if (last_positive < 0) {
      throw std::logic_error("outcome distribution has no support");
    }
    return last_positive;  // u fell into the rounding tail
  }

  Scalar probability_of(const std::vector<int>& tuple) const {
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      if (outcomes[i] == tuple) return probabilities[static_cast<Eigen::Index>(i)];
    }
    return Scalar(0);
  }

  /// Distribution-weighted mean of the outcome product.
  Scalar product_expectation() const {
    Scalar mean = 0;
    for (Eigen::Index i = 0; i < probabilities.size(); ++i) {
      mean += probabilities[i] * Scalar(products[static_cast<std::size_t>(i)]);
    }
    return mean;
  }
};

/// Joint outcome distribution from projector weights. Tuples are ordered with
/// +1 before -1, first factor most significant.
template <typename Scalar>
OutcomeDistribution<Scalar> joint_outcome_distribution(
    const BasicPureState<Scalar>& state, const PauliObservable& obs) {
  validate_state(state);
  validate_observable(obs, state.num_particles);

  const int m = static_cast<int>(obs.factors.size());
  const ComplexMatrix<Scalar> id = ComplexMatrix<Scalar>::Identity(2, 2);

  OutcomeDistribution<Scalar> dist;
  dist.factors = obs.factors;
  dist.outcomes.reserve(std::size_t{1} << m);
  dist.probabilities.resize(Eigen::Index{1} << m);
  dist.products.reserve(std::size_t{1} << m);

  for (int t = 0; t < (1 << m); ++t) {
    std::vector<int> tuple(static_cast<std::size_t>(m));
    int product = 1;
    for (int j = 0; j < m; ++j) {
      tuple[static_cast<std::size_t>(j)] = ((t >> (m - 1 - j)) & 1) ? -1 : +1;
      product *= tuple[static_cast<std::size_t>(j)];
    }
    const ComplexMatrix<Scalar> projector =
        detail::fold_particle_blocks<Scalar>(state.num_particles, [&](int k) {
          for (int j = 0; j < m; ++j) {
            if (obs.factors[static_cast<std::size_t>(j)].particle == k) {
              const Scalar s = Scalar(tuple[static_cast<std::size_t>(j)]);
              return ((id + s * pauli_matrix<Scalar>(
                                    obs.factors[static_cast<std::size_t>(j)].axis)) /
                      Scalar(2))
                  .eval();
            }
          }
          return id;
        });
    Scalar p = state.amplitudes.dot(projector * state.amplitudes).real();
    if (p < probability_floor<Scalar>()) p = 0;  // clamp rounding residue
    dist.probabilities[t] = p;
    dist.outcomes.push_back(std::move(tuple));
    dist.products.push_back(product);
  }

  const Scalar total = dist.probabilities.sum();
  if (std::abs(total - Scalar(1)) >
      Scalar(10) * Eigen::NumTraits<Scalar>::dummy_precision()) {
    throw std::logic_error("projector weights do not sum to one");
  }
  dist.probabilities /= total;
  return dist;
}

/// One simultaneous measurement of every factor of `obs`; returns outcomes
/// aligned with obs.factors. Reproducible for a fixed stream position.
template <typename Scalar>
std::vector<int> sample_joint(const BasicPureState<Scalar>& state,
                              const PauliObservable& obs, CounterStream& rng) {
  const auto dist = joint_outcome_distribution(state, obs);
  return dist.outcomes[static_cast<std::size_t>(
      dist.sample_index(Scalar(rng.next_uniform())))];
}

/// The four three-particle product observables with the GHZ state as a common
/// eigenstate (eigenvalues +1, +1, +1, -1).
inline std::array<PauliObservable, 4> ghz_product_observables() {
  using enum Axis;
  return {
      PauliObservable{{{0, kX}, {1, kY}, {2, kY}}, "A"},
      PauliObservable{{{0, kY}, {1, kX}, {2, kY}}, "B"},
      PauliObservable{{{0, kY}, {1, kY}, {2, kX}}, "C"},
      PauliObservable{{{0, kX}, {1, kX}, {2, kX}}, "D"},
  };
}

}  // namespace bellmc::qcore
