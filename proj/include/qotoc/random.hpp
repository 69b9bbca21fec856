// Copyright 2026 The qotoc Authors
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

#pragma once

// Deterministic random numbers and random instances (states, observables,
// unitaries) for sampling and for the randomized identity checks. All draws
// are platform-independent functions of the seed.

#include <qotoc/pauli.hpp>

namespace qotoc {

/// Counter-based stream: output k of stream (seed, trial) is a pure function
/// of (seed, trial, k), so trials can run in any order or on any thread.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) : key_(mix(mix(seed) + stream * kGamma + kGamma)) {}

  std::uint64_t next() { return mix(key_ + (++counter_) * kGamma); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Sequential draws for instance generation.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed, std::uint64_t stream = 0) : rng_(seed, stream) {}

  double uniform() { return rng_.uniform(); }

  /// Uniform in (lo, hi].
  double uniform(double lo, double hi) { return hi - (hi - lo) * rng_.uniform(); }

  int integer(int lo, int hi_inclusive) {
    const auto span = static_cast<std::uint64_t>(hi_inclusive - lo + 1);
    return lo + static_cast<int>(rng_.next() % span);
  }

  bool coin() { return (rng_.next() >> 63) != 0; }

  /// Standard normal via Box-Muller.
  double normal() {
    const double u1 = 1.0 - rng_.uniform();  // (0, 1]
    const double u2 = rng_.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  Complex complex_normal() { return {normal(), normal()}; }

  ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols) {
    ComplexMatrix g(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
      for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = complex_normal();
    }
    return g;
  }

  /// Strength angle uniform in (0, pi/2].
  double strength() { return uniform(0.0, std::numbers::pi / 2); }

  /// Random signed Pauli string; never the all-identity string when
  /// `nontrivial` is set.
  PauliString pauli_string(int n_qubits, bool nontrivial = true) {
    for (;;) {
      std::vector<Pauli> f;
      for (int q = 0; q < n_qubits; ++q) f.push_back(static_cast<Pauli>(integer(0, 3)));
      PauliString p(std::move(f), coin() ? -1 : +1);
      if (!nontrivial || !p.is_identity()) return p;
    }
  }

  PureState pure_state(int n_qubits) {
    return PureState::normalized(ginibre(dim_for_qubits(n_qubits), 1).col(0));
  }

  /// Full-rank mixed state G G^dag / Tr.
  DensityMatrix density_matrix(int n_qubits) {
    const Eigen::Index d = dim_for_qubits(n_qubits);
    const ComplexMatrix g = ginibre(d, d);
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix(std::move(rho));
  }

  ComplexMatrix hermitian(Eigen::Index dim) {
    const ComplexMatrix g = ginibre(dim, dim);
    return (g + g.adjoint()) / 2.0;
  }

  /// Haar unitary: QR of a Ginibre matrix with the phases of R's diagonal
  /// divided out.
  ComplexMatrix unitary(Eigen::Index dim) {
    const Eigen::HouseholderQR<ComplexMatrix> qr(ginibre(dim, dim));
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < dim; ++k) {
      const Complex d = r(k, k);
      if (std::abs(d) > 0) q.col(k) *= d / std::abs(d);
    }
    return q;
  }

 private:
  CounterRng rng_;
};

}  // namespace qotoc
