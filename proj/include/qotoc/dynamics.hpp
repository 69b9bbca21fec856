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

#include <qotoc/pauli.hpp>

namespace qotoc {

struct HamiltonianTerm {
  double coefficient;
  PauliString pauli;
};

/// Real-weighted sum of Pauli strings (hbar = 1).
class Hamiltonian {
 public:
  explicit Hamiltonian(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1) throw ArgumentError("Hamiltonian needs at least one qubit");
  }

  Hamiltonian& add(double coefficient, PauliString pauli) {
    if (pauli.n_qubits() != n_qubits_) throw DimensionError("Hamiltonian term has the wrong length");
    if (!std::isfinite(coefficient)) throw ArgumentError("Hamiltonian coefficient must be finite");
    terms_.push_back({coefficient, std::move(pauli)});
    return *this;
  }

  int n_qubits() const noexcept { return n_qubits_; }
  const std::vector<HamiltonianTerm>& terms() const noexcept { return terms_; }

  ComplexMatrix matrix() const {
    const Eigen::Index dim = dim_for_qubits(n_qubits_);
    ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
    for (const auto& t : terms_) h += t.coefficient * pauli_matrix(t.pauli);
    return h;
  }

 private:
  int n_qubits_;
  std::vector<HamiltonianTerm> terms_;
};

struct IsingParameters {
  double coupling = 1.0;       // J
  double transverse = 1.05;    // g
  double longitudinal = 0.5;   // h
};

/// H = -J sum Z_i Z_{i+1} - g sum X_i - h sum Z_i, open chain.
inline Hamiltonian build_mixed_field_ising(int n, const IsingParameters& p = {}) {
  if (n < 2) throw ArgumentError("mixed-field Ising chain needs at least two sites");
  Hamiltonian h(n);
  for (int i = 0; i + 1 < n; ++i) {
    std::vector<Pauli> f(static_cast<std::size_t>(n), Pauli::I);
    f[static_cast<std::size_t>(i)] = Pauli::Z;
    f[static_cast<std::size_t>(i + 1)] = Pauli::Z;
    h.add(-p.coupling, PauliString(std::move(f)));
  }
  for (int i = 0; i < n; ++i) h.add(-p.transverse, PauliString::single(n, i, Pauli::X));
  for (int i = 0; i < n; ++i) h.add(-p.longitudinal, PauliString::single(n, i, Pauli::Z));
  return h;
}

struct Propagator {
  ComplexMatrix matrix;
  double duration = 0.0;

  Propagator adjoint() const { return {matrix.adjoint(), -duration}; }
};

/// Cached eigendecomposition; propagators at many times cost one product each.
class Spectrum {
 public:
  explicit Spectrum(const ComplexMatrix& h) {
    if (!is_hermitian(h, kCheckTolerance)) throw ArgumentError("Hamiltonian is not Hermitian");
    const Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    energies_ = solver.eigenvalues();
    vectors_ = solver.eigenvectors();
  }
  explicit Spectrum(const Hamiltonian& h) : Spectrum(h.matrix()) {}

  /// exp(-i t H).
  Propagator propagator(double t) const {
    ComplexVector phases(energies_.size());
    for (Eigen::Index k = 0; k < energies_.size(); ++k) phases(k) = std::polar(1.0, -t * energies_(k));
    Propagator p{vectors_ * phases.asDiagonal() * vectors_.adjoint(), t};
    if (!is_unitary(p.matrix, kCheckTolerance)) {
      throw InvariantViolation("propagator-unitarity", "exp(-itH) lost unitarity at t=" + std::to_string(t));
    }
    return p;
  }

  const Eigen::VectorXd& energies() const noexcept { return energies_; }

 private:
  Eigen::VectorXd energies_;
  ComplexMatrix vectors_;
};

inline Propagator propagator(const ComplexMatrix& h, double t) { return Spectrum(h).propagator(t); }
inline Propagator propagator(const Hamiltonian& h, double t) { return Spectrum(h).propagator(t); }

/// U^dag O U.
inline ComplexMatrix heisenberg(const ComplexMatrix& obs, const Propagator& u) {
  if (obs.rows() != u.matrix.rows()) throw DimensionError("heisenberg: observable and propagator dimensions differ");
  return u.matrix.adjoint() * obs * u.matrix;
}

inline ComplexMatrix heisenberg(const PauliString& obs, const Propagator& u) {
  return heisenberg(pauli_matrix(obs), u);
}

}  // namespace qotoc
