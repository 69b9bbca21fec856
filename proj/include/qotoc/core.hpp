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

// Dense state and operator primitives.
//
// Register convention: qubit 0 is the most significant tensor slot, so for an
// n-qubit register the basis index of |b_0 b_1 ... b_{n-1}> is
// sum_q b_q 2^(n-1-q). Every function in the library follows this ordering.
//
// Basis convention: |1> is the excited state and Z = |1><1| - |0><0|, i.e.
// Z|1> = +|1> and Z = diag(-1, +1) in the (|0>, |1>) ordering. This is the
// opposite of the usual quantum-computing labelling; relabel 0 <-> 1 to
// convert.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qotoc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kCheckTolerance = 1e-10;
inline constexpr double kRepairTolerance = 1e-12;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree (matrix vs register size, list lengths).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A precondition on an argument value failed (index range, angle range...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A numerical invariant was violated while computing (probability sums,
/// unitarity of a derived operator, Re F <= 1 ...). `invariant()` names it.
class InvariantViolation : public Error {
 public:
  InvariantViolation(std::string invariant, const std::string& detail)
      : Error(invariant + ": " + detail), invariant_(std::move(invariant)) {}
  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

// ---------------------------------------------------------------------------
// Small matrix utilities.

inline ComplexMatrix identity(Eigen::Index dim) { return ComplexMatrix::Identity(dim, dim); }

inline ComplexMatrix dagger(const ComplexMatrix& m) { return m.adjoint(); }

inline double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("max_abs_diff: shape mismatch");
  }
  return max_abs(a - b);
}

inline bool is_hermitian(const ComplexMatrix& m, double tol = kCheckTolerance) {
  return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

inline bool is_unitary(const ComplexMatrix& m, double tol = kCheckTolerance) {
  return m.rows() == m.cols() && max_abs(m.adjoint() * m - identity(m.rows())) <= tol;
}

inline bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

inline ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b + b * a;
}

/// min over theta of ||u - e^{i theta} v||_F. The optimal phase is taken from
/// tr(v^dagger u) and the distance is then evaluated directly, which keeps the
/// result accurate down to roundoff.
inline double phase_aligned_distance(const ComplexMatrix& u, const ComplexMatrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw DimensionError("phase_aligned_distance: shape mismatch");
  }
  const Complex overlap = (v.adjoint() * u).trace();
  const Complex phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Complex{1.0, 0.0};
  return (u - phase * v).norm();
}

/// log2 of a power-of-two dimension.
inline int qubit_count_for_dim(Eigen::Index dim) {
  if (dim < 1 || (dim & (dim - 1)) != 0) {
    throw DimensionError("dimension " + std::to_string(dim) + " is not a power of two");
  }
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  return n;
}

inline Eigen::Index dim_for_qubits(int n) { return Eigen::Index{1} << n; }

/// exp(-i t h) for Hermitian h, via the eigendecomposition of h.
inline ComplexMatrix exp_hermitian(const ComplexMatrix& h, double t) {
  if (!is_hermitian(h, kCheckTolerance)) throw ArgumentError("exp_hermitian: generator is not Hermitian");
  const Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  const Eigen::VectorXd& w = solver.eigenvalues();
  ComplexVector phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) phases(k) = std::polar(1.0, -t * w(k));
  const ComplexMatrix& v = solver.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

struct Eigenspace {
  double eigenvalue;
  ComplexMatrix projector;
};

/// Distinct eigenvalues (ascending, merged within `merge_tol`) of a Hermitian
/// operator together with their orthogonal projectors.
inline std::vector<Eigenspace> spectral_projectors(const ComplexMatrix& h, double merge_tol = 1e-8) {
  if (!is_hermitian(h, kCheckTolerance)) throw ArgumentError("spectral_projectors: operator is not Hermitian");
  const Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  const Eigen::VectorXd& w = solver.eigenvalues();
  const ComplexMatrix& v = solver.eigenvectors();
  std::vector<Eigenspace> out;
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    const ComplexMatrix p = v.col(k) * v.col(k).adjoint();
    if (!out.empty() && std::abs(w(k) - out.back().eigenvalue) <= merge_tol) {
      out.back().projector += p;
    } else {
      out.push_back({w(k), p});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tensor products and embedding.

/// Kronecker product; `a` occupies the more significant slots.
inline ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline ComplexMatrix tensor(std::span<const ComplexMatrix> factors) {
  ComplexMatrix out = ComplexMatrix::Ones(1, 1);
  for (const auto& f : factors) out = tensor(out, f);
  return out;
}

inline void check_targets(std::span<const int> targets, int n_qubits) {
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] < 0 || targets[i] >= n_qubits) {
      throw ArgumentError("qubit index " + std::to_string(targets[i]) + " out of range for " +
                          std::to_string(n_qubits) + " qubits");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (targets[i] == targets[j]) {
        throw ArgumentError("duplicate qubit index " + std::to_string(targets[i]));
      }
    }
  }
}

namespace detail {

// Basis-index offsets for every assignment of `qubits` (first listed qubit is
// the most significant bit of the enumeration order).
inline std::vector<Eigen::Index> scatter_table(std::span<const int> qubits, int n_qubits) {
  const std::size_t k = qubits.size();
  std::vector<Eigen::Index> table(std::size_t{1} << k, 0);
  for (std::size_t s = 0; s < table.size(); ++s) {
    Eigen::Index idx = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if ((s >> (k - 1 - j)) & 1U) idx |= Eigen::Index{1} << (n_qubits - 1 - qubits[j]);
    }
    table[s] = idx;
  }
  return table;
}

inline std::vector<int> complement(std::span<const int> qubits, int n_qubits) {
  std::vector<int> rest;
  for (int q = 0; q < n_qubits; ++q) {
    if (std::find(qubits.begin(), qubits.end(), q) == qubits.end()) rest.push_back(q);
  }
  return rest;
}

}  // namespace detail

/// Lift `op` acting on `targets` (in listed order) to the full n-qubit
/// register, identity elsewhere.
inline ComplexMatrix embed(const ComplexMatrix& op, std::span<const int> targets, int n_qubits) {
  check_targets(targets, n_qubits);
  const Eigen::Index sub = dim_for_qubits(static_cast<int>(targets.size()));
  if (op.rows() != sub || op.cols() != sub) {
    throw DimensionError("operator of dimension " + std::to_string(op.rows()) + " cannot act on " +
                         std::to_string(targets.size()) + " target qubits");
  }
  const Eigen::Index dim = dim_for_qubits(n_qubits);
  bool in_order = static_cast<int>(targets.size()) == n_qubits;
  for (std::size_t i = 0; in_order && i < targets.size(); ++i) in_order = targets[i] == static_cast<int>(i);
  if (in_order) return op;

  const auto target_offsets = detail::scatter_table(targets, n_qubits);
  const auto rest = detail::complement(targets, n_qubits);
  const auto rest_offsets = detail::scatter_table(rest, n_qubits);
  ComplexMatrix full = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index base : rest_offsets) {
    for (Eigen::Index r = 0; r < sub; ++r) {
      for (Eigen::Index c = 0; c < sub; ++c) {
        full(base | target_offsets[r], base | target_offsets[c]) = op(r, c);
      }
    }
  }
  return full;
}

inline ComplexMatrix embed(const ComplexMatrix& op, std::initializer_list<int> targets, int n_qubits) {
  return embed(op, std::span<const int>(targets.begin(), targets.size()), n_qubits);
}

// ---------------------------------------------------------------------------
// States.

/// Normalised state vector on n qubits.
class PureState {
 public:
  explicit PureState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
    n_qubits_ = qubit_count_for_dim(amplitudes_.size());
    if (!all_finite(amplitudes_)) throw ArgumentError("state amplitudes must be finite");
    const double norm = amplitudes_.norm();
    if (std::abs(norm - 1.0) > kCheckTolerance) {
      throw ArgumentError("state is not normalised (norm " + std::to_string(norm) + ")");
    }
    amplitudes_ /= norm;
  }

  /// Normalises any nonzero vector.
  static PureState normalized(const ComplexVector& v) {
    const double norm = v.norm();
    if (!(norm > 0)) throw ArgumentError("cannot normalise the zero vector");
    return PureState(v / norm);
  }

  /// Computational basis state from a bit label such as "0110".
  static PureState basis(std::string_view bits) {
    if (bits.empty()) throw ArgumentError("empty basis label");
    const int n = static_cast<int>(bits.size());
    Eigen::Index idx = 0;
    for (int q = 0; q < n; ++q) {
      if (bits[q] != '0' && bits[q] != '1') {
        throw ArgumentError("basis label must contain only '0' and '1'");
      }
      if (bits[q] == '1') idx |= Eigen::Index{1} << (n - 1 - q);
    }
    ComplexVector v = ComplexVector::Zero(dim_for_qubits(n));
    v(idx) = 1.0;
    return PureState(std::move(v));
  }

  int n_qubits() const noexcept { return n_qubits_; }
  Eigen::Index dim() const noexcept { return amplitudes_.size(); }
  const ComplexVector& amplitudes() const noexcept { return amplitudes_; }

  friend PureState tensor(const PureState& a, const PureState& b) {
    ComplexVector v(a.dim() * b.dim());
    for (Eigen::Index i = 0; i < a.dim(); ++i) v.segment(i * b.dim(), b.dim()) = a.amplitudes_(i) * b.amplitudes_;
    return PureState(std::move(v));
  }

 private:
  ComplexVector amplitudes_;
  int n_qubits_ = 0;
};

struct assume_valid_t {
  explicit assume_valid_t() = default;
};
inline constexpr assume_valid_t assume_valid{};

/// Unit-trace positive semidefinite operator on n qubits.
class DensityMatrix {
 public:
  /// Full validation: square power-of-two, finite, Hermitian, unit trace and
  /// eigenvalues >= -1e-10. Small asymmetries are repaired.
  explicit DensityMatrix(ComplexMatrix m) : DensityMatrix(std::move(m), assume_valid) {
    const Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(matrix_, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -kCheckTolerance) {
      throw ArgumentError("density matrix has a negative eigenvalue " +
                          std::to_string(solver.eigenvalues().minCoeff()));
    }
  }

  /// For operators that are positive by construction (outputs of unitary
  /// conjugation, partial traces). Shape, Hermiticity and trace are still
  /// checked at the 1e-10 level and repaired; positivity is not re-examined.
  DensityMatrix(ComplexMatrix m, assume_valid_t) : matrix_(std::move(m)) {
    if (matrix_.rows() != matrix_.cols()) throw DimensionError("density matrix must be square");
    n_qubits_ = qubit_count_for_dim(matrix_.rows());
    if (!all_finite(matrix_)) throw ArgumentError("density matrix has non-finite entries");
    if (!is_hermitian(matrix_, kCheckTolerance)) throw ArgumentError("density matrix is not Hermitian");
    const double tr = matrix_.trace().real();
    if (std::abs(tr - 1.0) > kCheckTolerance) {
      throw ArgumentError("density matrix trace is " + std::to_string(tr));
    }
    matrix_ = (matrix_ + matrix_.adjoint()).eval() * (0.5 / tr);
  }

  static DensityMatrix from_pure(const PureState& psi) {
    return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint(), assume_valid);
  }

  static DensityMatrix basis(std::string_view bits) { return from_pure(PureState::basis(bits)); }

  static DensityMatrix maximally_mixed(int n_qubits) {
    const Eigen::Index dim = dim_for_qubits(n_qubits);
    return DensityMatrix(identity(dim) / static_cast<double>(dim), assume_valid);
  }

  int n_qubits() const noexcept { return n_qubits_; }
  Eigen::Index dim() const noexcept { return matrix_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }

  friend DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    return DensityMatrix(tensor(a.matrix_, b.matrix_), assume_valid);
  }

 private:
  ComplexMatrix matrix_;
  int n_qubits_ = 0;
};

// ---------------------------------------------------------------------------
// Operations on states.

/// U rho U^dagger with `u` acting on `targets`.
inline DensityMatrix apply_unitary(const DensityMatrix& state, const ComplexMatrix& u,
                                   std::span<const int> targets) {
  if (!is_unitary(u, kCheckTolerance)) throw ArgumentError("apply_unitary: operator is not unitary");
  const ComplexMatrix full = embed(u, targets, state.n_qubits());
  return DensityMatrix(full * state.matrix() * full.adjoint(), assume_valid);
}

inline DensityMatrix apply_unitary(const DensityMatrix& state, const ComplexMatrix& u,
                                   std::initializer_list<int> targets) {
  return apply_unitary(state, u, std::span<const int>(targets.begin(), targets.size()));
}

/// Tr(obs rho).
inline Complex expectation(const DensityMatrix& state, const ComplexMatrix& obs) {
  if (obs.rows() != state.dim() || obs.cols() != state.dim()) {
    throw DimensionError("expectation: observable dimension " + std::to_string(obs.rows()) +
                         " does not match state dimension " + std::to_string(state.dim()));
  }
  // Tr(A B) = sum_ij A_ij B_ji without forming the product.
  return (obs.transpose().cwiseProduct(state.matrix())).sum();
}

/// Reduced operator on `keep` (output slots follow the order of `keep`).
/// Works on any square operator, normalised or not.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const int> keep, int n_qubits) {
  if (m.rows() != dim_for_qubits(n_qubits) || m.cols() != m.rows()) {
    throw DimensionError("partial_trace: operator does not match the register");
  }
  check_targets(keep, n_qubits);
  const auto keep_offsets = detail::scatter_table(keep, n_qubits);
  const auto traced = detail::complement(keep, n_qubits);
  const auto traced_offsets = detail::scatter_table(traced, n_qubits);
  const auto k = static_cast<Eigen::Index>(keep_offsets.size());
  ComplexMatrix out = ComplexMatrix::Zero(k, k);
  for (Eigen::Index r = 0; r < k; ++r) {
    for (Eigen::Index c = 0; c < k; ++c) {
      Complex acc = 0;
      for (Eigen::Index t : traced_offsets) acc += m(keep_offsets[r] | t, keep_offsets[c] | t);
      out(r, c) = acc;
    }
  }
  return out;
}

inline DensityMatrix partial_trace(const DensityMatrix& state, std::span<const int> keep) {
  if (keep.empty()) throw ArgumentError("partial_trace: must keep at least one qubit");
  return DensityMatrix(partial_trace(state.matrix(), keep, state.n_qubits()), assume_valid);
}

inline DensityMatrix partial_trace(const DensityMatrix& state, std::initializer_list<int> keep) {
  return partial_trace(state, std::span<const int>(keep.begin(), keep.size()));
}

}  // namespace qotoc
