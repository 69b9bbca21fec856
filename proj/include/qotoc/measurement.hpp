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

// Ancilla-based generalized measurements of observables with A^2 = 1.
//
// A measurement couples the system to a detector qubit through
// exp(-i (phi/2) A (x) D), then reads the detector. With D = Y and the
// detector prepared in |x->, reading z gives the informative pair M and
// reading y gives the noninformative pair N. Outcome a = 1 is the "+" branch
// (|z+> = |1>, |y+>), so alpha_{pi/2,1} = +1 pairs with the +1 eigenprojector.

#include <qotoc/pauli.hpp>

#include <array>
#include <limits>

namespace qotoc {

enum class MeasurementKind { informative, noninformative };

inline std::string_view to_string(MeasurementKind k) {
  return k == MeasurementKind::informative ? "informative" : "noninformative";
}

/// Strength angles live in (0, pi/2]. phi = 0 is rejected outright since the
/// generalized eigenvalues diverge there.
inline void check_strength(double phi) {
  constexpr double kHalfPi = std::numbers::pi / 2;
  if (!std::isfinite(phi) || !(phi > 0.0) || phi > kHalfPi * (1 + 4 * std::numeric_limits<double>::epsilon())) {
    throw ArgumentError("measurement strength phi=" + std::to_string(phi) + " must lie in (0, pi/2]");
  }
}

inline void check_outcome(int outcome) {
  if (outcome != 0 && outcome != 1) throw ArgumentError("measurement outcome must be 0 or 1");
}

/// (-1)^{a+1} as a double.
inline double outcome_sign(int outcome) { return outcome == 1 ? 1.0 : -1.0; }

class MeasurementSpec {
 public:
  MeasurementSpec(PauliString observable, double phi, MeasurementKind kind)
      : observable_(std::move(observable)), phi_(phi), kind_(kind) {
    check_strength(phi_);
  }

  const PauliString& observable() const noexcept { return observable_; }
  double phi() const noexcept { return phi_; }
  MeasurementKind kind() const noexcept { return kind_; }

 private:
  PauliString observable_;
  double phi_;
  MeasurementKind kind_;
};

struct KrausPair {
  std::array<ComplexMatrix, 2> ops;

  const ComplexMatrix& operator[](int outcome) const { return ops.at(static_cast<std::size_t>(outcome)); }

  /// max |K0^dag K0 + K1^dag K1 - 1|.
  double completeness_error() const {
    return max_abs(ops[0].adjoint() * ops[0] + ops[1].adjoint() * ops[1] - identity(ops[0].rows()));
  }
};

inline void check_squares_to_identity(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("observable must be square");
  if (!is_hermitian(a, kCheckTolerance) || max_abs(a * a - identity(a.rows())) > kCheckTolerance) {
    throw ArgumentError("observable must be Hermitian and square to the identity");
  }
}

/// M_a = (-1)^{1+a}/sqrt2 [cos(phi/2) 1 + (-1)^{1+a} sin(phi/2) A].
inline KrausPair informative_kraus(const ComplexMatrix& a, double phi) {
  check_strength(phi);
  check_squares_to_identity(a);
  const ComplexMatrix one = identity(a.rows());
  KrausPair k;
  for (int outcome : {0, 1}) {
    const double s = outcome_sign(outcome);
    k.ops[static_cast<std::size_t>(outcome)] =
        (s / std::numbers::sqrt2) * (std::cos(phi / 2) * one + s * std::sin(phi / 2) * a);
  }
  return k;
}

/// N_a = 1/sqrt2 [cos(phi/2) 1 - (-1)^{1+a} i sin(phi/2) A] e^{(-1)^{1+a} i pi/4}.
inline KrausPair noninformative_kraus(const ComplexMatrix& a, double phi) {
  check_strength(phi);
  check_squares_to_identity(a);
  const ComplexMatrix one = identity(a.rows());
  KrausPair k;
  for (int outcome : {0, 1}) {
    const double s = outcome_sign(outcome);
    const Complex phase = std::polar(1.0, s * std::numbers::pi / 4);
    k.ops[static_cast<std::size_t>(outcome)] =
        (phase / std::numbers::sqrt2) * (std::cos(phi / 2) * one - Complex(0, s * std::sin(phi / 2)) * a);
  }
  return k;
}

inline KrausPair kraus(const ComplexMatrix& a, double phi, MeasurementKind kind) {
  return kind == MeasurementKind::informative ? informative_kraus(a, phi) : noninformative_kraus(a, phi);
}

inline KrausPair informative_kraus(const MeasurementSpec& spec) {
  if (spec.kind() != MeasurementKind::informative) throw ArgumentError("spec is not informative");
  return informative_kraus(pauli_matrix(spec.observable()), spec.phi());
}

inline KrausPair noninformative_kraus(const MeasurementSpec& spec) {
  if (spec.kind() != MeasurementKind::noninformative) throw ArgumentError("spec is not noninformative");
  return noninformative_kraus(pauli_matrix(spec.observable()), spec.phi());
}

inline KrausPair kraus(const MeasurementSpec& spec) {
  return kraus(pauli_matrix(spec.observable()), spec.phi(), spec.kind());
}

/// alpha_{phi,a} = (-1)^{a+1} / sin(phi).
inline double generalized_eigenvalue(double phi, int outcome) {
  check_strength(phi);
  check_outcome(outcome);
  return outcome_sign(outcome) / std::sin(phi);
}

// ---------------------------------------------------------------------------
// General detector algebra.

struct DetectorConfig {
  PureState initial;
  ComplexMatrix coupling;  // D
  std::array<PureState, 2> readout;

  void validate() const {
    if (initial.n_qubits() != 1 || readout[0].n_qubits() != 1 || readout[1].n_qubits() != 1) {
      throw DimensionError("detector states must be single-qubit");
    }
    if (coupling.rows() != 2 || !is_hermitian(coupling, kCheckTolerance)) {
      throw ArgumentError("detector coupling must be a Hermitian 2x2 operator");
    }
    const Complex overlap = readout[0].amplitudes().dot(readout[1].amplitudes());
    if (std::abs(overlap) > kCheckTolerance) throw ArgumentError("detector readout basis is not orthogonal");
  }

  bool is_qubit_pauli() const { return max_abs(coupling * coupling - identity(2)) <= kCheckTolerance; }
};

/// D = Y, |psi> = |x->, readout {<z-|, <z+|} -> M.
inline DetectorConfig canonical_informative_detector() {
  return {states::x_minus(), pauli_matrix(Pauli::Y), {states::z_minus(), states::z_plus()}};
}

/// D = Y, |psi> = |x->, readout {<y-|, <y+|} -> N.
inline DetectorConfig canonical_noninformative_detector() {
  return {states::x_minus(), pauli_matrix(Pauli::Y), {states::y_minus(), states::y_plus()}};
}

inline DetectorConfig canonical_detector(MeasurementKind kind) {
  return kind == MeasurementKind::informative ? canonical_informative_detector()
                                              : canonical_noninformative_detector();
}

/// Raised when <a|psi> = 0: the amplitude ratio is undefined. Carries the
/// numerator <a|...|psi> so the caller can fall back to the unfactored form.
class DivergentValueError : public Error {
 public:
  DivergentValueError(const std::string& what, Complex numerator) : Error(what), numerator_(numerator) {}
  Complex numerator() const noexcept { return numerator_; }

 private:
  Complex numerator_;
};

namespace detail {

inline constexpr double kOverlapFloor = 1e-14;

inline Complex bra_ket(const PureState& bra, const ComplexVector& ket) { return bra.amplitudes().dot(ket); }

}  // namespace detail

/// m = <a| exp(-i phi lambda D / 2) |psi> / <a|psi>.
inline Complex modular_value(double lambda, double phi, const DetectorConfig& detector,
                             const PureState& outcome_state) {
  detector.validate();
  const Complex numerator =
      detail::bra_ket(outcome_state, exp_hermitian(detector.coupling, phi * lambda / 2) * detector.initial.amplitudes());
  const Complex overlap = detail::bra_ket(outcome_state, detector.initial.amplitudes());
  if (std::abs(overlap) < detail::kOverlapFloor) {
    throw DivergentValueError("modular value diverges: readout state is orthogonal to the detector state",
                              numerator);
  }
  return numerator / overlap;
}

/// D^(n)_w = <a| D^n |psi> / <a|psi>.
inline Complex weak_value(int order, const DetectorConfig& detector, const PureState& outcome_state) {
  if (order < 0) throw ArgumentError("weak value order must be non-negative");
  detector.validate();
  ComplexVector v = detector.initial.amplitudes();
  for (int k = 0; k < order; ++k) v = detector.coupling * v;
  const Complex numerator = detail::bra_ket(outcome_state, v);
  const Complex overlap = detail::bra_ket(outcome_state, detector.initial.amplitudes());
  if (std::abs(overlap) < detail::kOverlapFloor) {
    throw DivergentValueError("weak value diverges: readout state is orthogonal to the detector state", numerator);
  }
  return numerator / overlap;
}

/// Closed form for a qubit detector with D^2 = 1:
/// m = cos(phi lambda/2) - i sin(phi lambda/2) D_w.
inline Complex qubit_modular_value(double lambda, double phi, Complex weak) {
  return std::cos(phi * lambda / 2) - Complex(0, 1) * std::sin(phi * lambda / 2) * weak;
}

/// Partial sum sum_{n<terms} (-i phi lambda/2)^n / n! D^(n)_w.
inline Complex modular_value_series(double lambda, double phi, const DetectorConfig& detector,
                                    const PureState& outcome_state, int terms) {
  Complex sum = 0, coeff = 1;
  const Complex step = Complex(0, -phi * lambda / 2);
  for (int n = 0; n < terms; ++n) {
    if (n > 0) coeff *= step / static_cast<double>(n);
    sum += coeff * weak_value(n, detector, outcome_state);
  }
  return sum;
}

/// K_a = sum_lambda <a| exp(-i phi lambda D/2) |psi> Pi_lambda, from the
/// spectral decomposition of `a_obs`. Valid for any Hermitian observable.
inline ComplexMatrix detector_kraus(const ComplexMatrix& a_obs, double phi, const DetectorConfig& detector,
                                    int outcome) {
  detector.validate();
  check_outcome(outcome);
  const PureState& bra = detector.readout[static_cast<std::size_t>(outcome)];
  ComplexMatrix k = ComplexMatrix::Zero(a_obs.rows(), a_obs.cols());
  for (const auto& [lambda, projector] : spectral_projectors(a_obs)) {
    const Complex amp =
        detail::bra_ket(bra, exp_hermitian(detector.coupling, phi * lambda / 2) * detector.initial.amplitudes());
    k += amp * projector;
  }
  return k;
}

/// K_a = <a|psi> [cos(phi/2) 1 - i sin(phi/2) D_w A], valid when both D and A
/// square to the identity.
inline ComplexMatrix qubit_linear_kraus(const ComplexMatrix& a_obs, double phi, const DetectorConfig& detector,
                                        int outcome) {
  check_squares_to_identity(a_obs);
  if (!detector.is_qubit_pauli()) throw ArgumentError("qubit_linear_kraus needs D^2 = 1");
  const PureState& bra = detector.readout[static_cast<std::size_t>(outcome)];
  const Complex overlap = detail::bra_ket(bra, detector.initial.amplitudes());
  const Complex dw = weak_value(1, detector, bra);
  return overlap * (std::cos(phi / 2) * identity(a_obs.rows()) - Complex(0, std::sin(phi / 2)) * dw * a_obs);
}

// ---------------------------------------------------------------------------
// Calibration.

struct Calibration {
  std::vector<double> eigenvalues;  // distinct, ascending
  std::vector<double> alphas;       // one per outcome
  double residual_norm = 0.0;       // || lambda - C alpha ||_2
};

/// Least-squares generalized eigenvalues alpha = C^+ lambda with
/// C[lambda, a] = <lambda| K_a^dag K_a |lambda> (averaged over degenerate
/// eigenspaces). A nonzero residual means the pair cannot be calibrated to
/// measure the observable.
inline Calibration calibrate_generalized_eigenvalues(const KrausPair& k, const ComplexMatrix& observable) {
  if (k[0].rows() != observable.rows()) throw DimensionError("calibrate: Kraus and observable dimensions differ");
  const auto spaces = spectral_projectors(observable);
  const auto rows = static_cast<Eigen::Index>(spaces.size());
  Eigen::MatrixXd c(rows, 2);
  Eigen::VectorXd lambda(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& sp = spaces[static_cast<std::size_t>(r)];
    lambda(r) = sp.eigenvalue;
    const double rank = sp.projector.trace().real();
    for (int a : {0, 1}) c(r, a) = (sp.projector * k[a].adjoint() * k[a]).trace().real() / rank;
  }
  const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(c);
  const Eigen::VectorXd alpha = cod.pseudoInverse() * lambda;
  Calibration out;
  out.eigenvalues.assign(lambda.data(), lambda.data() + rows);
  out.alphas.assign(alpha.data(), alpha.data() + alpha.size());
  out.residual_norm = (lambda - c * alpha).norm();
  return out;
}

// ---------------------------------------------------------------------------
// State updates.

struct StateUpdate {
  ComplexMatrix unnormalized;  // K_a rho K_a^dag
  double probability = 0.0;    // Tr(K_a rho K_a^dag)
};

/// Applies outcome `outcome` of `spec` with the observable placed on
/// `targets` of the state's register.
inline StateUpdate state_update(const DensityMatrix& state, const MeasurementSpec& spec, int outcome,
                                std::span<const int> targets) {
  check_outcome(outcome);
  if (static_cast<int>(targets.size()) != spec.observable().n_qubits()) {
    throw DimensionError("state_update: observable length does not match the target list");
  }
  const ComplexMatrix k = embed(kraus(spec)[outcome], targets, state.n_qubits());
  StateUpdate u;
  u.unnormalized = k * state.matrix() * k.adjoint();
  u.probability = u.unnormalized.trace().real();
  return u;
}

inline StateUpdate state_update(const DensityMatrix& state, const MeasurementSpec& spec, int outcome,
                                std::initializer_list<int> targets) {
  return state_update(state, spec, outcome, std::span<const int>(targets.begin(), targets.size()));
}

/// Three-term form of K_a rho K_a^dag for the canonical pairs:
///   1/2 [rho +- sin(phi) X + sin^2(phi/2) (A rho A - rho)]
/// with X = {A,rho}/2 (informative) or [A,rho]/2i (noninformative).
inline ComplexMatrix canonical_update_closed_form(const ComplexMatrix& rho, const ComplexMatrix& a, double phi,
                                                  MeasurementKind kind, int outcome) {
  const double s = outcome_sign(outcome);
  const ComplexMatrix bracket = kind == MeasurementKind::informative
                                    ? ComplexMatrix(anticommutator(a, rho) / 2.0)
                                    : ComplexMatrix(commutator(a, rho) / Complex(0, 2));
  const double half = std::sin(phi / 2);
  return 0.5 * (rho + s * std::sin(phi) * bracket + half * half * (a * rho * a - rho));
}

/// Exact normalised update minus rho for a qubit detector with weak value
/// D_w, written as commutator + anticommutator + decoherence terms with the
/// prefactor c_{phi,a}.
inline ComplexMatrix qubit_update_difference(const ComplexMatrix& rho, const ComplexMatrix& a, double phi,
                                             Complex weak) {
  const double mean_a = (a * rho).trace().real();
  const double s = std::sin(phi), h = std::sin(phi / 2);
  const double dw2 = std::norm(weak);
  const double c = s / (1.0 + s * mean_a * weak.imag() + h * h * (dw2 - 1.0));
  const ComplexMatrix comm = commutator(a, rho) / Complex(0, 2);
  const ComplexMatrix acomm = anticommutator(a, rho) / 2.0 - mean_a * rho;
  return c * weak.real() * comm + c * weak.imag() * acomm + c * (h * h * dw2 / s) * (a * rho * a - rho);
}

/// First-order (weak-coupling) change of the normalised state.
inline ComplexMatrix weak_update_first_order(const ComplexMatrix& rho, const ComplexMatrix& a, double phi,
                                             Complex weak) {
  const double mean_a = (a * rho).trace().real();
  const ComplexMatrix comm = commutator(a, rho) / Complex(0, 2);
  const ComplexMatrix acomm = anticommutator(a, rho) / 2.0 - mean_a * rho;
  return phi * (weak.real() * comm + weak.imag() * acomm);
}

}  // namespace qotoc
