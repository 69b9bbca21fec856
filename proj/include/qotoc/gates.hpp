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

#include <optional>

namespace qotoc {

enum class Axis { x, y, z };

/// exp[-i (angle/2) P_axis] = cos(angle/2) I - i sin(angle/2) P_axis.
inline ComplexMatrix rotation_gate(Axis axis, double angle) {
  const Pauli p = axis == Axis::x ? Pauli::X : axis == Axis::y ? Pauli::Y : Pauli::Z;
  return std::cos(angle / 2) * identity(2) - Complex(0, std::sin(angle / 2)) * pauli_matrix(p);
}

enum class Entangler { CZ, ZX90 };

inline std::string_view to_string(Entangler e) { return e == Entangler::CZ ? "CZ" : "ZX90"; }

/// CZ = |1><1| (x) Z + |0><0| (x) I (first slot controls; with Z|0> = -|0>
/// the only -1 sits on |1>|0>).  ZX90 = exp(-i pi/4 Z (x) X).
inline ComplexMatrix entangling_gate(Entangler kind) {
  const ComplexMatrix z = pauli_matrix(Pauli::Z), x = pauli_matrix(Pauli::X), i2 = identity(2);
  if (kind == Entangler::CZ) {
    ComplexMatrix p1 = ComplexMatrix::Zero(2, 2), p0 = ComplexMatrix::Zero(2, 2);
    p1(1, 1) = 1.0;
    p0(0, 0) = 1.0;
    return tensor(p1, z) + tensor(p0, i2);
  }
  const double c = std::cos(std::numbers::pi / 4), s = std::sin(std::numbers::pi / 4);
  return c * identity(4) - Complex(0, s) * tensor(z, x);
}

/// exp[-i (phi/2) A (x) Y] on system (x) ancilla, ancilla in the last slot.
/// Uses A^2 = 1, so the exponential is cos(phi/2) 1 - i sin(phi/2) A (x) Y.
inline ComplexMatrix coupling_unitary(const PauliString& a, double phi) {
  const ComplexMatrix ay = tensor(pauli_matrix(a), pauli_matrix(Pauli::Y));
  return std::cos(phi / 2) * identity(ay.rows()) - Complex(0, std::sin(phi / 2)) * ay;
}

enum class GateKind { Rx, Ry, Rz, CZ, ZX90, Custom };

struct Gate {
  GateKind kind = GateKind::Custom;
  double angle = 0.0;
  std::vector<int> targets;
  std::optional<ComplexMatrix> custom_matrix;

  static Gate rx(int q, double angle) { return {GateKind::Rx, angle, {q}, std::nullopt}; }
  static Gate ry(int q, double angle) { return {GateKind::Ry, angle, {q}, std::nullopt}; }
  static Gate rz(int q, double angle) { return {GateKind::Rz, angle, {q}, std::nullopt}; }
  static Gate cz(int control, int target) { return {GateKind::CZ, 0.0, {control, target}, std::nullopt}; }
  static Gate zx90(int control, int target) { return {GateKind::ZX90, 0.0, {control, target}, std::nullopt}; }
  static Gate entangler(Entangler e, int control, int target) {
    return e == Entangler::CZ ? cz(control, target) : zx90(control, target);
  }
  static Gate custom(ComplexMatrix m, std::vector<int> targets) {
    if (!is_unitary(m, kCheckTolerance)) throw ArgumentError("custom gate is not unitary");
    return {GateKind::Custom, 0.0, std::move(targets), std::move(m)};
  }

  ComplexMatrix matrix() const {
    switch (kind) {
      case GateKind::Rx: return rotation_gate(Axis::x, angle);
      case GateKind::Ry: return rotation_gate(Axis::y, angle);
      case GateKind::Rz: return rotation_gate(Axis::z, angle);
      case GateKind::CZ: return entangling_gate(Entangler::CZ);
      case GateKind::ZX90: return entangling_gate(Entangler::ZX90);
      case GateKind::Custom: break;
    }
    if (!custom_matrix) throw ArgumentError("custom gate without a matrix");
    return *custom_matrix;
  }

  bool is_single_qubit_rotation() const {
    return kind == GateKind::Rx || kind == GateKind::Ry || kind == GateKind::Rz;
  }
};

/// Ordered gate list; gates[0] is applied first.
class Circuit {
 public:
  explicit Circuit(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1) throw ArgumentError("circuit needs at least one qubit");
  }

  Circuit& add(Gate g) {
    const std::size_t arity = (g.kind == GateKind::CZ || g.kind == GateKind::ZX90) ? 2
                              : g.is_single_qubit_rotation()                     ? 1
                                                                                 : g.targets.size();
    if (g.targets.size() != arity || arity == 0) throw ArgumentError("gate has the wrong number of targets");
    check_targets(g.targets, n_qubits_);
    gates_.push_back(std::move(g));
    return *this;
  }

  Circuit& append(const Circuit& other) {
    if (other.n_qubits_ != n_qubits_) throw DimensionError("append: register size mismatch");
    for (const auto& g : other.gates_) gates_.push_back(g);
    return *this;
  }

  int n_qubits() const noexcept { return n_qubits_; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }

  /// G_k ... G_2 G_1.
  ComplexMatrix unitary() const {
    ComplexMatrix u = identity(dim_for_qubits(n_qubits_));
    for (const auto& g : gates_) u = embed(g.matrix(), g.targets, n_qubits_) * u;
    return u;
  }

 private:
  int n_qubits_;
  std::vector<Gate> gates_;
};

}  // namespace qotoc
