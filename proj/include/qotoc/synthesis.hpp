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

// Gate-level realisation of the ancilla-coupled measurements.
//
// Layout: system qubits 0..n-1, ancilla qubit n (last slot), ancilla starts
// in |0>. The circuit is
//
//   prep      Ry(pi/2) on the ancilla                 |0> -> -|x->
//   U_A^dag   maps A back to Z on the pivot qubit
//   core      exp(-i phi/2 Z_pivot (x) Y_anc) from two entangling gates
//   U_A       with U_A Z_pivot U_A^dag = A
//   readout   z (informative) or Rx(pi/2) then z (noninformative)
//
// Only Rx/Ry/Rz and the chosen entangler appear. The induced system
// operators <a|U|0>_anc reproduce M or N up to a phase per outcome.

#include <qotoc/gates.hpp>
#include <qotoc/measurement.hpp>

namespace qotoc {

enum class Readout { z, y_via_rx };

struct MeasurementCircuit {
  Circuit circuit;
  int ancilla = 0;
  Readout readout = Readout::z;
};

namespace detail {

inline Gate inverse_rotation(const Gate& g) {
  Gate inv = g;
  inv.angle = -g.angle;
  return inv;
}

// Appends the inverse of `gates` (up to global phase) using only the gate set.
inline void append_inverse(Circuit& c, const std::vector<Gate>& gates) {
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
    switch (it->kind) {
      case GateKind::Rx:
      case GateKind::Ry:
      case GateKind::Rz: c.add(inverse_rotation(*it)); break;
      case GateKind::CZ: c.add(*it); break;
      case GateKind::ZX90:
        // ZX90^dag = -i ZX90 (Rz(pi) (x) Rx(pi)).
        c.add(Gate::rz(it->targets[0], std::numbers::pi));
        c.add(Gate::rx(it->targets[1], std::numbers::pi));
        c.add(*it);
        break;
      case GateKind::Custom: throw ArgumentError("cannot invert a custom gate within the native gate set");
    }
  }
}

// Single-qubit Clifford taking Z to the requested Pauli under conjugation.
inline std::optional<Gate> z_to(Pauli p, int q) {
  constexpr double kHalfPi = std::numbers::pi / 2;
  switch (p) {
    case Pauli::X: return Gate::ry(q, kHalfPi);   // Ry(pi/2) Z Ry(pi/2)^dag = X
    case Pauli::Y: return Gate::rx(q, -kHalfPi);  // Rx(-pi/2) Z Rx(-pi/2)^dag = Y
    default: return std::nullopt;
  }
}

}  // namespace detail

/// Gate list (time order) for U_A with U_A Z_pivot U_A^dag = A on an
/// (n+1)-qubit register, where the pivot is the first qubit in A's support.
inline std::vector<Gate> basis_change_gates(const PauliString& a, Entangler gateset) {
  constexpr double kHalfPi = std::numbers::pi / 2;
  const auto support = a.support();
  if (support.empty()) throw ArgumentError("cannot synthesise a measurement of the identity");
  const int pivot = support.front();

  std::vector<Gate> g;
  // Each fold takes the tracked operator Z_pivot (x) ... to -Z_j (x) Z_pivot (x) ...
  int sign = +1;
  for (std::size_t k = 1; k < support.size(); ++k) {
    const int j = support[k];
    if (gateset == Entangler::CZ) {
      g.push_back(Gate::ry(pivot, kHalfPi));   // Z_p -> X_p
      g.push_back(Gate::cz(j, pivot));         // X_p -> -Z_j X_p
      g.push_back(Gate::ry(pivot, -kHalfPi));  // X_p -> Z_p
    } else {
      g.push_back(Gate::zx90(j, pivot));      // Z_p -> -Z_j Y_p
      g.push_back(Gate::rx(pivot, kHalfPi));  // Y_p -> Z_p
    }
    sign = -sign;
  }
  for (int q : support) {
    if (auto r = detail::z_to(a[q], q)) g.push_back(*r);
  }
  if (sign != a.sign()) {
    // Rx(pi) Z Rx(pi)^dag = -Z, applied first.
    g.insert(g.begin(), Gate::rx(pivot, std::numbers::pi));
  }
  return g;
}

/// exp(-i phi/2 Z_pivot (x) Y_anc) up to global phase.
inline void append_core_coupling(Circuit& c, int pivot, int ancilla, double phi, Entangler gateset) {
  constexpr double kHalfPi = std::numbers::pi / 2;
  if (gateset == Entangler::CZ) {
    // CZ (1 (x) X) CZ = -Z (x) X, so CZ Rx(-phi) CZ = exp(-i phi/2 Z (x) X);
    // Rz(pi/2) then rotates X into Y on the ancilla.
    c.add(Gate::rz(ancilla, -kHalfPi));
    c.add(Gate::cz(pivot, ancilla));
    c.add(Gate::rx(ancilla, -phi));
    c.add(Gate::cz(pivot, ancilla));
    c.add(Gate::rz(ancilla, kHalfPi));
  } else {
    // ZX90 (1 (x) Z) ZX90^dag = -Z (x) Y, so ZX90 Rz(-phi) ZX90^dag is the
    // target; the first pulse together with Rz(pi) Rx(pi) realises ZX90^dag.
    c.add(Gate::rz(pivot, std::numbers::pi));
    c.add(Gate::rx(ancilla, std::numbers::pi));
    c.add(Gate::zx90(pivot, ancilla));
    c.add(Gate::rz(ancilla, -phi));
    c.add(Gate::zx90(pivot, ancilla));
  }
}

inline MeasurementCircuit synthesize_measurement_circuit(const PauliString& a, double phi, MeasurementKind kind,
                                                         Entangler gateset) {
  if (a.is_identity()) throw ArgumentError("cannot synthesise a measurement of the identity");
  check_strength(phi);
  const int n = a.n_qubits();
  const int ancilla = n;
  const PauliString padded = a.padded(1);

  MeasurementCircuit out{Circuit(n + 1), ancilla,
                         kind == MeasurementKind::informative ? Readout::z : Readout::y_via_rx};
  Circuit& c = out.circuit;
  c.add(Gate::ry(ancilla, std::numbers::pi / 2));

  const auto ua = basis_change_gates(padded, gateset);
  detail::append_inverse(c, ua);
  append_core_coupling(c, padded.support().front(), ancilla, phi, gateset);
  for (const auto& g : ua) c.add(g);

  if (kind == MeasurementKind::noninformative) c.add(Gate::rx(ancilla, std::numbers::pi / 2));
  return out;
}

/// System operators <a|_anc U |0>_anc for a = 0, 1 (ancilla in the last slot).
inline KrausPair induced_kraus(const MeasurementCircuit& mc) {
  const int n_total = mc.circuit.n_qubits();
  if (mc.ancilla != n_total - 1) throw ArgumentError("induced_kraus expects the ancilla in the last slot");
  const ComplexMatrix u = mc.circuit.unitary();
  const Eigen::Index sys = dim_for_qubits(n_total - 1);
  KrausPair k;
  for (int a : {0, 1}) {
    ComplexMatrix m(sys, sys);
    for (Eigen::Index r = 0; r < sys; ++r) {
      for (Eigen::Index col = 0; col < sys; ++col) m(r, col) = u(2 * r + a, 2 * col);
    }
    k.ops[static_cast<std::size_t>(a)] = std::move(m);
  }
  return k;
}

/// Largest per-outcome phase-aligned distance between two Kraus pairs.
inline double kraus_phase_distance(const KrausPair& x, const KrausPair& y) {
  return std::max(phase_aligned_distance(x[0], y[0]), phase_aligned_distance(x[1], y[1]));
}

}  // namespace qotoc
