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

#include <qotoc/core.hpp>

#include <numbers>
#include <ostream>

namespace qotoc {

enum class Pauli : std::uint8_t { I, X, Y, Z };

/// Single-qubit Pauli matrices in the (|0>, |1>) ordering:
///   X = |1><0| + |0><1|,  Y = -i|1><0| + i|0><1|,  Z = |1><1| - |0><0|.
/// They obey XY = iZ and cyclic permutations.
inline ComplexMatrix pauli_matrix(Pauli p) {
  using namespace std::complex_literals;
  ComplexMatrix m(2, 2);
  switch (p) {
    case Pauli::I: m << 1.0, 0.0, 0.0, 1.0; break;
    case Pauli::X: m << 0.0, 1.0, 1.0, 0.0; break;
    case Pauli::Y: m << 0.0, 1.0i, -1.0i, 0.0; break;
    case Pauli::Z: m << -1.0, 0.0, 0.0, 1.0; break;
  }
  return m;
}

inline char pauli_letter(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

// Named single-qubit states. z+ = |1>, z- = |0>,
// x+- = (|1> +- |0>)/sqrt2, y+- = (|1> +- i|0>)/sqrt2.
namespace states {

inline PureState z_plus() { return PureState::basis("1"); }
inline PureState z_minus() { return PureState::basis("0"); }

inline PureState x_plus() {
  ComplexVector v(2);
  v << 1.0, 1.0;
  return PureState::normalized(v);
}

inline PureState x_minus() {
  ComplexVector v(2);
  v << -1.0, 1.0;
  return PureState::normalized(v);
}

inline PureState y_plus() {
  ComplexVector v(2);
  v << Complex(0, 1), 1.0;
  return PureState::normalized(v);
}

inline PureState y_minus() {
  ComplexVector v(2);
  v << Complex(0, -1), 1.0;
  return PureState::normalized(v);
}

}  // namespace states

/// Signed tensor product of single-qubit Paulis. Text form is the sign
/// followed by one letter per qubit in slot order, e.g. "+XIZY" or "-ZZ".
class PauliString {
 public:
  PauliString() = default;

  PauliString(std::vector<Pauli> factors, int sign = +1) : factors_(std::move(factors)), sign_(sign) {
    if (factors_.empty()) throw ArgumentError("Pauli string must act on at least one qubit");
    if (sign_ != 1 && sign_ != -1) throw ArgumentError("Pauli string sign must be +1 or -1");
  }

  /// Identity everywhere except `p` on `qubit`.
  static PauliString single(int n_qubits, int qubit, Pauli p, int sign = +1) {
    if (n_qubits < 1) throw ArgumentError("Pauli string must act on at least one qubit");
    std::vector<Pauli> f(static_cast<std::size_t>(n_qubits), Pauli::I);
    if (qubit < 0 || qubit >= n_qubits) throw ArgumentError("qubit index out of range");
    f[static_cast<std::size_t>(qubit)] = p;
    return PauliString(std::move(f), sign);
  }

  static PauliString identity(int n_qubits) {
    if (n_qubits < 1) throw ArgumentError("Pauli string must act on at least one qubit");
    return PauliString(std::vector<Pauli>(static_cast<std::size_t>(n_qubits), Pauli::I));
  }

  /// Accepts an optional leading '+' or '-' and letters I, X, Y, Z
  /// (case-insensitive; '_' is read as I).
  static PauliString parse(std::string_view text) {
    int sign = +1;
    std::size_t pos = 0;
    if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
      sign = text[0] == '-' ? -1 : +1;
      pos = 1;
    }
    if (pos == text.size()) throw ArgumentError("Pauli string '" + std::string(text) + "' has no factors");
    std::vector<Pauli> f;
    for (; pos < text.size(); ++pos) {
      switch (text[pos]) {
        case 'I': case 'i': case '_': f.push_back(Pauli::I); break;
        case 'X': case 'x': f.push_back(Pauli::X); break;
        case 'Y': case 'y': f.push_back(Pauli::Y); break;
        case 'Z': case 'z': f.push_back(Pauli::Z); break;
        default:
          throw ArgumentError("invalid character '" + std::string(1, text[pos]) + "' in Pauli string '" +
                              std::string(text) + "'");
      }
    }
    return PauliString(std::move(f), sign);
  }

  std::string to_string() const {
    std::string s(1, sign_ < 0 ? '-' : '+');
    for (Pauli p : factors_) s.push_back(pauli_letter(p));
    return s;
  }

  int n_qubits() const noexcept { return static_cast<int>(factors_.size()); }
  int sign() const noexcept { return sign_; }
  Pauli operator[](int q) const { return factors_.at(static_cast<std::size_t>(q)); }
  const std::vector<Pauli>& factors() const noexcept { return factors_; }

  bool is_identity() const {
    return std::all_of(factors_.begin(), factors_.end(), [](Pauli p) { return p == Pauli::I; });
  }

  /// Qubits carrying a non-identity factor, ascending.
  std::vector<int> support() const {
    std::vector<int> s;
    for (int q = 0; q < n_qubits(); ++q) {
      if (factors_[static_cast<std::size_t>(q)] != Pauli::I) s.push_back(q);
    }
    return s;
  }

  /// Two Pauli strings commute iff they differ (both non-identity) on an even
  /// number of slots; otherwise they anticommute.
  bool commutes_with(const PauliString& other) const {
    if (other.n_qubits() != n_qubits()) throw DimensionError("commutes_with: length mismatch");
    int clashes = 0;
    for (std::size_t q = 0; q < factors_.size(); ++q) {
      const Pauli a = factors_[q], b = other.factors_[q];
      if (a != Pauli::I && b != Pauli::I && a != b) ++clashes;
    }
    return clashes % 2 == 0;
  }

  /// Appends `extra` identity slots (ancillas go last).
  PauliString padded(int extra) const {
    auto f = factors_;
    f.insert(f.end(), static_cast<std::size_t>(extra), Pauli::I);
    return PauliString(std::move(f), sign_);
  }

  PauliString negated() const { return PauliString(factors_, -sign_); }

  bool operator==(const PauliString&) const = default;

 private:
  std::vector<Pauli> factors_;
  int sign_ = +1;
};

inline std::ostream& operator<<(std::ostream& os, const PauliString& p) { return os << p.to_string(); }

/// sign * P_0 (x) P_1 (x) ... (x) P_{n-1}.
inline ComplexMatrix pauli_matrix(const PauliString& p) {
  ComplexMatrix out = ComplexMatrix::Ones(1, 1) * static_cast<double>(p.sign());
  for (Pauli f : p.factors()) out = tensor(out, pauli_matrix(f));
  return out;
}

}  // namespace qotoc
