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


#include <qotoc/gates.hpp>
#include <qotoc/random.hpp>

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace {

using namespace qotoc;
namespace ref = qotoc_test;

TEST(Pauli, SingleQubitMatricesFollowTheZOneIsPlusConvention) {
  EXPECT_EQ(ref::max_diff(pauli_matrix(Pauli::X), ref::X2()), 0.0);
  EXPECT_EQ(ref::max_diff(pauli_matrix(Pauli::Y), ref::Y2()), 0.0);
  EXPECT_EQ(ref::max_diff(pauli_matrix(Pauli::Z), ref::Z2()), 0.0);
  // XY = iZ in this ordering as well.
  EXPECT_LT(ref::max_diff(ref::X2() * ref::Y2(), ref::kI * ref::Z2()), 1e-15);
}

TEST(Pauli, NamedStatesAreEigenstates) {
  const auto check = [](const PureState& s, const ComplexMatrix& p, double eig) {
    EXPECT_LT((p * s.amplitudes() - eig * s.amplitudes()).norm(), 1e-15);
  };
  check(states::z_plus(), ref::Z2(), +1);
  check(states::z_minus(), ref::Z2(), -1);
  check(states::x_plus(), ref::X2(), +1);
  check(states::x_minus(), ref::X2(), -1);
  check(states::y_plus(), ref::Y2(), +1);
  check(states::y_minus(), ref::Y2(), -1);
}

TEST(PauliString, ParseAndPrintRoundTrip) {
  const PauliString p = PauliString::parse("-xI_z");
  EXPECT_EQ(p.to_string(), "-XIIZ");
  EXPECT_EQ(p.sign(), -1);
  EXPECT_EQ(p.support(), (std::vector<int>{0, 3}));
  EXPECT_EQ(PauliString::parse(p.to_string()), p);
  EXPECT_EQ(PauliString::parse("ZZ").to_string(), "+ZZ");
  EXPECT_THROW(PauliString::parse("XQ"), ArgumentError);
  EXPECT_THROW(PauliString::parse("-"), ArgumentError);
  EXPECT_THROW(PauliString::parse(""), ArgumentError);
}

TEST(PauliString, MatrixMatchesKroneckerOracle) {
  for (const char* s : {"+XYZ", "-ZIX", "+IYI", "-YY"}) {
    EXPECT_LT(ref::max_diff(pauli_matrix(PauliString::parse(s)), ref::pauli(s)), 1e-15) << s;
  }
}

TEST(PauliString, CommutationAgreesWithMatrices) {
  RandomSource rng(21);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = rng.integer(1, 3);
    const PauliString a = rng.pauli_string(n, false), b = rng.pauli_string(n, false);
    const ComplexMatrix am = pauli_matrix(a), bm = pauli_matrix(b);
    const bool commute = max_abs(am * bm - bm * am) < 1e-12;
    EXPECT_EQ(a.commutes_with(b), commute) << a << " " << b;
    if (!commute) {
      EXPECT_LT(max_abs(am * bm + bm * am), 1e-12);
    }
  }
}

TEST(PauliString, SquaresToIdentity) {
  RandomSource rng(22);
  for (int rep = 0; rep < 20; ++rep) {
    const ComplexMatrix m = pauli_matrix(rng.pauli_string(3));
    EXPECT_LT(ref::max_diff(m * m, ComplexMatrix::Identity(8, 8)), 1e-15);
  }
}

TEST(Gates, RotationsAreHalfAngleExponentials) {
  RandomSource rng(23);
  const double theta = rng.uniform(-3.0, 3.0);
  EXPECT_LT(ref::max_diff(rotation_gate(Axis::x, theta), ref::expm(-ref::kI * theta / 2.0 * ref::X2())), 1e-13);
  EXPECT_LT(ref::max_diff(rotation_gate(Axis::y, theta), ref::expm(-ref::kI * theta / 2.0 * ref::Y2())), 1e-13);
  EXPECT_LT(ref::max_diff(rotation_gate(Axis::z, theta), ref::expm(-ref::kI * theta / 2.0 * ref::Z2())), 1e-13);
}

TEST(Gates, ControlledZIsDiagonalWithOneSignFlip) {
  // |1><1| (x) Z + |0><0| (x) I with Z = diag(-1, 1).
  const ComplexMatrix cz = entangling_gate(Entangler::CZ);
  ComplexMatrix expected = ComplexMatrix::Identity(4, 4);
  expected(2, 2) = -1.0;
  EXPECT_LT(ref::max_diff(cz, expected), 1e-15);
}

TEST(Gates, CrossResonanceIsExpOfZX) {
  const ComplexMatrix zx = ref::kron(ref::Z2(), ref::X2());
  EXPECT_LT(ref::max_diff(entangling_gate(Entangler::ZX90), ref::expm(-ref::kI * (std::numbers::pi / 4) * zx)), 1e-13);
}

TEST(Gates, CouplingUnitaryIsExpOfAY) {
  const PauliString a = PauliString::parse("-XZ");
  const double phi = 0.83;
  const ComplexMatrix ay = ref::kron(ref::pauli("-XZ"), ref::Y2());
  EXPECT_LT(ref::max_diff(coupling_unitary(a, phi), ref::expm(-ref::kI * (phi / 2) * ay)), 1e-13);
}

TEST(Circuit, ComposesInTimeOrder) {
  Circuit c(2);
  c.add(Gate::rx(0, 0.3)).add(Gate::cz(0, 1)).add(Gate::ry(1, -1.1));
  const ComplexMatrix g1 = ref::kron(ref::expm(-ref::kI * 0.15 * ref::X2()), ref::I2());
  const ComplexMatrix g2 = entangling_gate(Entangler::CZ);
  const ComplexMatrix g3 = ref::kron(ref::I2(), ref::expm(ref::kI * 0.55 * ref::Y2()));
  EXPECT_LT(ref::max_diff(c.unitary(), g3 * g2 * g1), 1e-13);
}

TEST(Circuit, ReversedControlEmbedsCorrectly) {
  Circuit c(2);
  c.add(Gate::zx90(1, 0));
  const ComplexMatrix xz = ref::kron(ref::X2(), ref::Z2());
  EXPECT_LT(ref::max_diff(c.unitary(), ref::expm(-ref::kI * (std::numbers::pi / 4) * xz)), 1e-13);
}

TEST(Circuit, ValidatesArityAndTargets) {
  Circuit c(2);
  EXPECT_THROW(c.add(Gate::cz(0, 2)), ArgumentError);
  EXPECT_THROW(c.add(Gate::cz(1, 1)), ArgumentError);
  EXPECT_THROW(c.add(Gate{GateKind::Rx, 0.1, {0, 1}, std::nullopt}), ArgumentError);
  EXPECT_THROW(Gate::custom(2.0 * ComplexMatrix::Identity(2, 2), {0}), ArgumentError);
  EXPECT_THROW(Circuit(0), ArgumentError);
}

}  // namespace
