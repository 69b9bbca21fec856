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

// Brute-force reference values built from plain matrix products. Nothing in
// here touches Kraus operators or the sequence engine; the protocol results
// are checked against these.

#include <qotoc/core.hpp>

namespace qotoc::oracle {

namespace detail {

inline void check_square(const ComplexMatrix& rho, const ComplexMatrix& m, const char* what) {
  if (m.rows() != rho.rows() || m.cols() != rho.cols()) {
    throw DimensionError(std::string("oracle: ") + what + " does not match the state dimension");
  }
}

inline Complex trace_against(const ComplexMatrix& op, const ComplexMatrix& rho) { return (op * rho).trace(); }

}  // namespace detail

/// Tr(U^dag B U A rho).
inline Complex oracle_toc(const ComplexMatrix& rho, const ComplexMatrix& a, const ComplexMatrix& b,
                          const ComplexMatrix& u) {
  detail::check_square(rho, a, "A");
  detail::check_square(rho, b, "B");
  detail::check_square(rho, u, "U");
  const ComplexMatrix bt = u.adjoint() * b * u;
  return detail::trace_against(bt * a, rho);
}

/// F = Tr(B(t) A B(t) A rho), B(t) = U^dag B U.
inline Complex oracle_otoc(const ComplexMatrix& rho, const ComplexMatrix& a, const ComplexMatrix& b,
                           const ComplexMatrix& u) {
  detail::check_square(rho, a, "A");
  detail::check_square(rho, b, "B");
  detail::check_square(rho, u, "U");
  const ComplexMatrix bt = u.adjoint() * b * u;
  return detail::trace_against(bt * a * bt * a, rho);
}

enum class Bracket { anticommutator, commutator };

/// < [ ... {{A_m, A_{m-1}}, A_{m-2}} ..., A_1 ] > with each anticommutator
/// divided by 2 and each commutator by 2i. `brackets[k]` is the bracket that
/// joins A_{k+1} (k = 0 is the outermost, pairing with A_1); an informative
/// first measurement gives an outer anticommutator, a noninformative one a
/// commutator. If `brackets` has m entries the last one describes how A_m
/// itself enters: anticommutator -> A_m, commutator -> [1, A_m]/2i = 0.
inline Complex oracle_nested(const ComplexMatrix& rho, const std::vector<ComplexMatrix>& observables,
                             const std::vector<Bracket>& brackets) {
  if (observables.empty()) throw ArgumentError("oracle_nested: empty observable list");
  const std::size_t m = observables.size();
  if (brackets.size() != m && brackets.size() + 1 != m) {
    throw DimensionError("oracle_nested: need m or m-1 bracket kinds for m observables");
  }
  for (const auto& o : observables) detail::check_square(rho, o, "observable");

  const Complex two_i(0, 2);
  ComplexMatrix acc = observables[m - 1];
  if (brackets.size() == m && brackets[m - 1] == Bracket::commutator) {
    const ComplexMatrix one = identity(rho.rows());
    acc = (one * acc - acc * one) / two_i;
  }
  // Fold outward: acc <- bracket(acc, A_k) for k = m-1, ..., 1.
  for (std::size_t k = m - 1; k-- > 0;) {
    const ComplexMatrix& ak = observables[k];
    if (brackets[k] == Bracket::anticommutator) {
      acc = (acc * ak + ak * acc) / 2.0;
    } else {
      acc = (acc * ak - ak * acc) / two_i;
    }
  }
  return detail::trace_against(acc, rho);
}

/// 1 - < [B,A]^dag [B,A] > / 4, the complement of the Hermitian square of the
/// commutator normalised by 2i.
inline Complex commutator_square_complement(const ComplexMatrix& rho, const ComplexMatrix& a,
                                            const ComplexMatrix& bt) {
  detail::check_square(rho, a, "A");
  detail::check_square(rho, bt, "B(t)");
  const ComplexMatrix c = bt * a - a * bt;
  return 1.0 - detail::trace_against(c.adjoint() * c, rho) / 4.0;
}

}  // namespace qotoc::oracle
