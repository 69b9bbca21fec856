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


// Acceptance suite: one line per criterion, exit status 0 only if all pass.
// Instances come from fixed seeds chosen before the first run.

#include <qotoc/qotoc.hpp>

#include <chrono>
#include <cstdio>
#include <string>

#include "oracles.hpp"

namespace {

using namespace qotoc;
namespace ref = qotoc_test;
using oracle::Bracket;
constexpr double kPi = std::numbers::pi;

int g_failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("[%s] %2d %-28s %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void povm_identity() {
  RandomSource rng(101);
  double worst = 0;
  for (int k = 0; k < 200; ++k) {
    const ComplexMatrix a = pauli_matrix(rng.pauli_string(rng.integer(1, 3)));
    const double phi = rng.strength();
    const KrausPair m = informative_kraus(a, phi);
    ComplexMatrix sum = ComplexMatrix::Zero(a.rows(), a.cols());
    for (int out : {0, 1}) sum += generalized_eigenvalue(phi, out) * m[out].adjoint() * m[out];
    worst = std::max(worst, max_abs_diff(sum, a));
  }
  report(1, "povm-identity", worst < 1e-10, fmt("max residual %.3e (tol 1e-10, 200 instances)", worst));
}

void isolation() {
  RandomSource rng(102);
  double worst = 0;
  const Complex two_i(0, 2);
  for (int k = 0; k < 200; ++k) {
    const int n = rng.integer(1, 3);
    const ComplexMatrix a = pauli_matrix(rng.pauli_string(n));
    const ComplexMatrix b = rng.hermitian(dim_for_qubits(n));
    const ComplexMatrix rho = rng.density_matrix(n).matrix();
    const double phi = rng.strength();
    const KrausPair m = informative_kraus(a, phi), nk = noninformative_kraus(a, phi);
    const Eigen::Index d = a.rows();
    ComplexMatrix sm = ComplexMatrix::Zero(d, d), sn = sm, hm = sm, hn = sm;
    for (int out : {0, 1}) {
      const double al = generalized_eigenvalue(phi, out);
      sm += al * m[out] * rho * m[out].adjoint();
      sn += al * nk[out] * rho * nk[out].adjoint();
      hm += al * m[out].adjoint() * b * m[out];
      hn += al * nk[out].adjoint() * b * nk[out];
    }
    worst = std::max({worst, ref::max_diff(sm, (a * rho + rho * a) / 2.0), ref::max_diff(sn, (a * rho - rho * a) / two_i),
                      ref::max_diff(hm, (b * a + a * b) / 2.0), ref::max_diff(hn, (b * a - a * b) / two_i)});
  }
  report(2, "isolation-identities", worst < 1e-10, fmt("max residual %.3e (tol 1e-10, 200 instances x 4 forms)", worst));
}

std::array<double, 4> four_phis(RandomSource& rng) {
  return {rng.strength(), rng.strength(), rng.strength(), rng.strength()};
}

void strength_independence() {
  RandomSource rng(103);
  double spread = 0, oracle_gap = 0;
  for (int k = 0; k < 50; ++k) {
    const DensityMatrix rho = rng.density_matrix(3);
    const PauliString a = rng.pauli_string(3), b = rng.pauli_string(3);
    const Propagator u = propagator(rng.hermitian(8), rng.uniform(0.0, 2.0));
    const Complex toc_ref = oracle::oracle_toc(rho.matrix(), pauli_matrix(a), pauli_matrix(b), u.matrix);
    const Complex otoc_ref = oracle::oracle_otoc(rho.matrix(), pauli_matrix(a), pauli_matrix(b), u.matrix);
    double lo[4] = {1e300, 1e300, 1e300, 1e300}, hi[4] = {-1e300, -1e300, -1e300, -1e300};
    for (int v = 0; v < 10; ++v) {
      const auto p = four_phis(rng);
      const double vals[4] = {
          toc(rho, a, b, u, Part::real, {p[0], p[1]}).value.real(),
          toc(rho, a, b, u, Part::imag, {p[0], p[1]}).value.imag(),
          otoc_from_average(Part::real, otoc(rho, a, b, u, Part::real, p).value.real()),
          otoc_from_average(Part::imag, otoc(rho, a, b, u, Part::imag, p).value.imag())};
      const double refs[4] = {toc_ref.real(), toc_ref.imag(), otoc_ref.real(), otoc_ref.imag()};
      for (int j = 0; j < 4; ++j) {
        lo[j] = std::min(lo[j], vals[j]);
        hi[j] = std::max(hi[j], vals[j]);
        oracle_gap = std::max(oracle_gap, std::abs(vals[j] - refs[j]));
      }
    }
    for (int j = 0; j < 4; ++j) spread = std::max(spread, hi[j] - lo[j]);
  }
  report(3, "strength-independence", spread < 1e-10 && oracle_gap < 1e-10,
         fmt("spread %.3e, oracle gap %.3e (tol 1e-10, 50 instances x 10 angle vectors)", spread, oracle_gap));
}

void projective_reduction() {
  RandomSource rng(104);
  double worst = 0;
  for (int k = 0; k < 50; ++k) {
    const ComplexMatrix a = pauli_matrix(rng.pauli_string(rng.integer(1, 3)));
    const ComplexMatrix one = ComplexMatrix::Identity(a.rows(), a.cols());
    const KrausPair m = informative_kraus(a, kPi / 2);
    worst = std::max({worst, ref::max_diff(m[1], (one + a) / 2.0), ref::max_diff(m[0], -(one - a) / 2.0)});
  }
  const double alpha_gap =
      std::max(std::abs(generalized_eigenvalue(kPi / 2, 1) - 1.0), std::abs(generalized_eigenvalue(kPi / 2, 0) + 1.0));
  report(4, "projective-reduction", worst < 1e-12 && alpha_gap < 1e-12,
         fmt("Kraus vs signed projectors %.3e, |alpha| - 1 = %.3e (tol 1e-12)", worst, alpha_gap));
}

void noninformative_flatness() {
  RandomSource rng(105);
  double worst = 0;
  for (int k = 0; k < 100; ++k) {
    const int n = rng.integer(1, 3);
    const DensityMatrix rho = rng.density_matrix(n);
    const PauliString p = rng.pauli_string(n);
    const double phi = rng.strength();
    std::vector<int> targets(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) targets[static_cast<std::size_t>(q)] = q;
    for (int out : {0, 1}) {
      const auto u = state_update(rho, MeasurementSpec(p, phi, MeasurementKind::noninformative), out, targets);
      worst = std::max(worst, std::abs(u.probability - 0.5));
    }
  }
  report(5, "noninformative-flatness", worst < 1e-12, fmt("max |P - 1/2| %.3e (tol 1e-12, 100 states)", worst));
}

void synthesis_contract() {
  RandomSource rng(106);
  double worst = 0;
  for (int k = 0; k < 100; ++k) {
    const PauliString a = rng.pauli_string(rng.integer(1, 3));
    const double phi = rng.strength();
    const auto kind = rng.coin() ? MeasurementKind::informative : MeasurementKind::noninformative;
    const auto gateset = rng.coin() ? Entangler::CZ : Entangler::ZX90;
    const KrausPair induced = induced_kraus(synthesize_measurement_circuit(a, phi, kind, gateset));
    const KrausPair analytic = kraus(pauli_matrix(a), phi, kind);
    for (int out : {0, 1}) worst = std::max(worst, ref::phase_free_diff(induced[out], analytic[out]));
  }
  report(6, "circuit-synthesis-contract", worst < 1e-10, fmt("max phase-free distance %.3e (tol 1e-10, 100 circuits)", worst));
}

void otoc_chain() {
  RandomSource rng(107);
  double gap = 0, max_re = -1e300, f0_gap = 0;
  for (int k = 0; k < 50; ++k) {
    const int n = rng.integer(2, 3);
    const DensityMatrix rho = rng.density_matrix(n);
    const PauliString a = rng.pauli_string(n), b = rng.pauli_string(n);
    const Propagator u = propagator(rng.hermitian(dim_for_qubits(n)), rng.uniform(0.0, 3.0));
    const ComplexMatrix am = pauli_matrix(a), bm = pauli_matrix(b);
    const double nested = otoc(rho, a, b, u, Part::real, four_phis(rng)).value.real();
    const double re_f = oracle::oracle_otoc(rho.matrix(), am, bm, u.matrix).real();
    const double csq = oracle::commutator_square_complement(rho.matrix(), am, heisenberg(bm, u)).real();
    gap = std::max({gap, std::abs(nested - (1 + re_f) / 2), std::abs((1 + re_f) / 2 - csq), std::abs(nested - csq)});
    max_re = std::max({max_re, re_f, 2 * nested - 1});

    // Disjoint supports at t = 0: A on the first qubit, B on the rest.
    std::vector<Pauli> fa(static_cast<std::size_t>(n), Pauli::I), fb(static_cast<std::size_t>(n), Pauli::I);
    fa[0] = static_cast<Pauli>(rng.integer(1, 3));
    for (int q = 1; q < n; ++q) fb[static_cast<std::size_t>(q)] = static_cast<Pauli>(rng.integer(0, 3));
    fb[static_cast<std::size_t>(n - 1)] = static_cast<Pauli>(rng.integer(1, 3));
    const Propagator id{ComplexMatrix::Identity(am.rows(), am.cols()), 0.0};
    const PauliString da(fa), db(fb);
    const double f0 = otoc_from_average(Part::real, otoc(rho, da, db, id, Part::real, four_phis(rng)).value.real());
    const double f0_im = otoc_from_average(Part::imag, otoc(rho, da, db, id, Part::imag, four_phis(rng)).value.imag());
    f0_gap = std::max({f0_gap, std::abs(f0 - 1.0), std::abs(f0_im)});
  }
  report(7, "otoc-chain-of-equalities", gap < 1e-10 && max_re <= 1 + 1e-10 && f0_gap < 1e-10,
         fmt("three-way gap %.3e, max Re F %.15f, |F(0) - 1| %.3e (tol 1e-10)", gap, max_re, f0_gap));
}

void statistical_bounds() {
  const auto t0 = std::chrono::steady_clock::now();
  RandomSource rng(108);
  const DensityMatrix rho = rng.density_matrix(2);
  const ComplexMatrix a = pauli_matrix(PauliString::parse("ZX")), b = pauli_matrix(PauliString::parse("XI"));
  const ComplexMatrix u = propagator(rng.hermitian(4), 0.6).matrix;
  const std::uint64_t n = 10000, runs = 200, seed = 1;
  const double phis[3] = {kPi / 2, kPi / 4, kPi / 8};
  double mse[3], ratio[3];
  bool ok = true;
  for (int j = 0; j < 3; ++j) {
    const std::vector<SequenceStep> steps = {measure(a, phis[j], MeasurementKind::informative), evolve(u),
                                             measure(b, phis[j], MeasurementKind::informative)};
    const double exact = nested_estimate(rho, steps).value.real();
    double sum_sq = 0, bound = 0;
    for (std::uint64_t r = 0; r < runs; ++r) {
      // One independent stream per run.
      const auto est = sample_protocol(rho, steps, {n, CounterRng(seed, r).next(), 1});
      const double e = est.value.real() - exact;
      sum_sq += e * e;
      bound = est.rms_bound;
    }
    mse[j] = sum_sq / static_cast<double>(runs);
    ratio[j] = mse[j] / (bound * bound);
    ok = ok && ratio[j] <= 1.1;
  }
  const bool smallest = mse[0] < mse[1] && mse[0] < mse[2];
  const double secs = seconds_since(t0);
  char buf[256];
  std::snprintf(buf, sizeof buf, "MSE/bound^2 = %.3f, %.3f, %.3f at pi/2, pi/4, pi/8 (max 1.1); pi/2 smallest: %s; %.1f s",
                ratio[0], ratio[1], ratio[2], smallest ? "yes" : "no", secs);
  report(8, "statistical-bounds", ok && smallest && secs < 120, buf);
}

void time_reversal() {
  RandomSource rng(109);
  double sector_gap = 0, otoc_gap = 0;
  for (int k = 0; k < 20; ++k) {
    const int n = rng.integer(1, 3);
    const ComplexMatrix h = rng.hermitian(dim_for_qubits(n));
    const double t = rng.uniform(0.0, 3.0);
    const ClockEvolution c = time_reversed_evolution(h, t);
    sector_gap = std::max({sector_gap, ref::max_diff(c.forward_sector, ref::expm(-ref::kI * t * h)),
                           ref::max_diff(c.backward_sector, ref::expm(ref::kI * t * h))});
    const DensityMatrix rho = rng.density_matrix(n);
    const PauliString a = rng.pauli_string(n), b = rng.pauli_string(n);
    const Propagator u = propagator(h, t);
    for (Part part : {Part::real, Part::imag}) {
      const auto p = four_phis(rng);
      otoc_gap = std::max(otoc_gap, std::abs(otoc(rho, a, b, u, part, p).value - otoc_clock(rho, a, b, c, part, p).value));
    }
  }
  report(9, "time-reversal-ancilla", sector_gap < 1e-10 && otoc_gap < 1e-9,
         fmt("sector gap %.3e (tol 1e-10), clock vs dagger OTOC %.3e (tol 1e-9)", sector_gap, otoc_gap));
}

void weak_limit() {
  RandomSource rng(110);
  double lo = 1e300, hi = -1e300;
  for (int k = 0; k < 50; ++k) {
    const int n = rng.integer(1, 2);
    const ComplexMatrix a = pauli_matrix(rng.pauli_string(n));
    const ComplexMatrix rho = rng.density_matrix(n).matrix();
    const auto kind = rng.coin() ? MeasurementKind::informative : MeasurementKind::noninformative;
    const int out = rng.integer(0, 1);
    const DetectorConfig det = canonical_detector(kind);
    const Complex dw = weak_value(1, det, det.readout[static_cast<std::size_t>(out)]);
    auto residual = [&](double phi) {
      const ComplexMatrix kk = kraus(a, phi, kind)[out];
      const ComplexMatrix upd = kk * rho * kk.adjoint();
      return max_abs(upd / upd.trace().real() - rho - weak_update_first_order(rho, a, phi, dw));
    };
    const double ratio = residual(1e-3) / residual(5e-4);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  report(10, "weak-limit-consistency", lo >= 3.5 && hi <= 4.5,
         fmt("residual ratio phi/(phi/2) in [%.4f, %.4f] (required [3.5, 4.5], 50 instances)", lo, hi));
}

void scrambling_run() {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentConfig c;
  c.system_size = 6;
  c.initial_state.kind = InitialStateSpec::Kind::maximally_mixed;
  c.observable_a = "ZIIIII";
  c.observable_b = "IIIIIZ";
  for (int k = 0; k < 40; ++k) c.times.push_back(0.25 * k);
  c.phis = {kPi / 2, kPi / 4, kPi / 4, kPi / 4};
  c.protocol = Protocol::otoc;
  c.mode = Mode::exact;
  const auto rows = run_experiment(c);
  double min_re = 1e300, t_min = 0;
  for (const auto& r : rows) {
    if (r.re_value < min_re) {
      min_re = r.re_value;
      t_min = r.t;
    }
  }
  const double f0 = std::abs(rows.front().re_value - 1.0);
  const double secs = seconds_since(t0);
  char buf[256];
  std::snprintf(buf, sizeof buf, "|F(0) - 1| %.3e, min Re F %.4f at t=%.2f (need < 0.9), 40 points in %.1f s", f0, min_re,
                t_min, secs);
  report(11, "end-to-end-scrambling", secs < 300 && f0 < 1e-10 && min_re < 0.9, buf);
}

}  // namespace

int main() {
  std::printf("qotoc acceptance suite\n");
  try {
    povm_identity();
    isolation();
    strength_independence();
    projective_reduction();
    noninformative_flatness();
    synthesis_contract();
    otoc_chain();
    statistical_bounds();
    time_reversal();
    weak_limit();
    scrambling_run();
  } catch (const std::exception& e) {
    std::printf("[FAIL] aborted: %s\n", e.what());
    return 1;
  }
  std::printf("%d of 11 criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
