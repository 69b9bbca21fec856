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

// Sequential-measurement engine.
//
// A sequence interleaves generalized measurements with unitary evolutions.
// Each outcome string (a_1..a_m) has probability
//   P = Tr(K_m ... K_1 rho K_1^dag ... K_m^dag)       (unitaries interleaved)
// and weight prod_k alpha_{phi_k, a_k}. The weighted average is the expectation
// of a nested (anti)commutator, exactly, for every choice of strengths.
//
// Exact mode enumerates all 2^m strings. Sampled mode draws strings from the
// sequential Born rule, one full string per trial, with an independent
// counter-based random stream per (seed, trial).

#include <qotoc/dynamics.hpp>
#include <qotoc/measurement.hpp>
#include <qotoc/random.hpp>

#include <memory>
#include <thread>
#include <variant>

namespace qotoc {

enum class Mode { exact, sampled };
enum class Part { real, imag };

inline std::string_view to_string(Mode m) { return m == Mode::exact ? "exact" : "sampled"; }
inline std::string_view to_string(Part p) { return p == Part::real ? "real" : "imag"; }

struct MeasureStep {
  ComplexMatrix observable;  // on the full register, squares to the identity
  double phi = std::numbers::pi / 2;
  MeasurementKind kind = MeasurementKind::informative;
};

struct EvolveStep {
  std::shared_ptr<const ComplexMatrix> unitary;  // on the full register
  bool backward = false;                         // apply U^dag instead of U
  double duration = 0.0;
};

using SequenceStep = std::variant<MeasureStep, EvolveStep>;

inline MeasureStep measure(ComplexMatrix observable, double phi, MeasurementKind kind) {
  check_strength(phi);
  check_squares_to_identity(observable);
  return {std::move(observable), phi, kind};
}

inline MeasureStep measure(const MeasurementSpec& spec, std::span<const int> targets, int n_total) {
  return measure(embed(pauli_matrix(spec.observable()), targets, n_total), spec.phi(), spec.kind());
}

inline EvolveStep evolve(ComplexMatrix u, double duration = 0.0) {
  if (!is_unitary(u, kCheckTolerance)) throw ArgumentError("evolution operator is not unitary");
  return {std::make_shared<const ComplexMatrix>(std::move(u)), false, duration};
}

inline EvolveStep evolve(const Propagator& p) { return evolve(p.matrix, p.duration); }

inline EvolveStep evolve_backward(const Propagator& p) {
  EvolveStep s = evolve(p.matrix, p.duration);
  s.backward = true;
  return s;
}

struct OutcomeRecord {
  std::vector<int> outcomes;
  double weight = 0.0;       // prod alpha
  double probability = 0.0;  // exact mode
};

struct CorrelatorEstimate {
  Complex value;
  Mode mode = Mode::exact;
  std::vector<std::uint64_t> trials;  // per measurement stage; empty in exact mode
  double rms_bound = 0.0;
  double empirical_stderr = 0.0;
};

struct SamplingOptions {
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  unsigned threads = 1;  // 0 = hardware concurrency
};

/// 1 / sqrt(prod n_k * prod sin^2 phi_k).
inline double rms_bound(std::span<const double> phis, std::span<const std::uint64_t> trials) {
  if (phis.empty()) throw ArgumentError("rms_bound: empty angle list");
  if (phis.size() != trials.size()) throw DimensionError("rms_bound: angle and trial lists differ in length");
  double denom = 1.0;
  for (std::size_t k = 0; k < phis.size(); ++k) {
    check_strength(phis[k]);
    if (trials[k] < 1) throw ArgumentError("rms_bound: trial counts must be >= 1");
    const double s = std::sin(phis[k]);
    denom *= static_cast<double>(trials[k]) * s * s;
  }
  return 1.0 / std::sqrt(denom);
}

inline double rms_bound(std::initializer_list<double> phis, std::initializer_list<std::uint64_t> trials) {
  return rms_bound(std::span<const double>(phis.begin(), phis.size()),
                   std::span<const std::uint64_t>(trials.begin(), trials.size()));
}

namespace detail {

struct CompiledStep {
  bool is_measurement = false;
  std::array<ComplexMatrix, 2> kraus;  // measurement
  std::array<double, 2> alpha{};       // measurement
  ComplexMatrix unitary;               // evolution (already daggered if backward)
};

struct CompiledSequence {
  std::vector<CompiledStep> steps;
  std::vector<double> phis;
};

inline CompiledSequence compile(std::span<const SequenceStep> steps, Eigen::Index dim) {
  CompiledSequence out;
  for (const auto& step : steps) {
    CompiledStep c;
    if (const auto* m = std::get_if<MeasureStep>(&step)) {
      if (m->observable.rows() != dim) throw DimensionError("measurement observable does not match the state");
      const KrausPair k = kraus(m->observable, m->phi, m->kind);
      c.is_measurement = true;
      c.kraus = k.ops;
      c.alpha = {generalized_eigenvalue(m->phi, 0), generalized_eigenvalue(m->phi, 1)};
      out.phis.push_back(m->phi);
    } else {
      const auto& e = std::get<EvolveStep>(step);
      if (!e.unitary || e.unitary->rows() != dim) throw DimensionError("evolution operator does not match the state");
      c.unitary = e.backward ? ComplexMatrix(e.unitary->adjoint()) : *e.unitary;
    }
    out.steps.push_back(std::move(c));
  }
  if (out.phis.size() > 16) throw ArgumentError("at most 16 measurements per sequence");
  return out;
}

// Visits every outcome string; `visit(level, bits, weight, probability)` is
// called at every node of the outcome tree (level = measurements done so
// far, bits = outcomes packed with a_1 as the most significant bit).
template <typename Visit>
void walk_outcome_tree(const CompiledSequence& seq, std::size_t step, int level, std::uint32_t bits, double weight,
                       const ComplexMatrix& state, Visit&& visit) {
  std::size_t s = step;
  ComplexMatrix rho = state;
  while (s < seq.steps.size() && !seq.steps[s].is_measurement) {
    rho = seq.steps[s].unitary * rho * seq.steps[s].unitary.adjoint();
    ++s;
  }
  if (s == seq.steps.size()) return;
  const auto& m = seq.steps[s];
  for (int a : {0, 1}) {
    const ComplexMatrix& k = m.kraus[static_cast<std::size_t>(a)];
    ComplexMatrix next = k * rho * k.adjoint();
    const double p = next.trace().real();
    const double w = weight * m.alpha[static_cast<std::size_t>(a)];
    const std::uint32_t nb = (bits << 1) | static_cast<std::uint32_t>(a);
    visit(level + 1, nb, w, p);
    walk_outcome_tree(seq, s + 1, level + 1, nb, w, next, visit);
  }
}

inline std::size_t node_index(int level, std::uint32_t bits) { return (std::size_t{1} << level) - 1 + bits; }

// Sum of `xs` by recursive halving; the association order depends only on
// the length, never on how the values were produced.
inline double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double s = 0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

}  // namespace detail

/// All 2^m outcome strings with exact probabilities.
inline std::vector<OutcomeRecord> sequence_distribution(const DensityMatrix& initial,
                                                        std::span<const SequenceStep> steps) {
  const auto seq = detail::compile(steps, initial.dim());
  const int m = static_cast<int>(seq.phis.size());
  std::vector<OutcomeRecord> out;
  if (m == 0) return out;
  out.reserve(std::size_t{1} << m);
  detail::walk_outcome_tree(seq, 0, 0, 0U, 1.0, initial.matrix(),
                            [&](int level, std::uint32_t bits, double w, double p) {
                              if (level != m) return;
                              OutcomeRecord r;
                              r.outcomes.resize(static_cast<std::size_t>(m));
                              for (int k = 0; k < m; ++k) r.outcomes[static_cast<std::size_t>(k)] = (bits >> (m - 1 - k)) & 1U;
                              r.weight = w;
                              r.probability = p;
                              out.push_back(std::move(r));
                            });
  double total = 0;
  for (const auto& r : out) total += r.probability;
  if (std::abs(total - 1.0) > kCheckTolerance) {
    throw InvariantViolation("probability-normalisation",
                             "outcome probabilities sum to " + std::to_string(total));
  }
  return out;
}

inline std::vector<OutcomeRecord> sequence_distribution(const DensityMatrix& initial,
                                                        const std::vector<SequenceStep>& steps) {
  return sequence_distribution(initial, std::span<const SequenceStep>(steps));
}

/// Exact weighted average sum_a (prod alpha) P(a).
inline CorrelatorEstimate nested_estimate(const DensityMatrix& initial, std::span<const SequenceStep> steps) {
  const auto records = sequence_distribution(initial, steps);
  if (records.empty()) throw ArgumentError("nested_estimate: sequence contains no measurement");
  // Summed in enumeration order.
  double value = 0;
  for (const auto& r : records) value += r.weight * r.probability;
  CorrelatorEstimate est;
  est.value = value;
  est.mode = Mode::exact;
  return est;
}

inline CorrelatorEstimate nested_estimate(const DensityMatrix& initial, const std::vector<SequenceStep>& steps) {
  return nested_estimate(initial, std::span<const SequenceStep>(steps));
}

/// Monte Carlo estimate from `trials` independent outcome strings.
///
/// Outcomes follow the sequential Born rule: a_k is drawn with probability
/// P(a_1..a_k) / P(a_1..a_{k-1}), where the prefix probabilities come from
/// the same Kraus chain and are memoised once per call.
inline CorrelatorEstimate sample_protocol(const DensityMatrix& initial, std::span<const SequenceStep> steps,
                                          const SamplingOptions& opts) {
  if (opts.trials < 1) throw ArgumentError("sample_protocol: trials must be >= 1");
  const auto seq = detail::compile(steps, initial.dim());
  const int m = static_cast<int>(seq.phis.size());
  if (m == 0) throw ArgumentError("sample_protocol: sequence contains no measurement");

  std::vector<double> prefix((std::size_t{1} << (m + 1)) - 1, 0.0);
  std::vector<double> weight(prefix.size(), 1.0);
  prefix[0] = initial.matrix().trace().real();
  detail::walk_outcome_tree(seq, 0, 0, 0U, 1.0, initial.matrix(),
                            [&](int level, std::uint32_t bits, double w, double p) {
                              prefix[detail::node_index(level, bits)] = std::max(p, 0.0);
                              weight[detail::node_index(level, bits)] = w;
                            });

  const std::uint64_t n = opts.trials;
  std::vector<double> values(n);
  auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t trial = begin; trial < end; ++trial) {
      CounterRng rng(opts.seed, trial);
      std::uint32_t bits = 0;
      for (int level = 0; level < m; ++level) {
        const double parent = prefix[detail::node_index(level, bits)];
        const double p1 = prefix[detail::node_index(level + 1, (bits << 1) | 1U)];
        bits = (bits << 1) | (rng.uniform() * parent < p1 ? 1U : 0U);
      }
      values[trial] = weight[detail::node_index(m, bits)];
    }
  };

  unsigned threads = opts.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : opts.threads;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, n));
  if (threads <= 1) {
    run_range(0, n);
  } else {
    std::vector<std::jthread> pool;
    const std::uint64_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::uint64_t b = t * chunk, e = std::min(n, b + chunk);
      if (b < e) pool.emplace_back(run_range, b, e);
    }
  }

  const double mean = detail::pairwise_sum(values) / static_cast<double>(n);
  std::vector<double> sq(n);
  for (std::uint64_t i = 0; i < n; ++i) sq[i] = (values[i] - mean) * (values[i] - mean);
  const double var = n > 1 ? detail::pairwise_sum(sq) / static_cast<double>(n - 1) : 0.0;

  CorrelatorEstimate est;
  est.value = mean;
  est.mode = Mode::sampled;
  est.trials.assign(static_cast<std::size_t>(m), 1);
  est.trials[0] = n;
  est.rms_bound = rms_bound(seq.phis, est.trials);
  est.empirical_stderr = std::sqrt(var / static_cast<double>(n));
  return est;
}

inline CorrelatorEstimate sample_protocol(const DensityMatrix& initial, const std::vector<SequenceStep>& steps,
                                          const SamplingOptions& opts) {
  return sample_protocol(initial, std::span<const SequenceStep>(steps), opts);
}

// ---------------------------------------------------------------------------
// Correlator protocols.

struct ProtocolOptions {
  Mode mode = Mode::exact;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

inline CorrelatorEstimate run_sequence(const DensityMatrix& initial, const std::vector<SequenceStep>& steps,
                                       const ProtocolOptions& opts) {
  if (opts.mode == Mode::exact) return nested_estimate(initial, steps);
  return sample_protocol(initial, steps, {opts.trials, opts.seed, opts.threads});
}

namespace detail {

inline MeasurementKind first_kind(Part part) {
  return part == Part::real ? MeasurementKind::informative : MeasurementKind::noninformative;
}

inline ComplexMatrix system_observable(const PauliString& p, const DensityMatrix& initial, int extra = 0) {
  if (p.n_qubits() + extra != initial.n_qubits()) {
    throw DimensionError("observable " + p.to_string() + " does not match the " +
                         std::to_string(initial.n_qubits() - extra) + "-qubit system");
  }
  return pauli_matrix(p.padded(extra));
}

inline CorrelatorEstimate place(CorrelatorEstimate est, Part part) {
  if (part == Part::imag) est.value = Complex(0, est.value.real());
  return est;
}

}  // namespace detail

/// Two-point correlator <B(t) A>: measure A (M for the real part, N for the
/// imaginary part), evolve with U, measure B with M. The trailing inverse
/// evolution does not affect the statistics and is not applied. The result
/// is placed in the real or imaginary slot of `value`.
inline CorrelatorEstimate toc(const DensityMatrix& initial, const PauliString& a, const PauliString& b,
                              const Propagator& u, Part part, std::array<double, 2> phis,
                              const ProtocolOptions& opts = {}) {
  const ComplexMatrix am = detail::system_observable(a, initial), bm = detail::system_observable(b, initial);
  if (u.matrix.rows() != initial.dim()) throw DimensionError("toc: evolution does not match the system");
  const std::vector<SequenceStep> steps = {measure(am, phis[0], detail::first_kind(part)), evolve(u),
                                           measure(bm, phis[1], MeasurementKind::informative)};
  return detail::place(run_sequence(initial, steps, opts), part);
}

/// Four-point sequence M/N(A), U, M(B), U^dag, M(A), U, M(B). Returns the raw
/// weighted average v: Re F = 2v - 1 for the real part, Im F = 2v for the
/// imaginary part (see `otoc_from_average`). v sits in the slot named by
/// `part`.
inline CorrelatorEstimate otoc(const DensityMatrix& initial, const PauliString& a, const PauliString& b,
                               const Propagator& u, Part part, std::array<double, 4> phis,
                               const ProtocolOptions& opts = {}) {
  const ComplexMatrix am = detail::system_observable(a, initial), bm = detail::system_observable(b, initial);
  if (u.matrix.rows() != initial.dim()) throw DimensionError("otoc: evolution does not match the system");
  const std::vector<SequenceStep> steps = {
      measure(am, phis[0], detail::first_kind(part)), evolve(u),
      measure(bm, phis[1], MeasurementKind::informative), evolve_backward(u),
      measure(am, phis[2], MeasurementKind::informative), evolve(u),
      measure(bm, phis[3], MeasurementKind::informative)};
  return detail::place(run_sequence(initial, steps, opts), part);
}

/// Converts an OTOC sequence average to the matching component of F.
inline double otoc_from_average(Part part, double average) {
  return part == Part::real ? 2.0 * average - 1.0 : 2.0 * average;
}

/// exp(-it H (x) Z) with the clock qubit in the last slot. The clock in |1>
/// runs the system forward, exp(-itH); in |0> it runs backward, exp(+itH).
struct ClockEvolution {
  ComplexMatrix joint;
  ComplexMatrix forward_sector;   // clock |1>
  ComplexMatrix backward_sector;  // clock |0>
  double duration = 0.0;
};

inline ClockEvolution time_reversed_evolution(const ComplexMatrix& h, double t) {
  if (!is_hermitian(h, kCheckTolerance)) throw ArgumentError("time_reversed_evolution: H is not Hermitian");
  ClockEvolution c;
  c.duration = t;
  c.joint = exp_hermitian(tensor(h, pauli_matrix(Pauli::Z)), t);
  const Eigen::Index d = h.rows();
  c.forward_sector.resize(d, d);
  c.backward_sector.resize(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index col = 0; col < d; ++col) {
      c.forward_sector(r, col) = c.joint(2 * r + 1, 2 * col + 1);
      c.backward_sector(r, col) = c.joint(2 * r, 2 * col);
    }
  }
  const ComplexMatrix fwd = exp_hermitian(h, t);
  if (max_abs_diff(c.forward_sector, fwd) > kCheckTolerance ||
      max_abs_diff(c.backward_sector, fwd.adjoint()) > kCheckTolerance) {
    throw InvariantViolation("clock-sectors", "exp(-itH(x)Z) sectors do not match exp(-+itH)");
  }
  return c;
}

inline ClockEvolution time_reversed_evolution(const Hamiltonian& h, double t) {
  return time_reversed_evolution(h.matrix(), t);
}

/// OTOC with the backward leg run by the clock ancilla instead of U^dag.
/// The clock starts in |1>; the backward leg is X_clock, exp(-itH(x)Z),
/// X_clock. `initial` is the system state only.
inline CorrelatorEstimate otoc_clock(const DensityMatrix& initial, const PauliString& a, const PauliString& b,
                                     const ClockEvolution& clock, Part part, std::array<double, 4> phis,
                                     const ProtocolOptions& opts = {}) {
  if (clock.forward_sector.rows() != initial.dim()) throw DimensionError("otoc_clock: evolution does not match the system");
  const DensityMatrix joint = tensor(initial, DensityMatrix::basis("1"));
  const ComplexMatrix am = detail::system_observable(a, joint, 1), bm = detail::system_observable(b, joint, 1);
  const int n_total = joint.n_qubits();
  const ComplexMatrix flip = embed(pauli_matrix(Pauli::X), {n_total - 1}, n_total);
  const std::vector<SequenceStep> steps = {
      measure(am, phis[0], detail::first_kind(part)), evolve(clock.joint, clock.duration),
      measure(bm, phis[1], MeasurementKind::informative), evolve(flip), evolve(clock.joint, clock.duration),
      evolve(flip), measure(am, phis[2], MeasurementKind::informative), evolve(clock.joint, clock.duration),
      measure(bm, phis[3], MeasurementKind::informative)};
  return detail::place(run_sequence(joint, steps, opts), part);
}

}  // namespace qotoc
