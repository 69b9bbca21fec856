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

// Experiment configs (JSON in), result rows (CSV out) and the driver that runs
// a correlator protocol over a time grid. See README.md for the schema.

#include <qotoc/protocols.hpp>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace qotoc {

/// Config rejected. `line` is 0 when no position is known.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message, int line = 0)
      : Error(format(field, message, line)), field_(std::move(field)), line_(line) {}

  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& field, const std::string& message, int line) {
    std::string s = "config";
    if (line > 0) s += ":" + std::to_string(line);
    if (!field.empty()) s += ": field '" + field + "'";
    return s + ": " + message;
  }

  std::string field_;
  int line_;
};

enum class Protocol { toc, otoc };
enum class Reversal { direct_dagger, clock_ancilla };

inline std::string_view to_string(Protocol p) { return p == Protocol::toc ? "toc" : "otoc"; }
inline std::string_view to_string(Reversal r) {
  return r == Reversal::direct_dagger ? "direct-dagger" : "clock-ancilla";
}

struct InitialStateSpec {
  enum class Kind { label, maximally_mixed, amplitudes } kind = Kind::label;
  std::string label;                // Kind::label
  std::vector<Complex> amplitudes;  // Kind::amplitudes
};

struct HamiltonianSpec {
  bool named = true;  // mixed-field Ising with `ising`, else `terms`
  IsingParameters ising;
  std::vector<std::pair<double, std::string>> terms;
};

struct ExperimentConfig {
  int system_size = 0;
  InitialStateSpec initial_state;
  HamiltonianSpec hamiltonian;
  std::string observable_a;
  std::string observable_b;
  std::vector<double> times;
  std::vector<double> phis;  // resolved: 2 for toc, 4 for otoc
  Mode mode = Mode::exact;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  std::vector<Part> parts{Part::real, Part::imag};
  Protocol protocol = Protocol::otoc;
  Reversal reversal = Reversal::direct_dagger;
  unsigned threads = 1;
};

namespace detail {

using nlohmann::json;

// Best-effort line of the first occurrence of "key" in the raw text.
inline int line_of_key(std::string_view text, std::string_view key) {
  const std::string quoted = "\"" + std::string(key) + "\"";
  const auto pos = text.find(quoted);
  if (pos == std::string_view::npos) return 0;
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
}

inline int line_of_byte(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

class ConfigReader {
 public:
  explicit ConfigReader(std::string_view text) : text_(text) {}

  [[noreturn]] void fail(const std::string& field, const std::string& message) const {
    const auto dot = field.find_first_of(".[");
    throw ConfigError(field, message, line_of_key(text_, field.substr(0, dot)));
  }

  double number(const json& j, const std::string& field) const {
    if (!j.is_number()) fail(field, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(field, "must be finite");
    return v;
  }

  std::uint64_t unsigned_integer(const json& j, const std::string& field) const {
    if (!j.is_number_integer()) fail(field, "expected an integer");
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    const auto v = j.get<std::int64_t>();
    if (v < 0) fail(field, "must be non-negative");
    return static_cast<std::uint64_t>(v);
  }

  std::string string(const json& j, const std::string& field) const {
    if (!j.is_string()) fail(field, "expected a string");
    return j.get<std::string>();
  }

  PauliString pauli(const json& j, const std::string& field, int n) const {
    const std::string s = string(j, field);
    PauliString p = PauliString::identity(1);
    try {
      p = PauliString::parse(s);
    } catch (const Error& e) {
      fail(field, e.what());
    }
    if (p.n_qubits() != n) {
      fail(field, "'" + s + "' has " + std::to_string(p.n_qubits()) + " factors, system_size is " + std::to_string(n));
    }
    return p;
  }

 private:
  std::string_view text_;
};

inline const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "system_size", "initial_state", "hamiltonian", "observable_a", "observable_b", "times", "phis",
      "mode",        "trials",        "seed",        "parts",        "protocol",     "reversal", "threads"};
  return keys;
}

}  // namespace detail

inline ExperimentConfig parse_config(std::string_view text) {
  using nlohmann::json;
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what(), detail::line_of_byte(text, e.byte));
  } catch (const json::exception& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  const detail::ConfigReader rd(text);
  if (!root.is_object()) rd.fail("", "top level must be an object");
  for (const auto& [key, value] : root.items()) {
    const auto& keys = detail::known_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) rd.fail(key, "unknown field");
  }
  auto required = [&](const char* key) -> const json& {
    if (!root.contains(key)) throw ConfigError(key, "missing required field");
    return root.at(key);
  };

  ExperimentConfig c;

  // system_size
  {
    const auto n = rd.unsigned_integer(required("system_size"), "system_size");
    if (n < 1 || n > 12) rd.fail("system_size", "must be between 1 and 12");
    c.system_size = static_cast<int>(n);
  }
  const int n = c.system_size;

  // protocol, reversal
  if (root.contains("protocol")) {
    const auto s = rd.string(root["protocol"], "protocol");
    if (s == "toc") c.protocol = Protocol::toc;
    else if (s == "otoc") c.protocol = Protocol::otoc;
    else rd.fail("protocol", "expected \"toc\" or \"otoc\", got \"" + s + "\"");
  }
  if (root.contains("reversal")) {
    const auto s = rd.string(root["reversal"], "reversal");
    if (s == "direct-dagger") c.reversal = Reversal::direct_dagger;
    else if (s == "clock-ancilla") c.reversal = Reversal::clock_ancilla;
    else rd.fail("reversal", "expected \"direct-dagger\" or \"clock-ancilla\", got \"" + s + "\"");
  }

  // initial_state
  if (root.contains("initial_state")) {
    const json& s = root["initial_state"];
    if (s.is_string()) {
      const auto label = s.get<std::string>();
      if (label == "maximally-mixed") {
        c.initial_state.kind = InitialStateSpec::Kind::maximally_mixed;
      } else {
        if (static_cast<int>(label.size()) != n ||
            label.find_first_not_of("01") != std::string::npos) {
          rd.fail("initial_state", "expected \"maximally-mixed\" or a " + std::to_string(n) + "-bit label, got \"" +
                                       label + "\"");
        }
        c.initial_state.label = label;
      }
    } else if (s.is_object() && s.contains("amplitudes") && s.size() == 1) {
      const json& amps = s["amplitudes"];
      if (!amps.is_array() || static_cast<Eigen::Index>(amps.size()) != dim_for_qubits(n)) {
        rd.fail("initial_state.amplitudes", "expected " + std::to_string(dim_for_qubits(n)) + " [re, im] pairs");
      }
      c.initial_state.kind = InitialStateSpec::Kind::amplitudes;
      double norm = 0;
      for (std::size_t k = 0; k < amps.size(); ++k) {
        const std::string f = "initial_state.amplitudes[" + std::to_string(k) + "]";
        if (!amps[k].is_array() || amps[k].size() != 2) rd.fail(f, "expected [re, im]");
        const Complex z(rd.number(amps[k][0], f), rd.number(amps[k][1], f));
        norm += std::norm(z);
        c.initial_state.amplitudes.push_back(z);
      }
      if (std::abs(norm - 1.0) > kCheckTolerance) {
        rd.fail("initial_state.amplitudes", "amplitudes are not normalised (norm^2 = " + std::to_string(norm) + ")");
      }
    } else {
      rd.fail("initial_state", "expected a bit label, \"maximally-mixed\" or {\"amplitudes\": [...]}");
    }
  } else {
    c.initial_state.label = std::string(static_cast<std::size_t>(n), '0');
  }

  // hamiltonian
  if (root.contains("hamiltonian")) {
    const json& h = root["hamiltonian"];
    if (!h.is_object()) rd.fail("hamiltonian", "expected an object");
    if (h.contains("model")) {
      if (h.contains("terms")) rd.fail("hamiltonian", "give either \"model\" or \"terms\", not both");
      const auto model = rd.string(h["model"], "hamiltonian.model");
      if (model != "mixed_field_ising") rd.fail("hamiltonian.model", "unknown model \"" + model + "\"");
      if (n < 2) rd.fail("hamiltonian.model", "mixed_field_ising needs system_size >= 2");
      for (const auto& [key, value] : h.items()) {
        if (key == "model") continue;
        if (key == "J") c.hamiltonian.ising.coupling = rd.number(value, "hamiltonian.J");
        else if (key == "g") c.hamiltonian.ising.transverse = rd.number(value, "hamiltonian.g");
        else if (key == "h") c.hamiltonian.ising.longitudinal = rd.number(value, "hamiltonian.h");
        else rd.fail("hamiltonian." + key, "unknown parameter (expected J, g, h)");
      }
    } else if (h.contains("terms")) {
      if (h.size() != 1) rd.fail("hamiltonian", "a term list admits no other keys");
      c.hamiltonian.named = false;
      const json& terms = h["terms"];
      if (!terms.is_array()) rd.fail("hamiltonian.terms", "expected a list of [coefficient, \"pauli\"] pairs");
      for (std::size_t k = 0; k < terms.size(); ++k) {
        const std::string f = "hamiltonian.terms[" + std::to_string(k) + "]";
        if (!terms[k].is_array() || terms[k].size() != 2) rd.fail(f, "expected [coefficient, \"pauli\"]");
        const double coef = rd.number(terms[k][0], f);
        const PauliString p = rd.pauli(terms[k][1], f, n);
        if (p.sign() < 0) rd.fail(f, "put the sign in the coefficient, not the Pauli string");
        c.hamiltonian.terms.emplace_back(coef, p.to_string().substr(1));
      }
    } else {
      rd.fail("hamiltonian", "expected \"model\" or \"terms\"");
    }
  } else if (n < 2) {
    rd.fail("hamiltonian", "required when system_size is 1");
  }

  // observables
  c.observable_a = rd.pauli(required("observable_a"), "observable_a", n).to_string();
  c.observable_b = rd.pauli(required("observable_b"), "observable_b", n).to_string();
  if (PauliString::parse(c.observable_a).is_identity()) rd.fail("observable_a", "must not be the identity");
  if (PauliString::parse(c.observable_b).is_identity()) rd.fail("observable_b", "must not be the identity");

  // times
  {
    const json& t = required("times");
    if (t.is_array()) {
      if (t.empty()) rd.fail("times", "needs at least one value");
      for (std::size_t k = 0; k < t.size(); ++k) c.times.push_back(rd.number(t[k], "times[" + std::to_string(k) + "]"));
    } else if (t.is_object()) {
      for (const auto& [key, value] : t.items()) {
        if (key != "start" && key != "stop" && key != "count") rd.fail("times." + key, "unknown key (expected start, stop, count)");
      }
      if (!t.contains("start") || !t.contains("stop") || !t.contains("count")) {
        rd.fail("times", "a grid needs start, stop and count");
      }
      const double start = rd.number(t["start"], "times.start");
      const double stop = rd.number(t["stop"], "times.stop");
      const auto count = rd.unsigned_integer(t["count"], "times.count");
      if (count < 1 || count > 100000) rd.fail("times.count", "must be between 1 and 100000");
      for (std::uint64_t k = 0; k < count; ++k) {
        c.times.push_back(count == 1 ? start
                                     : start + (stop - start) * static_cast<double>(k) / static_cast<double>(count - 1));
      }
    } else {
      rd.fail("times", "expected a list or {start, stop, count}");
    }
  }

  // phis
  {
    const std::size_t m = c.protocol == Protocol::toc ? 2 : 4;
    if (root.contains("phis")) {
      const json& p = root["phis"];
      std::vector<double> vals;
      if (p.is_number()) {
        vals.assign(m, rd.number(p, "phis"));
      } else if (p.is_array()) {
        for (std::size_t k = 0; k < p.size(); ++k) vals.push_back(rd.number(p[k], "phis[" + std::to_string(k) + "]"));
        if (vals.size() == 1) vals.assign(m, vals[0]);
      } else {
        rd.fail("phis", "expected a number or a list");
      }
      if (vals.size() != m) {
        rd.fail("phis", "protocol " + std::string(to_string(c.protocol)) + " needs 1 or " + std::to_string(m) + " angles");
      }
      for (double v : vals) {
        try {
          check_strength(v);
        } catch (const ArgumentError&) {
          rd.fail("phis", "angles must lie in (0, pi/2], got " + std::to_string(v));
        }
      }
      c.phis = vals;
    } else {
      c.phis.assign(m, std::numbers::pi / 2);
    }
  }

  // mode, trials, seed, threads
  if (root.contains("mode")) {
    const auto s = rd.string(root["mode"], "mode");
    if (s == "exact") c.mode = Mode::exact;
    else if (s == "sampled") c.mode = Mode::sampled;
    else rd.fail("mode", "expected \"exact\" or \"sampled\", got \"" + s + "\"");
  }
  if (root.contains("trials")) {
    c.trials = rd.unsigned_integer(root["trials"], "trials");
    if (c.trials < 1) rd.fail("trials", "must be >= 1");
  }
  if (root.contains("seed")) c.seed = rd.unsigned_integer(root["seed"], "seed");
  if (root.contains("threads")) {
    const auto t = rd.unsigned_integer(root["threads"], "threads");
    if (t > 1024) rd.fail("threads", "must be at most 1024");
    c.threads = static_cast<unsigned>(t);
  }

  // parts
  if (root.contains("parts")) {
    const json& p = root["parts"];
    if (!p.is_array() || p.empty()) rd.fail("parts", "expected a non-empty subset of [\"real\", \"imag\"]");
    bool re = false, im = false;
    for (std::size_t k = 0; k < p.size(); ++k) {
      const auto s = rd.string(p[k], "parts[" + std::to_string(k) + "]");
      if (s == "real") re = true;
      else if (s == "imag") im = true;
      else rd.fail("parts", "unknown part \"" + s + "\"");
    }
    c.parts.clear();
    if (re) c.parts.push_back(Part::real);
    if (im) c.parts.push_back(Part::imag);
  }
  return c;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

/// Fully resolved config; parsing it again gives the same config.
inline nlohmann::ordered_json to_json(const ExperimentConfig& c) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["system_size"] = c.system_size;
  switch (c.initial_state.kind) {
    case InitialStateSpec::Kind::label: j["initial_state"] = c.initial_state.label; break;
    case InitialStateSpec::Kind::maximally_mixed: j["initial_state"] = "maximally-mixed"; break;
    case InitialStateSpec::Kind::amplitudes: {
      ordered_json amps = ordered_json::array();
      for (const auto& z : c.initial_state.amplitudes) amps.push_back({z.real(), z.imag()});
      j["initial_state"] = {{"amplitudes", amps}};
      break;
    }
  }
  if (c.hamiltonian.named) {
    j["hamiltonian"] = {{"model", "mixed_field_ising"},
                        {"J", c.hamiltonian.ising.coupling},
                        {"g", c.hamiltonian.ising.transverse},
                        {"h", c.hamiltonian.ising.longitudinal}};
  } else {
    ordered_json terms = ordered_json::array();
    for (const auto& [coef, p] : c.hamiltonian.terms) terms.push_back({coef, p});
    j["hamiltonian"] = {{"terms", terms}};
  }
  j["observable_a"] = c.observable_a;
  j["observable_b"] = c.observable_b;
  j["times"] = c.times;
  j["phis"] = c.phis;
  j["mode"] = std::string(to_string(c.mode));
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  ordered_json parts = ordered_json::array();
  for (Part p : c.parts) parts.push_back(std::string(to_string(p)));
  j["parts"] = parts;
  j["protocol"] = std::string(to_string(c.protocol));
  j["reversal"] = std::string(to_string(c.reversal));
  j["threads"] = c.threads;
  return j;
}

// ---------------------------------------------------------------------------
// Execution.

/// One line of output. Components that were not requested are NaN; exact
/// mode has zero stderr, zero rms_bound and zero trials.
struct ResultRow {
  double t = 0;
  double re_value = std::numeric_limits<double>::quiet_NaN();
  double im_value = std::numeric_limits<double>::quiet_NaN();
  double re_stderr = 0;
  double im_stderr = 0;
  double rms_bound = 0;
  Mode mode = Mode::exact;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

inline DensityMatrix build_initial_state(const ExperimentConfig& c) {
  switch (c.initial_state.kind) {
    case InitialStateSpec::Kind::maximally_mixed: return DensityMatrix::maximally_mixed(c.system_size);
    case InitialStateSpec::Kind::amplitudes: {
      ComplexVector v(static_cast<Eigen::Index>(c.initial_state.amplitudes.size()));
      for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = c.initial_state.amplitudes[static_cast<std::size_t>(k)];
      return DensityMatrix::from_pure(PureState::normalized(v));
    }
    case InitialStateSpec::Kind::label: break;
  }
  return DensityMatrix::basis(c.initial_state.label);
}

inline Hamiltonian build_hamiltonian(const ExperimentConfig& c) {
  if (c.hamiltonian.named) return build_mixed_field_ising(c.system_size, c.hamiltonian.ising);
  Hamiltonian h(c.system_size);
  for (const auto& [coef, p] : c.hamiltonian.terms) h.add(coef, PauliString::parse(p));
  return h;
}

namespace detail {

// Independent sampling stream per (time index, part).
inline std::uint64_t row_seed(std::uint64_t seed, std::size_t row, Part part) {
  CounterRng rng(seed, 2 * static_cast<std::uint64_t>(row) + (part == Part::imag ? 1 : 0));
  return rng.next();
}

inline void check_row(const ExperimentConfig& c, const ResultRow& r) {
  for (double v : {r.re_value, r.im_value}) {
    if (std::isinf(v)) throw InvariantViolation("finite-value", "non-finite correlator at t=" + std::to_string(r.t));
  }
  if (c.mode != Mode::exact) return;
  const double bound = 1.0 + kCheckTolerance;
  if (c.protocol == Protocol::otoc && !std::isnan(r.re_value) && r.re_value > bound) {
    throw InvariantViolation("otoc-real-bound", "Re F = " + std::to_string(r.re_value) + " > 1 at t=" + std::to_string(r.t));
  }
  for (double v : {r.re_value, r.im_value}) {
    if (!std::isnan(v) && std::abs(v) > bound) {
      throw InvariantViolation("correlator-magnitude", "|value| > 1 at t=" + std::to_string(r.t));
    }
  }
}

}  // namespace detail

/// Runs the protocol over the time grid. For the otoc protocol the rows
/// hold the components of F, converted from the sequence averages.
inline std::vector<ResultRow> run_experiment(const ExperimentConfig& c) {
  const DensityMatrix rho = build_initial_state(c);
  const Hamiltonian h = build_hamiltonian(c);
  const PauliString a = PauliString::parse(c.observable_a), b = PauliString::parse(c.observable_b);
  const Spectrum spectrum(h);
  const ComplexMatrix hm = h.matrix();

  std::vector<ResultRow> rows;
  rows.reserve(c.times.size());
  for (std::size_t i = 0; i < c.times.size(); ++i) {
    ResultRow row;
    row.t = c.times[i];
    row.mode = c.mode;
    row.seed = c.seed;
    row.trials = c.mode == Mode::sampled ? c.trials : 0;

    const Propagator u = spectrum.propagator(row.t);
    std::optional<ClockEvolution> clock;
    if (c.protocol == Protocol::otoc && c.reversal == Reversal::clock_ancilla) {
      clock = time_reversed_evolution(hm, row.t);
    }

    for (Part part : c.parts) {
      const ProtocolOptions opts{c.mode, c.trials, detail::row_seed(c.seed, i, part), c.threads};
      double value = 0, stderr_ = 0, bound = 0;
      if (c.protocol == Protocol::toc) {
        const auto est = toc(rho, a, b, u, part, {c.phis[0], c.phis[1]}, opts);
        value = part == Part::real ? est.value.real() : est.value.imag();
        stderr_ = est.empirical_stderr;
        bound = est.rms_bound;
      } else {
        const std::array<double, 4> phis{c.phis[0], c.phis[1], c.phis[2], c.phis[3]};
        const auto est = clock ? otoc_clock(rho, a, b, *clock, part, phis, opts) : otoc(rho, a, b, u, part, phis, opts);
        const double v = part == Part::real ? est.value.real() : est.value.imag();
        value = otoc_from_average(part, v);
        stderr_ = 2 * est.empirical_stderr;
        bound = 2 * est.rms_bound;
      }
      if (part == Part::real) {
        row.re_value = value;
        row.re_stderr = stderr_;
      } else {
        row.im_value = value;
        row.im_stderr = stderr_;
      }
      row.rms_bound = std::max(row.rms_bound, bound);
    }
    detail::check_row(c, row);
    rows.push_back(row);
  }
  return rows;
}

inline constexpr std::string_view kCsvHeader = "t,re_value,im_value,re_stderr,im_stderr,rms_bound,mode,trials,seed";

/// Shortest round-trip-safe rendering at 17 significant digits.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << format_double(r.t) << ',' << format_double(r.re_value) << ',' << format_double(r.im_value) << ','
        << format_double(r.re_stderr) << ',' << format_double(r.im_stderr) << ',' << format_double(r.rms_bound) << ','
        << to_string(r.mode) << ',' << r.trials << ',' << r.seed << '\n';
  }
}

inline std::string csv_string(const std::vector<ResultRow>& rows) {
  std::ostringstream ss;
  write_csv(ss, rows);
  return ss.str();
}

}  // namespace qotoc
