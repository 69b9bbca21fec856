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


// qotoc command-line driver.
//
//   qotoc run --config cfg.json [--out results.csv] [--seed N] [--trials N]
//             [--mode exact|sampled] [--threads N]
//   qotoc verify [--samples N] [--seed N]
//
// Exit codes: 0 ok, 1 invalid input, 2 numerical invariant violated.

#include <qotoc/experiment.hpp>
#include <qotoc/verify.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitInvariant = 2;

namespace fs = std::filesystem;

fs::path sidecar_path(const fs::path& csv) {
  fs::path p = csv;
  p.replace_extension(".config.json");
  return p;
}

struct RunArgs {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  std::optional<std::string> mode;
  std::optional<unsigned> threads;
};

int do_run(const RunArgs& args) {
  qotoc::ExperimentConfig cfg = qotoc::load_config(args.config);
  if (args.seed) cfg.seed = *args.seed;
  if (args.trials) cfg.trials = *args.trials;
  if (args.mode) cfg.mode = *args.mode == "exact" ? qotoc::Mode::exact : qotoc::Mode::sampled;
  if (args.threads) cfg.threads = *args.threads;

  const fs::path out = args.out.empty() ? fs::path(args.config).stem().concat(".csv") : fs::path(args.out);
  const auto rows = qotoc::run_experiment(cfg);

  {
    std::ofstream csv(out, std::ios::binary);
    if (!csv) throw qotoc::ArgumentError("cannot write " + out.string());
    qotoc::write_csv(csv, rows);
  }
  const fs::path side = sidecar_path(out);
  {
    std::ofstream js(side, std::ios::binary);
    if (!js) throw qotoc::ArgumentError("cannot write " + side.string());
    js << qotoc::to_json(cfg).dump(2) << '\n';
  }
  std::cerr << "wrote " << rows.size() << " rows to " << out.string() << " (config echo: " << side.string() << ")\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequential qubit measurements and (out-of-)time-ordered correlators"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run a correlator experiment from a JSON config");
  run_cmd->add_option("--config", run.config, "Experiment config (JSON)")->required();
  run_cmd->add_option("--out", run.out, "CSV output path (default: <config stem>.csv)");
  run_cmd->add_option("--seed", run.seed, "Override the config seed");
  run_cmd->add_option("--trials", run.trials, "Override the trial count")->check(CLI::PositiveNumber);
  run_cmd->add_option("--mode", run.mode, "Override the mode")->check(CLI::IsMember({"exact", "sampled"}));
  run_cmd->add_option("--threads", run.threads, "Sampling threads (0 = all cores); does not change results");

  qotoc::VerifyOptions vopt;
  auto* verify_cmd = app.add_subcommand("verify", "Run the randomized identity suite");
  verify_cmd->add_option("--samples", vopt.samples, "Random instances per suite")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", vopt.seed, "Seed for instance generation");
  verify_cmd->add_flag("--inject-alpha-sign-fault", vopt.alpha_sign_fault,
                       "Flip the sign of every generalized eigenvalue (mutation check)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*run_cmd) return do_run(run);
    const auto report = qotoc::run_verify(vopt);
    qotoc::print_report(std::cout, report, vopt);
    return report.passed() ? kExitOk : kExitInvariant;
  } catch (const qotoc::InvariantViolation& e) {
    std::cerr << "error: numerical invariant '" << e.invariant() << "' violated: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const qotoc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}
