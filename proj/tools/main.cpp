// Copyright 2026 The qestim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Exit codes: 0 success, 2 I/O failure, 3 usage
// or configuration error, 4 numeric failure (divergent variance).

#include <cstdint>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qestim/errors.hpp"
#include "qestim/io.hpp"
#include "qestim/models.hpp"
#include "qestim/sweep.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kIoFailure = 2;
constexpr int kUsage = 3;
constexpr int kNumeric = 4;

struct PointOptions {
  std::string model = "driven-qubit";
  std::string observable;  // defaulted per model
  double theta = 2.0;
  double time = 1.0;
  double drive = 1.0;
  double phi = 0.7853981633974483;
  double rabi = 3.0;
  double coupling = 2.0;
  double phi1 = 0.7853981633974483;
  double phi2 = 0.7853981633974483;
  double kappa = 0.2;
  std::string jump = "dephasing";
  double dt = 1e-3;
  std::vector<std::string> coeffs;
  std::string output;
};

void add_point_flags(CLI::App* cmd, PointOptions& o, bool with_observable) {
  cmd->add_option("--model", o.model, "driven-qubit | bipartite | bipartite-noisy")
      ->check(CLI::IsMember({"driven-qubit", "bipartite", "bipartite-noisy"}));
  cmd->add_option("--theta", o.theta, "estimated-parameter value (omega_a or omega_l)");
  cmd->add_option("--time,-t", o.time, "evolution time");
  cmd->add_option("--drive", o.drive, "drive amplitude (driven qubit)");
  cmd->add_option("--phi", o.phi, "initial angle (driven qubit)");
  cmd->add_option("--rabi", o.rabi, "Rabi frequency (bipartite)");
  cmd->add_option("--coupling", o.coupling, "nucleus-electron coupling (bipartite)");
  cmd->add_option("--phi1", o.phi1, "nuclear initial angle");
  cmd->add_option("--phi2", o.phi2, "electronic initial angle");
  cmd->add_option("--kappa", o.kappa, "jump rate (bipartite-noisy)");
  cmd->add_option("--jump", o.jump, "dephasing | dissipation")
      ->check(CLI::IsMember({"dephasing", "dissipation"}));
  cmd->add_option("--dt", o.dt, "integrator step (bipartite-noisy)");
  cmd->add_option("--output", o.output, "write JSON here instead of stdout");
  if (with_observable) {
    cmd->add_option("--observable", o.observable,
                    "qubit | local-electron | local-nucleus | joint");
    cmd->add_option("--coeff", o.coeffs, "observable coefficient, e.g. --coeff a_x=0.3")
        ->expected(-1);
  }
}

qestim::ParamFamily family_of(const PointOptions& o) {
  if (o.model == "driven-qubit") return qestim::driven_qubit_family(o.drive, o.phi);
  if (o.model == "bipartite") {
    return qestim::bipartite_family(o.rabi, o.coupling, o.phi1, o.phi2);
  }
  qestim::NoiseSpec noise;
  noise.kappa = o.kappa;
  noise.jump = o.jump == "dissipation" ? qestim::NoiseSpec::Jump::Dissipation
                                       : qestim::NoiseSpec::Jump::Dephasing;
  noise.dt = o.dt;
  return qestim::lindblad_family(o.rabi, o.coupling, o.phi1, o.phi2, noise);
}

qestim::ObservableForm form_of(const PointOptions& o) {
  std::string name = o.observable;
  if (name.empty()) name = o.model == "driven-qubit" ? "qubit" : "local-electron";
  if (name == "qubit") return qestim::ObservableForm::Qubit;
  if (name == "local-electron") return qestim::ObservableForm::LocalElectron;
  if (name == "local-nucleus") return qestim::ObservableForm::LocalNucleus;
  if (name == "joint") return qestim::ObservableForm::Joint;
  throw qestim::Error("unknown observable form '" + name + "'");
}

std::map<std::string, double> parse_coeffs(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw qestim::Error("coefficient '" + item + "' is not of the form name=value");
    }
    try {
      out[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw qestim::Error("coefficient '" + item + "' has no numeric value");
    }
  }
  return out;
}

void emit(const std::string& output, const std::string& text) {
  if (output.empty()) {
    std::cout << text;
  } else {
    qestim::write_text_file(output, text);
  }
}

int run_figure(const std::string& id, const std::string& output,
               std::optional<std::uint64_t> seed, int threads) {
  auto preset = qestim::figure_preset(id);
  if (!preset.has_value()) {
    std::cerr << "unknown figure id '" << id << "'; valid ids:";
    for (const auto& v : qestim::figure_ids()) std::cerr << ' ' << v;
    std::cerr << '\n';
    return kUsage;
  }
  if (seed.has_value()) preset->seed = *seed;
  preset->threads = threads;
  const qestim::SweepResult result = qestim::run_sweep(*preset);
  qestim::write_text_file(output, qestim::to_csv(result));
  qestim::write_text_file(output + ".meta.json", qestim::spec_to_json(result.spec));
  return kOk;
}

int run_sweep_file(const std::string& spec_path, const std::string& output,
                   std::optional<std::uint64_t> seed, int threads) {
  qestim::SweepSpec spec = qestim::spec_from_file(spec_path);
  if (seed.has_value()) spec.seed = *seed;
  if (threads > 0) spec.threads = threads;
  const qestim::SweepResult result = qestim::run_sweep(spec);
  qestim::write_text_file(output, qestim::to_csv(result));
  qestim::write_text_file(output + ".meta.json", qestim::spec_to_json(result.spec));
  return kOk;
}

int run_point(const std::string& command, const PointOptions& o) {
  const qestim::ParamFamily family = family_of(o);
  const qestim::EstimationContext ctx = qestim::make_context(family, o.theta, o.time);
  nlohmann::ordered_json j;
  if (command == "qfi" || command == "sld") {
    j["qfi"] = ctx.qfi;
    j["qcrb"] = ctx.qfi > 0.0 ? 1.0 / ctx.qfi : std::numeric_limits<double>::infinity();
    if (command == "sld") {
      j["sld"] = nlohmann::ordered_json::parse(qestim::matrix_to_json(ctx.sld_op));
    }
    emit(o.output, j.dump(2) + "\n");
    return kOk;
  }
  const qestim::Observable a =
      qestim::build_observable(form_of(o), parse_coeffs(o.coeffs));
  const qestim::EstimationReport report = qestim::estimate(a, ctx);
  emit(o.output, qestim::report_to_json(report));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum single-parameter estimation toolkit"};
  app.require_subcommand(1);

  // figure
  std::string figure_id, figure_output;
  std::optional<std::uint64_t> seed;
  int threads = 0;
  CLI::App* figure = app.add_subcommand("figure", "run a built-in dataset preset");
  figure->add_option("id", figure_id, "preset id (1a 1b 2 3a 3b 3c 3d 4a 4b 5 6 7)")
      ->required();
  figure->add_option("--output", figure_output, "CSV output path")->required();
  figure->add_option("--seed", seed, "override the preset seed");
  figure->add_option("--threads", threads, "worker threads (default: machine parallelism)");

  // sweep
  std::string sweep_spec, sweep_output;
  CLI::App* sweep = app.add_subcommand("sweep", "run a sweep described by a JSON spec");
  sweep->add_option("--spec", sweep_spec, "spec file")->required();
  sweep->add_option("--output", sweep_output, "CSV output path")->required();
  sweep->add_option("--seed", seed, "override the spec seed");
  sweep->add_option("--threads", threads, "worker threads");

  // point commands
  PointOptions sld_opts, qfi_opts, lambda_opts, distance_opts;
  CLI::App* sld_cmd = app.add_subcommand("sld", "logarithmic derivative and Fisher information");
  add_point_flags(sld_cmd, sld_opts, false);
  CLI::App* qfi_cmd = app.add_subcommand("qfi", "Fisher information and Cramer-Rao bound");
  add_point_flags(qfi_cmd, qfi_opts, false);
  CLI::App* lambda_cmd =
      app.add_subcommand("lambda", "estimation report (gap to the bound) for an observable");
  add_point_flags(lambda_cmd, lambda_opts, true);
  CLI::App* distance_cmd =
      app.add_subcommand("distance", "estimation report (commutant distance) for an observable");
  add_point_flags(distance_cmd, distance_opts, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (figure->parsed()) return run_figure(figure_id, figure_output, seed, threads);
    if (sweep->parsed()) return run_sweep_file(sweep_spec, sweep_output, seed, threads);
    if (sld_cmd->parsed()) return run_point("sld", sld_opts);
    if (qfi_cmd->parsed()) return run_point("qfi", qfi_opts);
    if (lambda_cmd->parsed()) return run_point("lambda", lambda_opts);
    if (distance_cmd->parsed()) return run_point("distance", distance_opts);
  } catch (const qestim::IoError& e) {
    std::cerr << e.what() << '\n';
    return kIoFailure;
  } catch (const qestim::DivergentVariance&) {
    std::cerr << "divergent variance\n";
    return kNumeric;
  } catch (const qestim::Error& e) {
    std::cerr << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
  return kUsage;
}
