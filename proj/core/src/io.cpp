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

#include "qestim/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qestim/tolerances.hpp"

namespace qestim {

namespace {

using Json = nlohmann::ordered_json;

std::string model_name(Model m) {
  switch (m) {
    case Model::DrivenQubit: return "driven-qubit";
    case Model::Bipartite: return "bipartite";
    case Model::BipartiteNoisy: return "bipartite-noisy";
  }
  throw Error("unknown model");
}

Model model_from(const std::string& s) {
  if (s == "driven-qubit") return Model::DrivenQubit;
  if (s == "bipartite") return Model::Bipartite;
  if (s == "bipartite-noisy") return Model::BipartiteNoisy;
  throw Error("unknown model '" + s + "'");
}

std::string mode_name(Mode m) {
  switch (m) {
    case Mode::Scatter: return "scatter";
    case Mode::Grid: return "grid";
    case Mode::Curves: return "curves";
  }
  throw Error("unknown mode");
}

Mode mode_from(const std::string& s) {
  if (s == "scatter") return Mode::Scatter;
  if (s == "grid") return Mode::Grid;
  if (s == "curves") return Mode::Curves;
  throw Error("unknown mode '" + s + "'");
}

std::string form_name(ObservableForm f) {
  switch (f) {
    case ObservableForm::Qubit: return "qubit";
    case ObservableForm::LocalElectron: return "local-electron";
    case ObservableForm::LocalNucleus: return "local-nucleus";
    case ObservableForm::Joint: return "joint";
  }
  throw Error("unknown observable form");
}

ObservableForm form_from(const std::string& s) {
  if (s == "qubit") return ObservableForm::Qubit;
  if (s == "local-electron") return ObservableForm::LocalElectron;
  if (s == "local-nucleus") return ObservableForm::LocalNucleus;
  if (s == "joint") return ObservableForm::Joint;
  throw Error("unknown observable form '" + s + "'");
}

std::string jump_name(NoiseSpec::Jump j) {
  return j == NoiseSpec::Jump::Dephasing ? "dephasing" : "dissipation";
}

NoiseSpec::Jump jump_from(const std::string& s) {
  if (s == "dephasing") return NoiseSpec::Jump::Dephasing;
  if (s == "dissipation") return NoiseSpec::Jump::Dissipation;
  throw Error("unknown jump operator '" + s + "'");
}

void put_cell(std::string& out, const std::optional<double>& v) {
  if (v.has_value()) out += format_double(*v);
}

void put_inverse_cell(std::string& out, const std::optional<double>& v) {
  if (v.has_value() && *v >= tol::qfi_floor) out += format_double(1.0 / *v);
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string to_csv(const SweepResult& result) {
  const SweepSpec& spec = result.spec;
  std::string out;
  // header
  for (const auto& axis : spec.axes) {
    out += axis.name;
    out += ',';
  }
  switch (spec.mode) {
    case Mode::Scatter:
      out += "sample,variance,qfi,inv_qfi,lambda,distance,status";
      break;
    case Mode::Grid:
      out += "variance,qfi,lambda,distance,status";
      break;
    case Mode::Curves:
      out += "qfi,qfi_nucleus,qfi_electron,inv_qfi,inv_qfi_nucleus,inv_qfi_electron,status";
      break;
  }
  out += '\n';

  for (const auto& row : result.rows) {
    for (const double a : row.axis) {
      out += format_double(a);
      out += ',';
    }
    switch (spec.mode) {
      case Mode::Scatter:
        out += std::to_string(row.sample);
        out += ',';
        put_cell(out, row.variance);
        out += ',';
        put_cell(out, row.qfi);
        out += ',';
        put_inverse_cell(out, row.qfi);
        out += ',';
        put_cell(out, row.lambda);
        out += ',';
        put_cell(out, row.distance);
        out += ',';
        break;
      case Mode::Grid:
        put_cell(out, row.variance);
        out += ',';
        put_cell(out, row.qfi);
        out += ',';
        put_cell(out, row.lambda);
        out += ',';
        put_cell(out, row.distance);
        out += ',';
        break;
      case Mode::Curves:
        put_cell(out, row.qfi);
        out += ',';
        put_cell(out, row.qfi_nucleus);
        out += ',';
        put_cell(out, row.qfi_electron);
        out += ',';
        put_inverse_cell(out, row.qfi);
        out += ',';
        put_inverse_cell(out, row.qfi_nucleus);
        out += ',';
        put_inverse_cell(out, row.qfi_electron);
        out += ',';
        break;
    }
    out += row.status;
    out += '\n';
  }
  return out;
}

std::string spec_to_json(const SweepSpec& spec) {
  Json j;
  j["model"] = model_name(spec.model);
  j["mode"] = mode_name(spec.mode);
  j["observable"] = form_name(spec.observable);
  j["theta"] = spec.theta;
  j["time"] = spec.time;
  j["drive"] = spec.drive;
  j["phi"] = spec.phi;
  j["rabi"] = spec.rabi;
  j["coupling"] = spec.coupling;
  j["phi1"] = spec.phi1;
  j["phi2"] = spec.phi2;
  j["kappa"] = spec.kappa;
  j["jump"] = jump_name(spec.jump);
  j["dt"] = spec.dt;
  j["axes"] = Json::array();
  for (const auto& axis : spec.axes) {
    j["axes"].push_back(
        Json{{"name", axis.name}, {"min", axis.min}, {"max", axis.max}, {"count", axis.count}});
  }
  j["fixed"] = Json::object();
  for (const auto& [k, v] : spec.fixed) j["fixed"][k] = v;
  j["seed"] = spec.seed;
  j["samples"] = spec.samples;
  j["delta_range"] = spec.delta_range;
  j["threads"] = spec.threads;
  return j.dump(2) + "\n";
}

SweepSpec spec_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    throw Error(std::string("spec parse failure: ") + e.what());
  }
  try {
    SweepSpec spec;
    spec.model = model_from(j.at("model").get<std::string>());
    spec.mode = mode_from(j.at("mode").get<std::string>());
    if (j.contains("observable")) spec.observable = form_from(j["observable"]);
    if (j.contains("theta")) spec.theta = j["theta"];
    if (j.contains("time")) spec.time = j["time"];
    if (j.contains("drive")) spec.drive = j["drive"];
    if (j.contains("phi")) spec.phi = j["phi"];
    if (j.contains("rabi")) spec.rabi = j["rabi"];
    if (j.contains("coupling")) spec.coupling = j["coupling"];
    if (j.contains("phi1")) spec.phi1 = j["phi1"];
    if (j.contains("phi2")) spec.phi2 = j["phi2"];
    if (j.contains("kappa")) spec.kappa = j["kappa"];
    if (j.contains("jump")) spec.jump = jump_from(j["jump"]);
    if (j.contains("dt")) spec.dt = j["dt"];
    if (j.contains("axes")) {
      for (const auto& a : j["axes"]) {
        spec.axes.push_back({a.at("name").get<std::string>(), a.at("min").get<double>(),
                             a.at("max").get<double>(), a.at("count").get<int>()});
      }
    }
    if (j.contains("fixed")) {
      for (const auto& [k, v] : j["fixed"].items()) spec.fixed[k] = v.get<double>();
    }
    if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("samples")) spec.samples = j["samples"];
    if (j.contains("delta_range")) spec.delta_range = j["delta_range"];
    if (j.contains("threads")) spec.threads = j["threads"];
    return spec;
  } catch (const Json::exception& e) {
    throw Error(std::string("spec field error: ") + e.what());
  }
}

SweepSpec spec_from_file(const std::string& path) {
  return spec_from_json(read_text_file(path));
}

std::string report_to_json(const EstimationReport& report) {
  Json j;
  j["variance"] = report.variance;
  j["qfi"] = report.qfi;
  j["qcrb"] = report.qcrb;
  j["lambda"] = report.lambda;
  j["distance"] = report.distance;
  j["saturated"] = report.saturated;
  return j.dump(2) + "\n";
}

std::string matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.dim(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.dim(); ++c) {
      row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    }
    rows.push_back(row);
  }
  return rows.dump() + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace qestim
