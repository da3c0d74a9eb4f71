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

#include "qestim/sweep.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "qestim/errors.hpp"
#include "qestim/rng.hpp"
#include "qestim/tolerances.hpp"

namespace qestim {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("QESTIM_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Runs fn(0..n-1) over a thread pool; the first exception thrown by any
// worker is rethrown on the calling thread after all workers finish.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  threads = std::min<std::size_t>(std::max(threads, 1), n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::mutex guard;
  std::exception_ptr failure;
  const std::size_t chunk = (n + threads - 1) / threads;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    const std::size_t lo = t * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn, &guard, &failure] {
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(guard);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<double> axis_values(const AxisSpec& axis) {
  if (axis.count < 1) throw Error("axis '" + axis.name + "' needs at least one point");
  std::vector<double> v(axis.count);
  for (int i = 0; i < axis.count; ++i) {
    v[i] = axis.count == 1
               ? axis.min
               : axis.min + (axis.max - axis.min) * static_cast<double>(i) /
                                static_cast<double>(axis.count - 1);
  }
  return v;
}

NoiseSpec noise_of(const SweepSpec& spec) { return {spec.kappa, spec.jump, spec.dt}; }

bool is_bipartite(Model m) { return m != Model::DrivenQubit; }

void validate_form(const SweepSpec& spec) {
  const bool qubit_form = spec.observable == ObservableForm::Qubit;
  if (qubit_form != (spec.model == Model::DrivenQubit)) {
    throw Error("observable form does not match the model's Hilbert space");
  }
}

struct Point {
  ParamFamily family;
  double theta;
  double time;
};

/// Family and evaluation point once an axis value (if any) is applied.
Point make_point(const SweepSpec& spec, const std::string& axis_name, double axis_value) {
  double time = spec.time;
  double phi = spec.phi;
  double phi1 = spec.phi1;
  double phi2 = spec.phi2;
  if (!axis_name.empty()) {
    if (axis_name == "t") {
      time = axis_value;
    } else if (axis_name == "phi" && spec.model == Model::DrivenQubit) {
      phi = axis_value;
    } else if (axis_name == "phi1" && is_bipartite(spec.model)) {
      phi1 = axis_value;
      phi2 = axis_value;
    } else {
      throw Error("axis '" + axis_name + "' is not sweepable for this model/mode");
    }
  }
  switch (spec.model) {
    case Model::DrivenQubit:
      return {driven_qubit_family(spec.drive, phi), spec.theta, time};
    case Model::Bipartite:
      return {bipartite_family(spec.rabi, spec.coupling, phi1, phi2), spec.theta, time};
    case Model::BipartiteNoisy:
      return {lindblad_family(spec.rabi, spec.coupling, phi1, phi2, noise_of(spec)),
              spec.theta, time};
  }
  throw Error("unknown model");
}

PauliCoeffs coeffs_from(const std::map<std::string, double>& m, const std::string& prefix) {
  auto get = [&](const std::string& suffix) {
    const auto it = m.find(prefix + suffix);
    return it == m.end() ? 0.0 : it->second;
  };
  return {get("_s"), get("_x"), get("_y"), get("_z")};
}

/// Deviation observable from a flat coefficient block in canonical order.
ComplexMatrix deviation_matrix(ObservableForm form, const double* c) {
  const PauliCoeffs first{c[0], c[1], c[2], c[3]};
  switch (form) {
    case ObservableForm::Qubit:
      return pauli_combination(first);
    case ObservableForm::LocalElectron:
      return kron(pauli_combination(first), pauli_identity());
    case ObservableForm::LocalNucleus:
      return kron(pauli_identity(), pauli_combination(first));
    case ObservableForm::Joint: {
      const PauliCoeffs electron{c[4], c[5], c[6], c[7]};
      // nuclear coefficients come first in the vocabulary; electron is
      // the outer tensor factor
      return kron(pauli_combination(electron), pauli_combination(first));
    }
  }
  throw Error("unknown observable form");
}

int coefficient_count(ObservableForm form) {
  return form == ObservableForm::Joint ? 8 : 4;
}

}  // namespace

const std::vector<std::string>& coefficient_names(ObservableForm form) {
  static const std::vector<std::string> qubit{"a_s", "a_x", "a_y", "a_z"};
  static const std::vector<std::string> electron{"ae_s", "ae_x", "ae_y", "ae_z"};
  static const std::vector<std::string> nucleus{"an_s", "an_x", "an_y", "an_z"};
  static const std::vector<std::string> joint{"an_s", "an_x", "an_y", "an_z",
                                              "ae_s", "ae_x", "ae_y", "ae_z"};
  switch (form) {
    case ObservableForm::Qubit: return qubit;
    case ObservableForm::LocalElectron: return electron;
    case ObservableForm::LocalNucleus: return nucleus;
    case ObservableForm::Joint: return joint;
  }
  throw Error("unknown observable form");
}

Observable build_observable(ObservableForm form, const std::map<std::string, double>& coeffs) {
  const auto& names = coefficient_names(form);
  for (const auto& [key, value] : coeffs) {
    (void)value;
    if (std::find(names.begin(), names.end(), key) == names.end()) {
      throw Error("unknown coefficient '" + key + "' for this observable form");
    }
  }
  switch (form) {
    case ObservableForm::Qubit:
      return make_qubit_observable(coeffs_from(coeffs, "a"));
    case ObservableForm::LocalElectron:
      return make_local_outer_observable(coeffs_from(coeffs, "ae"));
    case ObservableForm::LocalNucleus:
      return make_local_inner_observable(coeffs_from(coeffs, "an"));
    case ObservableForm::Joint:
      return make_joint_observable(coeffs_from(coeffs, "ae"), coeffs_from(coeffs, "an"));
  }
  throw Error("unknown observable form");
}

SweepResult run_scatter(const SweepSpec& spec) {
  if (spec.mode != Mode::Scatter) throw Error("run_scatter: spec mode is not scatter");
  validate_form(spec);
  if (spec.axes.size() > 1) throw Error("scatter mode takes at most one axis");
  if (spec.samples < 0) throw Error("negative sample count");

  const bool has_axis = !spec.axes.empty();
  const std::vector<double> points =
      has_axis ? axis_values(spec.axes.front()) : std::vector<double>{0.0};
  const std::string axis_name = has_axis ? spec.axes.front().name : std::string{};

  const int ncoeff = coefficient_count(spec.observable);
  const std::size_t n_points = points.size();
  const std::size_t n_samples = static_cast<std::size_t>(spec.samples);

  // every random number is drawn before any evaluation starts
  std::vector<double> draws(n_points * n_samples * ncoeff);
  SampleStream stream(spec.seed);
  for (auto& d : draws) d = stream.uniform(-spec.delta_range, spec.delta_range);

  SweepResult result;
  result.spec = spec;
  result.rows.resize(n_points * n_samples);

  parallel_for(n_points, resolve_threads(spec.threads), [&](std::size_t pi) {
    const Point point = make_point(spec, axis_name, points[pi]);
    const EstimationContext ctx = make_context(point.family, point.theta, point.time);
    const Observable optimal = make_observable(ctx.sld_op);
    for (std::size_t si = 0; si < n_samples; ++si) {
      const std::size_t row_index = pi * n_samples + si;
      const double* block = draws.data() + row_index * ncoeff;
      SweepRow row;
      if (has_axis) row.axis = {points[pi]};
      row.sample = static_cast<std::int64_t>(si);
      row.qfi = ctx.qfi;
      const Observable a =
          make_observable(ctx.sld_op + deviation_matrix(spec.observable, block));
      row.distance = min_distance(a, ctx).first;
      try {
        row.variance = variance_error_propagation(a, ctx);
        row.lambda = lambda_decomposed(a, ctx, optimal);
      } catch (const DivergentVariance&) {
        row.variance.reset();
        row.lambda.reset();
        row.status = "divergent";
      }
      result.rows[row_index] = std::move(row);
    }
  });
  return result;
}

SweepResult run_grid(const SweepSpec& spec) {
  if (spec.mode != Mode::Grid) throw Error("run_grid: spec mode is not grid");
  validate_form(spec);
  if (spec.axes.size() != 2) throw Error("grid mode needs exactly two axes");
  if (spec.axes[0].count < 2 || spec.axes[1].count < 2) {
    throw Error("grid axes need at least two points each");
  }
  if (spec.axes[0].name == spec.axes[1].name) throw Error("grid axes must differ");

  const auto& names = coefficient_names(spec.observable);
  for (const auto& axis : spec.axes) {
    if (std::find(names.begin(), names.end(), axis.name) == names.end()) {
      throw Error("axis '" + axis.name + "' is not a coefficient of this observable form");
    }
    if (spec.fixed.count(axis.name) > 0) {
      throw Error("coefficient '" + axis.name + "' is both fixed and swept");
    }
  }
  for (const auto& [key, value] : spec.fixed) {
    (void)value;
    if (std::find(names.begin(), names.end(), key) == names.end()) {
      throw Error("unknown fixed coefficient '" + key + "'");
    }
  }

  const Point point = make_point(spec, "", 0.0);
  const EstimationContext ctx = make_context(point.family, point.theta, point.time);

  const std::vector<double> xs = axis_values(spec.axes[0]);
  const std::vector<double> ys = axis_values(spec.axes[1]);

  SweepResult result;
  result.spec = spec;
  result.rows.resize(xs.size() * ys.size());

  parallel_for(result.rows.size(), resolve_threads(spec.threads), [&](std::size_t idx) {
    const std::size_t xi = idx / ys.size();
    const std::size_t yi = idx % ys.size();
    std::map<std::string, double> coeffs = spec.fixed;
    coeffs[spec.axes[0].name] = xs[xi];
    coeffs[spec.axes[1].name] = ys[yi];
    const Observable a = build_observable(spec.observable, coeffs);

    SweepRow row;
    row.axis = {xs[xi], ys[yi]};
    row.qfi = ctx.qfi;
    row.distance = min_distance(a, ctx).first;
    try {
      row.variance = variance_error_propagation(a, ctx);
      row.lambda = *row.variance - 1.0 / ctx.qfi;
    } catch (const DivergentVariance&) {
      row.status = "divergent";
    }
    result.rows[idx] = std::move(row);
  });
  return result;
}

SweepResult run_curves(const SweepSpec& spec) {
  if (spec.mode != Mode::Curves) throw Error("run_curves: spec mode is not curves");
  if (!is_bipartite(spec.model)) {
    throw Error("curves mode reports subsystem bounds and needs a bipartite model");
  }
  if (spec.axes.size() != 1) throw Error("curves mode needs exactly one axis");

  const std::string& axis_name = spec.axes.front().name;
  const std::vector<double> points = axis_values(spec.axes.front());

  SweepResult result;
  result.spec = spec;
  result.rows.resize(points.size());

  parallel_for(points.size(), resolve_threads(spec.threads), [&](std::size_t pi) {
    const Point point = make_point(spec, axis_name, points[pi]);
    const auto state_pair = point.family.state_and_derivative_at(point.theta, point.time);
    const ComplexMatrix& rho = state_pair.first;
    const ComplexMatrix& drho = state_pair.second;
    SweepRow row;
    row.axis = {points[pi]};
    row.qfi = qfi(rho, drho);

    auto reduced_qfi = [&](Keep keep) {
      const ComplexMatrix r = partial_trace(rho, 2, 2, keep);
      const ComplexMatrix d = partial_trace(drho, 2, 2, keep).hermitian_part();
      return qfi(r, d);
    };
    row.qfi_electron = reduced_qfi(subsystem_keep(Subsystem::Electron));
    row.qfi_nucleus = reduced_qfi(subsystem_keep(Subsystem::Nucleus));
    if (*row.qfi_electron < tol::qfi_floor || *row.qfi_nucleus < tol::qfi_floor) {
      row.status = "unbounded-subsystem";
    }
    result.rows[pi] = std::move(row);
  });
  return result;
}

SweepResult run_sweep(const SweepSpec& spec) {
  switch (spec.mode) {
    case Mode::Scatter: return run_scatter(spec);
    case Mode::Grid: return run_grid(spec);
    case Mode::Curves: return run_curves(spec);
  }
  throw Error("unknown sweep mode");
}

namespace {

SweepSpec driven_base() {
  SweepSpec s;
  s.model = Model::DrivenQubit;
  s.observable = ObservableForm::Qubit;
  s.theta = 2.0;
  s.drive = 1.0;
  s.phi = kQuarterPi;
  return s;
}

SweepSpec bipartite_base() {
  SweepSpec s;
  s.model = Model::Bipartite;
  s.theta = 2.0;
  s.rabi = 3.0;
  s.coupling = 2.0;
  s.phi1 = kQuarterPi;
  s.phi2 = kQuarterPi;
  return s;
}

SweepSpec electron_grid_base() {
  SweepSpec s = bipartite_base();
  s.mode = Mode::Grid;
  s.observable = ObservableForm::LocalElectron;
  s.time = 2.0;
  s.axes = {{"ae_x", -1.0, 1.0, 101}, {"ae_y", -1.0, 1.0, 101}};
  s.fixed = {{"ae_s", -1.0}, {"ae_z", -0.25}};
  return s;
}

}  // namespace

std::optional<SweepSpec> figure_preset(const std::string& id) {
  if (id == "1a") {
    SweepSpec s = driven_base();
    s.mode = Mode::Scatter;
    s.time = 1.5;
    s.axes = {{"phi", 0.0, std::numbers::pi, 101}};
    s.samples = 20;
    return s;
  }
  if (id == "1b") {
    SweepSpec s = driven_base();
    s.mode = Mode::Scatter;
    s.axes = {{"t", 0.1, 10.0, 100}};
    s.samples = 20;
    return s;
  }
  if (id == "2") {
    SweepSpec s = driven_base();
    s.mode = Mode::Grid;
    s.time = 1.0;
    s.axes = {{"a_x", -1.0, 1.0, 101}, {"a_y", -1.0, 1.0, 101}};
    s.fixed = {{"a_s", -0.7}, {"a_z", 0.2}};
    return s;
  }
  if (id == "3a" || id == "3b") {
    return electron_grid_base();
  }
  if (id == "3c" || id == "3d") {
    SweepSpec s = bipartite_base();
    s.mode = Mode::Grid;
    s.observable = ObservableForm::Joint;
    s.time = 2.0;
    s.axes = {{"an_y", -1.0, 1.0, 101}, {"ae_y", -1.0, 1.0, 101}};
    s.fixed = {{"an_s", 2.0}, {"an_x", 1.0}, {"an_z", -1.0},
               {"ae_s", 0.0}, {"ae_x", 1.0}, {"ae_z", -0.5}};
    return s;
  }
  if (id == "4a") {
    SweepSpec s = bipartite_base();
    s.mode = Mode::Curves;
    s.time = 2.0;
    s.axes = {{"phi1", 0.0, std::numbers::pi, 101}};
    return s;
  }
  if (id == "4b") {
    SweepSpec s = bipartite_base();
    s.mode = Mode::Curves;
    s.axes = {{"t", 0.0, 10.0, 101}};
    return s;
  }
  if (id == "5") {
    SweepSpec s = driven_base();
    s.mode = Mode::Scatter;
    s.time = 1.0;
    s.samples = 200;
    return s;
  }
  if (id == "6" || id == "7") {
    SweepSpec s = electron_grid_base();
    s.model = Model::BipartiteNoisy;
    s.kappa = 0.2;
    s.jump = id == "6" ? NoiseSpec::Jump::Dephasing : NoiseSpec::Jump::Dissipation;
    s.dt = 1e-3;
    return s;
  }
  return std::nullopt;
}

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids{"1a", "1b", "2",  "3a", "3b", "3c",
                                            "3d", "4a", "4b", "5",  "6",  "7"};
  return ids;
}

}  // namespace qestim
