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

#ifndef QESTIM_SWEEP_HPP
#define QESTIM_SWEEP_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qestim/models.hpp"

namespace qestim {

enum class Model { DrivenQubit, Bipartite, BipartiteNoisy };
enum class Mode { Scatter, Grid, Curves };

/// Which algebraic form the swept observable takes.
enum class ObservableForm { Qubit, LocalElectron, LocalNucleus, Joint };

struct AxisSpec {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  int count = 0;
};

/// Complete description of one dataset run. Identical specs (including
/// the seed) produce byte-identical results regardless of thread count.
struct SweepSpec {
  Model model = Model::DrivenQubit;
  Mode mode = Mode::Grid;
  ObservableForm observable = ObservableForm::Qubit;

  /// Swept quantities: observable coefficients in grid mode
  /// (e.g. "a_x", "ae_y", "an_y"), "phi"/"phi1"/"t" in scatter and
  /// curves modes.
  std::vector<AxisSpec> axes;
  /// Observable coefficients held fixed (grid mode).
  std::map<std::string, double> fixed;

  double theta = 2.0;  ///< estimated-parameter value (omega_a or omega_l)
  double time = 1.0;

  // driven-qubit constants
  double drive = 1.0;
  double phi = 0.7853981633974483;

  // bipartite constants
  double rabi = 3.0;
  double coupling = 2.0;
  double phi1 = 0.7853981633974483;
  double phi2 = 0.7853981633974483;

  // noise (bipartite-noisy model)
  double kappa = 0.2;
  NoiseSpec::Jump jump = NoiseSpec::Jump::Dephasing;
  double dt = 1e-3;

  std::uint64_t seed = 42;
  int samples = 0;            ///< scatter mode: deviations drawn per point
  double delta_range = 0.5;   ///< scatter deviations are uniform in [-r, r]
  int threads = 0;            ///< 0 = machine parallelism
};

/// One record of a dataset. Fields without a value were not computable
/// for this record (see status).
struct SweepRow {
  std::vector<double> axis;       ///< axis values, one per spec axis
  std::int64_t sample = -1;       ///< scatter sample index, -1 otherwise
  std::optional<double> variance;
  std::optional<double> qfi;
  std::optional<double> lambda;
  std::optional<double> distance;
  std::optional<double> qfi_nucleus;
  std::optional<double> qfi_electron;
  std::string status = "ok";      ///< ok | divergent | unbounded-subsystem
};

struct SweepResult {
  SweepSpec spec;  ///< fully resolved echo of the request
  std::vector<SweepRow> rows;
};

/// Random non-optimal observables around the saturating one: at each axis
/// point, `samples` deviations are drawn and added to the logarithmic
/// derivative. All draws happen up front in row-major order, so the
/// execution schedule cannot perturb the stream.
SweepResult run_scatter(const SweepSpec& spec);

/// Gap and commutant distance over a 2-D observable-coefficient grid,
/// rows in row-major axis order.
SweepResult run_grid(const SweepSpec& spec);

/// Global and subsystem Fisher information along one axis ("phi1" with
/// phi1 = phi2, or "t").
SweepResult run_curves(const SweepSpec& spec);

/// Dispatch on spec.mode.
SweepResult run_sweep(const SweepSpec& spec);

/// Built-in dataset presets by figure id: 1a, 1b, 2, 3a, 3b, 3c, 3d, 4a,
/// 4b, 5, 6, 7. Unknown ids give nullopt.
std::optional<SweepSpec> figure_preset(const std::string& id);

/// All valid preset ids.
const std::vector<std::string>& figure_ids();

/// Coefficient vocabulary of an observable form.
const std::vector<std::string>& coefficient_names(ObservableForm form);

/// Build the observable from a full coefficient map (missing names are
/// zero, unknown names are an error).
Observable build_observable(ObservableForm form, const std::map<std::string, double>& coeffs);

}  // namespace qestim

#endif  // QESTIM_SWEEP_HPP
