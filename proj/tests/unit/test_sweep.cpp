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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qestim/errors.hpp"
#include "qestim/io.hpp"
#include "qestim/sweep.hpp"

using namespace qestim;

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

SweepSpec scatter_spec(int samples, std::uint64_t seed) {
  SweepSpec s;
  s.model = Model::DrivenQubit;
  s.mode = Mode::Scatter;
  s.observable = ObservableForm::Qubit;
  s.theta = 2.0;
  s.time = 1.5;
  s.samples = samples;
  s.seed = seed;
  return s;
}

}  // namespace

TEST_CASE("scatter with no samples is empty") {
  const SweepResult r = run_scatter(scatter_spec(0, 42));
  CHECK(r.rows.empty());
}

TEST_CASE("scatter rows sit on or above the bound") {
  const SweepResult r = run_scatter(scatter_spec(200, 42));
  REQUIRE(r.rows.size() == 200);
  for (const auto& row : r.rows) {
    REQUIRE(row.qfi.has_value());
    if (row.status == "divergent") {
      CHECK_FALSE(row.variance.has_value());
      CHECK_FALSE(row.lambda.has_value());
      continue;
    }
    REQUIRE(row.variance.has_value());
    REQUIRE(row.lambda.has_value());
    CHECK(*row.variance >= 1.0 / *row.qfi - 1e-9);
    CHECK(*row.lambda >= -1e-9);
    // the decomposed gap reproduces variance - 1/qfi
    CHECK(std::abs((*row.variance - *row.lambda) - 1.0 / *row.qfi) < 1e-10);
    CHECK(row.distance.has_value());
    CHECK(*row.distance >= 0.0);
  }
}

TEST_CASE("identical seeds give identical bytes, distinct seeds differ") {
  const SweepResult a = run_scatter(scatter_spec(50, 7));
  const SweepResult b = run_scatter(scatter_spec(50, 7));
  const SweepResult c = run_scatter(scatter_spec(50, 8));
  CHECK(to_csv(a) == to_csv(b));
  CHECK(to_csv(a) != to_csv(c));
}

TEST_CASE("serial and parallel execution agree exactly") {
  SweepSpec serial = scatter_spec(100, 42);
  serial.axes = {{"phi", 0.2, 2.8, 7}};
  serial.threads = 1;
  SweepSpec parallel = serial;
  parallel.threads = 4;
  CHECK(to_csv(run_scatter(serial)) == to_csv(run_scatter(parallel)));

  auto grid = figure_preset("2").value();
  grid.axes[0].count = 11;
  grid.axes[1].count = 11;
  SweepSpec grid_parallel = grid;
  grid.threads = 1;
  grid_parallel.threads = 4;
  CHECK(to_csv(run_grid(grid)) == to_csv(run_grid(grid_parallel)));
}

TEST_CASE("grid rows come out in row-major axis order") {
  SweepSpec s;
  s.model = Model::DrivenQubit;
  s.mode = Mode::Grid;
  s.observable = ObservableForm::Qubit;
  s.time = 1.0;
  s.axes = {{"a_x", 0.0, 1.0, 3}, {"a_y", -1.0, 1.0, 2}};
  s.fixed = {{"a_s", -0.7}, {"a_z", 0.2}};
  const SweepResult r = run_grid(s);
  REQUIRE(r.rows.size() == 6);
  const double xs[] = {0.0, 0.0, 0.5, 0.5, 1.0, 1.0};
  const double ys[] = {-1.0, 1.0, -1.0, 1.0, -1.0, 1.0};
  for (int i = 0; i < 6; ++i) {
    CHECK(r.rows[i].axis[0] == doctest::Approx(xs[i]));
    CHECK(r.rows[i].axis[1] == doctest::Approx(ys[i]));
  }
}

TEST_CASE("a grid pinned to multiples of L has vanishing gap and distance") {
  const ParamFamily fam = driven_qubit_family(1.0, kQuarterPi);
  const EstimationContext ctx = make_context(fam, 2.0, 1.0);
  // Pauli coordinates of the logarithmic derivative
  const double ls = 0.5 * ctx.sld_op.trace().real();
  const double lx = 0.5 * trace_product(ctx.sld_op, pauli_x()).real();
  const double ly = 0.5 * trace_product(ctx.sld_op, pauli_y()).real();
  const double lz = 0.5 * trace_product(ctx.sld_op, pauli_z()).real();

  SweepSpec s;
  s.model = Model::DrivenQubit;
  s.mode = Mode::Grid;
  s.observable = ObservableForm::Qubit;
  s.theta = 2.0;
  s.time = 1.0;
  s.axes = {{"a_x", lx, lx, 2}, {"a_y", ly, ly, 2}};
  s.fixed = {{"a_s", ls}, {"a_z", lz}};
  const SweepResult r = run_grid(s);
  REQUIRE(r.rows.size() == 4);
  for (const auto& row : r.rows) {
    REQUIRE(row.lambda.has_value());
    CHECK(std::abs(*row.lambda) < 1e-9);
    CHECK(*row.distance < 1e-9);
  }
}

TEST_CASE("low-gap and low-distance regions overlap on the coefficient plane") {
  auto s = figure_preset("2").value();
  s.axes[0].count = 41;
  s.axes[1].count = 41;
  const SweepResult r = run_grid(s);

  double best_lambda = 1e300, best_distance = 1e300;
  std::size_t argmin_lambda = 0, argmin_distance = 0;
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const auto& row = r.rows[i];
    if (row.lambda.has_value() && *row.lambda < best_lambda) {
      best_lambda = *row.lambda;
      argmin_lambda = i;
    }
    if (*row.distance < best_distance) {
      best_distance = *row.distance;
      argmin_distance = i;
    }
  }
  // quantile of D at the gap minimizer
  const double d_at_lambda_min = *r.rows[argmin_lambda].distance;
  std::size_t below_d = 0, below_l = 0, valid = 0;
  const double l_at_d_min = *r.rows[argmin_distance].lambda;
  for (const auto& row : r.rows) {
    if (*row.distance < d_at_lambda_min) ++below_d;
    if (row.lambda.has_value()) {
      ++valid;
      if (*row.lambda < l_at_d_min) ++below_l;
    }
  }
  CHECK(static_cast<double>(below_d) / r.rows.size() <= 0.40);
  CHECK(static_cast<double>(below_l) / valid <= 0.05);
}

TEST_CASE("grid validation") {
  SweepSpec s;
  s.model = Model::DrivenQubit;
  s.mode = Mode::Grid;
  s.observable = ObservableForm::Qubit;
  s.axes = {{"a_x", -1.0, 1.0, 3}};
  CHECK_THROWS_AS(run_grid(s), Error);  // needs two axes
  s.axes = {{"a_x", -1.0, 1.0, 3}, {"bogus", -1.0, 1.0, 3}};
  CHECK_THROWS_AS(run_grid(s), Error);  // unknown coefficient
  s.axes = {{"a_x", -1.0, 1.0, 3}, {"a_y", -1.0, 1.0, 1}};
  CHECK_THROWS_AS(run_grid(s), Error);  // too few points
  s.axes = {{"a_x", -1.0, 1.0, 3}, {"a_y", -1.0, 1.0, 3}};
  s.fixed = {{"a_y", 0.0}};
  CHECK_THROWS_AS(run_grid(s), Error);  // fixed and swept
  s.fixed = {{"ae_s", 0.0}};
  CHECK_THROWS_AS(run_grid(s), Error);  // fixed name outside the form
  s.fixed.clear();
  s.observable = ObservableForm::LocalElectron;
  CHECK_THROWS_AS(run_grid(s), Error);  // form does not match the model
}

TEST_CASE("subsystem bound curves") {
  SUBCASE("global information dominates along the angle sweep") {
    auto s = figure_preset("4a").value();
    s.axes[0].count = 15;
    const SweepResult r = run_curves(s);
    REQUIRE(r.rows.size() == 15);
    for (const auto& row : r.rows) {
      REQUIRE(row.qfi.has_value());
      CHECK(*row.qfi_electron <= *row.qfi + 1e-8);
      CHECK(*row.qfi_nucleus <= *row.qfi + 1e-8);
    }
  }
  SUBCASE("t = 0 rows are flagged as unbounded") {
    auto s = figure_preset("4b").value();
    s.axes[0].count = 5;
    const SweepResult r = run_curves(s);
    CHECK(r.rows.front().status == "unbounded-subsystem");
    CHECK(*r.rows.front().qfi < 1e-12);
  }
  SUBCASE("a decoupled electron carries no information") {
    auto s = figure_preset("4b").value();
    s.coupling = 0.0;
    s.axes[0] = {"t", 0.5, 4.0, 6};
    const SweepResult r = run_curves(s);
    for (const auto& row : r.rows) {
      CHECK(*row.qfi_electron <= 1e-12);
      CHECK(row.status == "unbounded-subsystem");
    }
  }
}

TEST_CASE("noise never improves the best achievable gap") {
  auto noisy = figure_preset("6").value();
  noisy.axes[0].count = 11;
  noisy.axes[1].count = 11;
  noisy.dt = 2e-3;
  auto quiet = noisy;
  quiet.kappa = 0.0;

  auto min_lambda = [](const SweepResult& r) {
    double best = 1e300;
    for (const auto& row : r.rows)
      if (row.lambda.has_value()) best = std::min(best, *row.lambda);
    return best;
  };
  const double noiseless_best = min_lambda(run_grid(quiet));
  for (const std::string id : {"6", "7"}) {
    auto s = figure_preset(id).value();
    s.axes[0].count = 11;
    s.axes[1].count = 11;
    s.dt = 2e-3;
    CHECK(min_lambda(run_grid(s)) >= noiseless_best);
  }
}

TEST_CASE("figure presets") {
  for (const auto& id : figure_ids()) {
    CAPTURE(id);
    CHECK(figure_preset(id).has_value());
  }
  CHECK_FALSE(figure_preset("9z").has_value());
  CHECK_FALSE(figure_preset("").has_value());

  const SweepResult five = run_sweep(figure_preset("5").value());
  CHECK(five.rows.size() == 200);

  auto two = figure_preset("2").value();
  CHECK(two.axes[0].count == 101);
  CHECK(two.axes[1].count == 101);
}

TEST_CASE("every preset mode executes at reduced resolution") {
  for (const auto& id : figure_ids()) {
    CAPTURE(id);
    auto s = figure_preset(id).value();
    for (auto& axis : s.axes) axis.count = std::min(axis.count, 7);
    s.samples = std::min(s.samples, 5);
    if (s.model == Model::BipartiteNoisy) s.dt = 5e-3;
    const SweepResult r = run_sweep(s);
    std::size_t expected = 1;
    for (const auto& axis : s.axes) expected *= axis.count;
    if (s.mode == Mode::Scatter) expected *= s.samples;
    CHECK(r.rows.size() == expected);
    for (const auto& row : r.rows) {
      if (row.lambda.has_value()) CHECK(*row.lambda >= -1e-9);
    }
  }
}

TEST_CASE("csv rendering") {
  const SweepResult r = run_scatter(scatter_spec(3, 42));
  const std::string csv = to_csv(r);
  CHECK(csv.rfind("sample,variance,qfi,inv_qfi,lambda,distance,status\n", 0) == 0);
  CHECK(csv.find("\r") == std::string::npos);
  // every line ends with LF and the table has header + 3 rows
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  // 17-significant-digit cells parse back to the exact double
  const auto first_comma = csv.find(',', csv.find('\n') + 1);
  const auto second_comma = csv.find(',', first_comma + 1);
  const std::string cell = csv.substr(first_comma + 1, second_comma - first_comma - 1);
  CHECK(std::stod(cell) == *r.rows[0].variance);
}

TEST_CASE("spec JSON round trip") {
  auto s = figure_preset("6").value();
  s.seed = 123456789ULL;
  s.samples = 17;
  const std::string text = spec_to_json(s);
  const SweepSpec back = spec_from_json(text);
  CHECK(spec_to_json(back) == text);
  CHECK(back.model == Model::BipartiteNoisy);
  CHECK(back.jump == NoiseSpec::Jump::Dephasing);
  CHECK(back.axes.size() == 2);
  CHECK(back.fixed.at("ae_s") == -1.0);
  CHECK(back.seed == 123456789ULL);

  CHECK_THROWS_AS(spec_from_json("{not json"), Error);
  CHECK_THROWS_AS(spec_from_json("{\"model\":\"nope\",\"mode\":\"grid\"}"), Error);
}
