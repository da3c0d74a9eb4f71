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

#include <benchmark/benchmark.h>

#include <numbers>
#include <random>

#include "qestim/eig.hpp"
#include "qestim/estimation.hpp"
#include "qestim/models.hpp"
#include "qestim/sweep.hpp"

namespace {

using namespace qestim;

constexpr double kQuarterPi = std::numbers::pi / 4.0;

ComplexMatrix random_hermitian(int dim, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  auto u = [&] { return static_cast<double>(engine() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  ComplexMatrix m(dim);
  for (int r = 0; r < dim; ++r) {
    m(r, r) = u();
    for (int c = r + 1; c < dim; ++c) {
      const Complex v(u(), u());
      m(r, c) = v;
      m(c, r) = std::conj(v);
    }
  }
  return m;
}

void bm_eig_hermitian(benchmark::State& state) {
  const ComplexMatrix m = random_hermitian(static_cast<int>(state.range(0)), 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eig_hermitian(m));
  }
}
BENCHMARK(bm_eig_hermitian)->Arg(2)->Arg(4)->Arg(8);

void bm_context(benchmark::State& state) {
  const ParamFamily fam = bipartite_family(3.0, 2.0, kQuarterPi, kQuarterPi);
  for (auto _ : state) {
    benchmark::DoNotOptimize(make_context(fam, 2.0, 2.0));
  }
}
BENCHMARK(bm_context);

void bm_grid_cell(benchmark::State& state) {
  const ParamFamily fam = driven_qubit_family(1.0, kQuarterPi);
  const EstimationContext ctx = make_context(fam, 2.0, 1.0);
  const Observable a = make_qubit_observable({-0.7, 0.3, -0.4, 0.2});
  for (auto _ : state) {
    benchmark::DoNotOptimize(variance_error_propagation(a, ctx));
    benchmark::DoNotOptimize(min_distance(a, ctx));
  }
}
BENCHMARK(bm_grid_cell);

void bm_lindblad_unit_time(benchmark::State& state) {
  const ComplexMatrix h = bipartite_hamiltonian(2.0, 3.0, 2.0);
  const ComplexMatrix rho0 = projector(Vector{0.5, 0.5, 0.5, 0.5});
  const NoiseSpec noise{0.2, NoiseSpec::Jump::Dephasing, 1e-3};
  for (auto _ : state) {
    benchmark::DoNotOptimize(lindblad_evolve(h, rho0, noise, 1.0));
  }
}
BENCHMARK(bm_lindblad_unit_time);

void bm_scatter_200(benchmark::State& state) {
  SweepSpec spec = figure_preset("5").value();
  spec.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_scatter(spec));
  }
}
BENCHMARK(bm_scatter_200);

}  // namespace

BENCHMARK_MAIN();
