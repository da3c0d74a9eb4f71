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

#include "qestim/estimation.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "qestim/errors.hpp"
#include "qestim/tolerances.hpp"

namespace qestim {

namespace {

void validate_state(const ComplexMatrix& rho) {
  if (!rho.is_hermitian(tol::hermitian)) {
    throw InvalidState("state is not Hermitian");
  }
  if (std::abs(rho.trace().real() - 1.0) > tol::unit_trace ||
      std::abs(rho.trace().imag()) > tol::unit_trace) {
    throw InvalidState("state trace differs from 1");
  }
  const EigenSystem es = eig_hermitian(rho);
  if (es.values.front() < tol::psd_floor) {
    throw InvalidState("state has eigenvalue " + std::to_string(es.values.front()));
  }
}

void validate_derivative(const ComplexMatrix& drho) {
  if (!drho.is_hermitian(tol::hermitian)) {
    throw InvalidState("state derivative is not Hermitian");
  }
  if (std::abs(drho.trace()) > tol::traceless) {
    throw InvalidState("state derivative is not traceless");
  }
}

ComplexMatrix sld_unchecked(const ComplexMatrix& rho, const ComplexMatrix& drho) {
  const EigenSystem es = eig_hermitian(rho);
  const int n = rho.dim();
  // W = V^dagger drho V
  ComplexMatrix w(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      Complex s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          s += std::conj(es.vectors(i, r)) * drho(i, j) * es.vectors(j, c);
      w(r, c) = s;
    }
  ComplexMatrix lt(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const double denom = es.values[r] + es.values[c];
      lt(r, c) = denom >= tol::sld_kernel ? 2.0 * w(r, c) / denom : Complex{};
    }
  // back to the original basis
  ComplexMatrix l(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      Complex s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          s += es.vectors(r, i) * lt(i, j) * std::conj(es.vectors(c, j));
      l(r, c) = s;
    }
  return l.hermitian_part();
}

const ComplexMatrix& observable_matrix(const Observable& a) {
  if (!a.matrix.is_hermitian(tol::hermitian)) {
    throw NonHermitian("observable matrix is not Hermitian");
  }
  return a.matrix;
}

}  // namespace

ParamFamily make_family(int dim, const std::function<ComplexMatrix(double, double)>& state) {
  ParamFamily f;
  f.dim = dim;
  f.state_at = state;
  f.derivative_at = [state](double theta, double t) {
    const double h = tol::fd_step * std::max(1.0, std::abs(theta));
    ComplexMatrix d = state(theta + h, t) - state(theta - h, t);
    d *= Complex(1.0 / (2.0 * h), 0.0);
    return d.hermitian_part();
  };
  auto deriv = f.derivative_at;
  f.state_and_derivative_at = [state, deriv](double theta, double t) {
    return std::make_pair(state(theta, t), deriv(theta, t));
  };
  return f;
}

ParamFamily make_family(int dim, const std::function<ComplexMatrix(double, double)>& state,
                        const std::function<ComplexMatrix(double, double)>& derivative) {
  ParamFamily f;
  f.dim = dim;
  f.state_at = state;
  f.derivative_at = derivative;
  f.state_and_derivative_at = [state, derivative](double theta, double t) {
    return std::make_pair(state(theta, t), derivative(theta, t));
  };
  return f;
}

ComplexMatrix sld(const ComplexMatrix& rho, const ComplexMatrix& drho) {
  validate_state(rho);
  validate_derivative(drho);
  return sld_unchecked(rho, drho);
}

double qfi(const ComplexMatrix& rho, const ComplexMatrix& drho) {
  const ComplexMatrix l = sld(rho, drho);
  return trace_product(rho, l * l).real();
}

double classical_fisher(std::span<const double> probabilities,
                        std::span<const double> derivatives) {
  if (probabilities.size() != derivatives.size()) {
    throw DimensionMismatch("classical_fisher: probability and derivative counts differ");
  }
  double total = 0.0;
  double fisher = 0.0;
  for (std::size_t j = 0; j < probabilities.size(); ++j) {
    const double p = probabilities[j];
    if (p < -tol::probability_floor) {
      throw InvalidState("classical_fisher: negative probability");
    }
    total += p;
    if (p < tol::probability_floor) {
      if (std::abs(derivatives[j]) >= tol::probability_derivative) {
        throw DegenerateProbability("classical_fisher: term " + std::to_string(j) +
                                    " has vanishing probability but derivative " +
                                    std::to_string(derivatives[j]));
      }
      continue;
    }
    fisher += derivatives[j] * derivatives[j] / p;
  }
  if (std::abs(total - 1.0) > 1e-10) {
    throw InvalidState("classical_fisher: probabilities sum to " + std::to_string(total));
  }
  return fisher;
}

EstimationContext make_context(const ComplexMatrix& rho, const ComplexMatrix& drho) {
  validate_state(rho);
  validate_derivative(drho);
  EstimationContext ctx;
  ctx.rho = rho;
  ctx.drho = drho;
  ctx.sld_op = sld_unchecked(rho, drho);
  ctx.qfi = trace_product(rho, ctx.sld_op * ctx.sld_op).real();
  ctx.sld_eigen = eig_hermitian(ctx.sld_op);
  ctx.sld_clusters = cluster_indices(ctx.sld_eigen.values, tol::cluster);
  return ctx;
}

EstimationContext make_context(const ParamFamily& family, double theta, double t) {
  const auto [rho, drho] = family.state_and_derivative_at(theta, t);
  return make_context(rho, drho);
}

double variance_error_propagation(const Observable& a, const EstimationContext& ctx) {
  const ComplexMatrix& m = observable_matrix(a);
  const double mean = expectation(ctx.rho, m);
  const double mean_sq = expectation(ctx.rho, m * m);
  const double dmean = trace_product(ctx.drho, m).real();
  if (std::abs(dmean) < tol::derivative_floor) {
    throw DivergentVariance("variance diverges: d<A>/dtheta = " + std::to_string(dmean));
  }
  return (mean_sq - mean * mean) / (dmean * dmean);
}

double variance_error_propagation(const Observable& a, const ParamFamily& family,
                                  double theta, double t) {
  return variance_error_propagation(a, make_context(family, theta, t));
}

double lambda_direct(const Observable& a, const EstimationContext& ctx) {
  return variance_error_propagation(a, ctx) - 1.0 / ctx.qfi;
}

double lambda_direct(const Observable& a, const ParamFamily& family, double theta, double t) {
  return lambda_direct(a, make_context(family, theta, t));
}

double lambda_decomposed(const Observable& a, const EstimationContext& ctx,
                         const Observable& a_opt) {
  double reference_variance = 0.0;
  try {
    reference_variance = variance_error_propagation(a_opt, ctx);
  } catch (const DivergentVariance&) {
    throw NonSaturatingReference("reference observable has no parameter dependence");
  }
  if (std::abs(reference_variance - 1.0 / ctx.qfi) > tol::saturating_reference) {
    throw NonSaturatingReference("reference variance " + std::to_string(reference_variance) +
                                 " misses the bound " + std::to_string(1.0 / ctx.qfi));
  }

  const ComplexMatrix& m = observable_matrix(a);
  const ComplexMatrix& opt = a_opt.matrix;
  const ComplexMatrix dev = m - opt;

  const double d_opt = trace_product(ctx.drho, opt).real();
  const double d_dev = trace_product(ctx.drho, dev).real();
  if (std::abs(d_opt + d_dev) < tol::derivative_floor) {
    throw DivergentVariance("variance diverges: d<A>/dtheta vanishes");
  }
  const double ratio = d_dev / d_opt;
  const double scale = (1.0 + ratio) * (1.0 + ratio);

  const double mean_opt = expectation(ctx.rho, opt);
  const double mean_dev = expectation(ctx.rho, dev);
  const double cross = 2.0 * (trace_product(ctx.rho, opt * dev).real() - mean_opt * mean_dev);
  const double dev_sq = expectation(ctx.rho, dev * dev);
  const double residual = (dev_sq - mean_dev * mean_dev + cross) /
                          ((d_opt + d_dev) * (d_opt + d_dev));

  return -(ratio * ratio + 2.0 * ratio) / (scale * ctx.qfi) + residual;
}

double lambda_decomposed(const Observable& a, const ParamFamily& family, double theta,
                         double t, const Observable& a_opt) {
  return lambda_decomposed(a, make_context(family, theta, t), a_opt);
}

std::vector<ComplexMatrix> commutant_basis(const ComplexMatrix& l) {
  if (!l.is_hermitian(tol::hermitian)) {
    throw NonHermitian("commutant_basis: input is not Hermitian");
  }
  const EigenSystem es = eig_hermitian(l);
  const auto clusters = cluster_indices(es.values, tol::cluster);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<ComplexMatrix> basis;
  for (const auto& cluster : clusters) {
    for (std::size_t a = 0; a < cluster.size(); ++a) {
      const Vector va = es.eigenvector(cluster[a]);
      basis.push_back(projector(va));
      for (std::size_t b = a + 1; b < cluster.size(); ++b) {
        const Vector vb = es.eigenvector(cluster[b]);
        const ComplexMatrix ab = outer(va, vb);
        const ComplexMatrix ba = outer(vb, va);
        basis.push_back(inv_sqrt2 * (ab + ba));
        basis.push_back((Complex(0.0, 1.0) * inv_sqrt2) * (ab - ba));
      }
    }
  }
  return basis;
}

std::pair<double, ComplexMatrix> min_distance(const Observable& a, const ComplexMatrix& l) {
  if (!l.is_hermitian(tol::hermitian)) {
    throw NonHermitian("min_distance: L is not Hermitian");
  }
  const EigenSystem es = eig_hermitian(l);
  EstimationContext ctx;
  ctx.sld_eigen = es;
  ctx.sld_clusters = cluster_indices(es.values, tol::cluster);
  return min_distance(a, ctx);
}

std::pair<double, ComplexMatrix> min_distance(const Observable& a,
                                              const EstimationContext& ctx) {
  const ComplexMatrix& m = observable_matrix(a);
  const EigenSystem& es = ctx.sld_eigen;
  const int n = m.dim();
  if (n != es.vectors.dim()) {
    throw DimensionMismatch("min_distance: observable and L dimensions differ");
  }
  // cluster id per eigenvector index
  std::vector<int> cluster_of(n, 0);
  for (int c = 0; c < static_cast<int>(ctx.sld_clusters.size()); ++c)
    for (int idx : ctx.sld_clusters[c]) cluster_of[idx] = c;

  // rotate into the eigenbasis, keep only intra-cluster blocks
  ComplexMatrix at(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      if (cluster_of[r] != cluster_of[c]) continue;
      Complex s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          s += std::conj(es.vectors(i, r)) * m(i, j) * es.vectors(j, c);
      at(r, c) = s;
    }
  ComplexMatrix pinched(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      Complex s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          s += es.vectors(r, i) * at(i, j) * std::conj(es.vectors(c, j));
      pinched(r, c) = s;
    }
  pinched = pinched.hermitian_part();
  return {frobenius_norm(m - pinched), pinched};
}

double subsystem_qfi(const ParamFamily& family, double theta, double t, Keep keep) {
  if (family.dim_a <= 0 || family.dim_b <= 0 || family.dim_a * family.dim_b != family.dim) {
    throw DimensionMismatch("subsystem_qfi: family does not declare a tensor factorization");
  }
  const auto [rho, drho] = family.state_and_derivative_at(theta, t);
  const ComplexMatrix rho_sub = partial_trace(rho, family.dim_a, family.dim_b, keep);
  ComplexMatrix drho_sub = partial_trace(drho, family.dim_a, family.dim_b, keep);
  drho_sub = drho_sub.hermitian_part();
  const ComplexMatrix l = sld_unchecked(rho_sub, drho_sub);
  return trace_product(rho_sub, l * l).real();
}

bool schrodinger_robertson_check(const ComplexMatrix& x, const ComplexMatrix& y,
                                 const ComplexMatrix& rho) {
  const double var_x = expectation(rho, x * x) - std::pow(expectation(rho, x), 2);
  const double var_y = expectation(rho, y * y) - std::pow(expectation(rho, y), 2);
  const double cov =
      0.5 * expectation(rho, anticommutator(x, y)) - expectation(rho, x) * expectation(rho, y);
  const Complex comm_mean = trace_product(rho, commutator(x, y));
  const double slack = var_x * var_y - cov * cov - 0.25 * std::norm(comm_mean);
  return slack >= -1e-10;
}

std::vector<ComplexMatrix> eigenprojectors(const EigenSystem& es, double cluster_gap) {
  const auto clusters = cluster_indices(es.values, cluster_gap);
  std::vector<ComplexMatrix> projectors;
  projectors.reserve(clusters.size());
  for (const auto& cluster : clusters) {
    ComplexMatrix p(es.vectors.dim());
    for (int idx : cluster) p += projector(es.eigenvector(idx));
    projectors.push_back(std::move(p));
  }
  return projectors;
}

std::vector<double> measurement_probabilities(const ComplexMatrix& rho,
                                              const std::vector<ComplexMatrix>& projectors) {
  std::vector<double> p;
  p.reserve(projectors.size());
  for (const auto& proj : projectors) p.push_back(expectation(rho, proj));
  return p;
}

EstimationReport estimate(const Observable& a, const EstimationContext& ctx) {
  EstimationReport rep;
  rep.qfi = ctx.qfi;
  rep.qcrb = 1.0 / ctx.qfi;
  rep.variance = variance_error_propagation(a, ctx);
  rep.lambda = rep.variance - rep.qcrb;
  rep.distance = min_distance(a, ctx).first;
  rep.saturated = rep.lambda < tol::saturation;
  return rep;
}

EstimationReport estimate(const Observable& a, const ParamFamily& family, double theta,
                          double t) {
  return estimate(a, make_context(family, theta, t));
}

}  // namespace qestim
