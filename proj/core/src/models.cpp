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

#include "qestim/models.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "qestim/eig.hpp"
#include "qestim/errors.hpp"
#include "qestim/tolerances.hpp"

namespace qestim {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

bool at_quarter_pi(double phi) { return std::abs(phi - kQuarterPi) <= 1e-12; }

/// cos(phi)|g> + sin(phi)|e> in the (|e>, |g>) basis.
Vector qubit_initial_vector(double phi) { return {std::sin(phi), std::cos(phi)}; }

/// Nuclear initial state in the (|g>, |e>) basis.
Vector nucleus_initial_vector(double phi) { return {std::cos(phi), std::sin(phi)}; }

struct DrivenClosedForm {
  double lambda, theta;        // precession rate and mixing angle
  double xi;                   // population imbalance
  double re_zeta, im_zeta;     // coherence
  double dxi, dre, dim;        // d/d omega_a
};

DrivenClosedForm driven_closed_form(double omega_a, double drive, double t) {
  DrivenClosedForm f{};
  f.lambda = std::sqrt(4.0 * drive * drive + omega_a * omega_a);
  f.theta = std::atan2(omega_a, 2.0 * drive);
  const double s = std::sin(f.theta), c = std::cos(f.theta);
  const double cl = std::cos(f.lambda * t), sl = std::sin(f.lambda * t);
  f.xi = (1.0 - cl) * c * s;
  f.re_zeta = c * c + s * s * cl;
  f.im_zeta = -s * sl;
  f.dxi = (1.0 - cl) * std::cos(2.0 * f.theta) * c / f.lambda + t * s * s * c * sl;
  f.dre = -2.0 * (1.0 - cl) * s * c * c / f.lambda - t * s * s * s * sl;
  f.dim = -c * c * sl / f.lambda - t * s * s * cl;
  return f;
}

ComplexMatrix bloch_half(double xi, double re, double im) {
  ComplexMatrix m(2);
  m(0, 0) = 0.5 * (1.0 + xi);
  m(1, 1) = 0.5 * (1.0 - xi);
  m(0, 1) = 0.5 * Complex(re, im);
  m(1, 0) = 0.5 * Complex(re, -im);
  return m;
}

bool driven_closed_path(const DrivenQubitParams& p) {
  return at_quarter_pi(p.phi) && p.drive != 0.0;
}

// Shared eigenbasis evaluation of the evolved state and its exact
// parameter derivative -i[G, rho].
std::pair<ComplexMatrix, ComplexMatrix> evolve_and_derivative(const ComplexMatrix& h,
                                                              const ComplexMatrix& dh,
                                                              const ComplexMatrix& rho0,
                                                              double t) {
  const EigenSystem es = eig_hermitian(h);
  const int n = h.dim();
  std::vector<Complex> phases(n);
  for (int k = 0; k < n; ++k) phases[k] = std::exp(Complex(0.0, -es.values[k] * t));
  ComplexMatrix u(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      Complex s = 0.0;
      for (int k = 0; k < n; ++k) s += es.vectors(r, k) * phases[k] * std::conj(es.vectors(c, k));
      u(r, c) = s;
    }
  const ComplexMatrix rho = (u * rho0 * u.adjoint()).hermitian_part();

  // W = V^dagger dH V
  ComplexMatrix w(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      Complex s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          s += std::conj(es.vectors(i, r)) * dh(i, j) * es.vectors(j, c);
      w(r, c) = s;
    }
  // filter: integral of e^{-i (Ej - Ek) s} over [0, t]
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const double gap = es.values[j] - es.values[k];
      const double x = gap * t;
      Complex filter;
      if (std::abs(x) < 1e-4) {
        // series of (1 - e^{-ix})/(i gap), stable for tiny gaps
        filter = t * (Complex(1.0, 0.0) + Complex(0.0, -x / 2.0) +
                      Complex(-x * x / 6.0, 0.0) + Complex(0.0, x * x * x / 24.0));
      } else {
        filter = (Complex(1.0, 0.0) - std::exp(Complex(0.0, -x))) / Complex(0.0, gap);
      }
      w(j, k) *= filter;
    }
  ComplexMatrix g(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      Complex s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          s += es.vectors(r, i) * w(i, j) * std::conj(es.vectors(c, j));
      g(r, c) = s;
    }
  const ComplexMatrix drho = (Complex(0.0, -1.0) * commutator(g, rho)).hermitian_part();
  return {rho, drho};
}

}  // namespace

// ------------------------------- driven qubit -------------------------------

ComplexMatrix driven_qubit_hamiltonian(double omega_a, double drive) {
  return 0.5 * omega_a * pauli_z() + drive * pauli_x();
}

ComplexMatrix driven_qubit_state(const DrivenQubitParams& p) {
  if (driven_closed_path(p)) {
    const auto f = driven_closed_form(p.omega_a, p.drive, p.t);
    return bloch_half(f.xi, f.re_zeta, f.im_zeta);
  }
  return evolve_unitary(driven_qubit_hamiltonian(p.omega_a, p.drive),
                        projector(qubit_initial_vector(p.phi)), p.t);
}

ComplexMatrix driven_qubit_state_derivative(const DrivenQubitParams& p) {
  if (driven_closed_path(p)) {
    const auto f = driven_closed_form(p.omega_a, p.drive, p.t);
    return bloch_half(f.dxi, f.dre, f.dim) - 0.5 * pauli_identity();
  }
  return evolve_and_derivative(driven_qubit_hamiltonian(p.omega_a, p.drive),
                               0.5 * pauli_z(), projector(qubit_initial_vector(p.phi)), p.t)
      .second;
}

MeanVarianceDerivative driven_qubit_mean_and_derivative(const Observable& a,
                                                        const DrivenQubitParams& p) {
  if (!a.single.has_value()) {
    throw MissingCoefficients("driven_qubit_mean_and_derivative needs Pauli coefficients");
  }
  if (!driven_closed_path(p)) {
    throw Error("closed-form means require phi = pi/4 and a nonzero drive");
  }
  const PauliCoeffs& c = *a.single;
  const auto f = driven_closed_form(p.omega_a, p.drive, p.t);
  const double st = std::sin(f.theta), ct = std::cos(f.theta);
  const double cl = std::cos(f.lambda * p.t), sl = std::sin(f.lambda * p.t);

  MeanVarianceDerivative out;
  out.mean = c.s + c.x * f.re_zeta - c.y * f.im_zeta + c.z * f.xi;
  const double beta1 = c.x * ct + c.z * st;
  const double beta2 = c.z * ct - c.x * st;
  const double gamma1 = beta2 * st * cl - beta1 * ct;
  const double gamma2 = c.y * st * sl;
  out.variance =
      c.x * c.x + c.y * c.y + c.z * c.z - (gamma1 - gamma2) * (gamma1 - gamma2);
  out.derivative = f.dre * c.x - f.dim * c.y + f.dxi * c.z;
  return out;
}

ParamFamily driven_qubit_family(double drive, double phi) {
  auto state = [drive, phi](double omega_a, double t) {
    return driven_qubit_state({omega_a, drive, phi, t});
  };
  auto derivative = [drive, phi](double omega_a, double t) {
    return driven_qubit_state_derivative({omega_a, drive, phi, t});
  };
  ParamFamily f = make_family(2, state, derivative);
  if (!at_quarter_pi(phi) || drive == 0.0) {
    f.state_and_derivative_at = [drive, phi](double omega_a, double t) {
      return evolve_and_derivative(driven_qubit_hamiltonian(omega_a, drive), 0.5 * pauli_z(),
                                   projector(qubit_initial_vector(phi)), t);
    };
  }
  return f;
}

// ------------------------------ bipartite pair ------------------------------

Keep subsystem_keep(Subsystem s) { return s == Subsystem::Electron ? Keep::A : Keep::B; }

ComplexMatrix bipartite_hamiltonian(double omega_l, double rabi, double coupling) {
  // nuclear I_z = diag(-1, 1) in the (|g^n>, |e^n>) ordering
  ComplexMatrix iz(2);
  iz(0, 0) = -1.0;
  iz(1, 1) = 1.0;
  return 0.5 * rabi * kron(pauli_x(), pauli_identity()) +
         0.5 * omega_l * kron(pauli_identity(), iz) +
         coupling * kron(pauli_z(), pauli_x());
}

ComplexMatrix bipartite_hamiltonian_derivative() {
  ComplexMatrix iz(2);
  iz(0, 0) = -1.0;
  iz(1, 1) = 1.0;
  return 0.5 * kron(pauli_identity(), iz);
}

namespace {

// Half-angle pair (t_plus, t_minus) with tan(t+) = g/(c + r) and
// tan(t-) = g/(c - r), r = sqrt(c^2 + g^2); the g -> 0 limit is taken by
// continuity.
std::pair<double, double> mixing_angles(double c, double g) {
  const double r = std::sqrt(c * c + g * g);
  if (r <= 0.0) {
    throw Error("bipartite mixing angles undefined: c and g both vanish");
  }
  if (g == 0.0) {
    return c > 0.0 ? std::pair{0.0, -std::numbers::pi / 2.0}
                   : std::pair{std::numbers::pi / 2.0, 0.0};
  }
  return {std::atan(g / (c + r)), std::atan(g / (c - r))};
}

struct BipartiteClosedForm {
  std::array<double, 4> energy, denergy;
  double tp, tm, pp, pm;  // theta_+/-, phi_+/-
  double dtheta, dphi;
};

BipartiteClosedForm bipartite_closed_form(double omega_l, double rabi, double coupling) {
  const double alpha = 0.5 * (omega_l - rabi);
  const double beta = 0.5 * (omega_l + rabi);
  const double g = coupling;
  const double ra = std::sqrt(alpha * alpha + g * g);
  const double rb = std::sqrt(beta * beta + g * g);
  if (ra <= 0.0 || rb <= 0.0) {
    throw Error("bipartite parameters degenerate: alpha^2+g^2 and beta^2+g^2 must be positive");
  }
  BipartiteClosedForm f{};
  f.energy = {-ra, -rb, ra, rb};
  f.denergy = {-alpha / (2.0 * ra), -beta / (2.0 * rb), alpha / (2.0 * ra), beta / (2.0 * rb)};
  std::tie(f.tp, f.tm) = mixing_angles(alpha, g);
  std::tie(f.pp, f.pm) = mixing_angles(beta, g);
  f.dtheta = -g / (4.0 * (alpha * alpha + g * g));
  f.dphi = -g / (4.0 * (beta * beta + g * g));
  return f;
}

}  // namespace

BipartiteEigen bipartite_eigen_closed(double omega_l, double rabi, double coupling) {
  const auto f = bipartite_closed_form(omega_l, rabi, coupling);
  const double w = std::sqrt(0.5);
  const double ctp = std::cos(f.tp), stp = std::sin(f.tp);
  const double ctm = std::cos(f.tm), stm = std::sin(f.tm);
  const double cpp = std::cos(f.pp), spp = std::sin(f.pp);
  const double cpm = std::cos(f.pm), spm = std::sin(f.pm);

  BipartiteEigen out;
  out.values = f.energy;
  out.theta_plus = f.tp;
  out.theta_minus = f.tm;
  out.phi_plus = f.pp;
  out.phi_minus = f.pm;
  out.vectors = ComplexMatrix(4);
  const double cols[4][4] = {
      {ctp, -stp, ctp, stp},
      {-cpp, spp, cpp, spp},
      {ctm, -stm, ctm, stm},
      {-cpm, spm, cpm, spm},
  };
  for (int k = 0; k < 4; ++k)
    for (int r = 0; r < 4; ++r) out.vectors(r, k) = w * cols[k][r];
  return out;
}

Vector bipartite_state_vector(const BipartiteParams& p) {
  if (!at_quarter_pi(p.phi1) || !at_quarter_pi(p.phi2)) {
    throw Error("the closed-form state vector requires phi1 = phi2 = pi/4");
  }
  const auto f = bipartite_closed_form(p.omega_l, p.rabi, p.coupling);
  const double ctp = std::cos(f.tp), stp = std::sin(f.tp);
  const double ctm = std::cos(f.tm), stm = std::sin(f.tm);
  const double cpp = std::cos(f.pp), spp = std::sin(f.pp);
  const double cpm = std::cos(f.pm), spm = std::sin(f.pm);
  std::array<Complex, 4> e;
  for (int i = 0; i < 4; ++i) e[i] = std::exp(Complex(0.0, -f.energy[i] * p.t));

  Vector v(4);
  v[0] = 0.5 * (e[0] * ctp * ctp - e[1] * spp * cpp + e[2] * ctm * ctm - e[3] * spm * cpm);
  v[1] = 0.5 * (-e[0] * stp * ctp + e[1] * spp * spp - e[2] * stm * ctm + e[3] * spm * spm);
  v[2] = 0.5 * (e[0] * ctp * ctp + e[1] * spp * cpp + e[2] * ctm * ctm + e[3] * spm * cpm);
  v[3] = 0.5 * (e[0] * stp * ctp + e[1] * spp * spp + e[2] * stm * ctm + e[3] * spm * spm);
  return v;
}

Vector bipartite_state_vector_derivative(const BipartiteParams& p) {
  if (!at_quarter_pi(p.phi1) || !at_quarter_pi(p.phi2)) {
    throw Error("the closed-form state vector requires phi1 = phi2 = pi/4");
  }
  const auto f = bipartite_closed_form(p.omega_l, p.rabi, p.coupling);
  const double ctp = std::cos(f.tp), stp = std::sin(f.tp);
  const double ctm = std::cos(f.tm), stm = std::sin(f.tm);
  const double cpp = std::cos(f.pp), spp = std::sin(f.pp);
  const double cpm = std::cos(f.pm), spm = std::sin(f.pm);
  const double c2tp = std::cos(2.0 * f.tp), c2tm = std::cos(2.0 * f.tm);
  const double c2pp = std::cos(2.0 * f.pp), c2pm = std::cos(2.0 * f.pm);

  std::array<Complex, 4> e, de;
  for (int i = 0; i < 4; ++i) {
    e[i] = std::exp(Complex(0.0, -f.energy[i] * p.t));
    de[i] = Complex(0.0, -p.t * f.denergy[i]) * e[i];
  }
  const double dth = f.dtheta, dph = f.dphi;

  const double fac[4][4] = {
      {ctp * ctp, -spp * cpp, ctm * ctm, -spm * cpm},
      {-stp * ctp, spp * spp, -stm * ctm, spm * spm},
      {ctp * ctp, spp * cpp, ctm * ctm, spm * cpm},
      {stp * ctp, spp * spp, stm * ctm, spm * spm},
  };
  const double dfac[4][4] = {
      {-2.0 * ctp * stp * dth, -c2pp * dph, -2.0 * ctm * stm * dth, -c2pm * dph},
      {-c2tp * dth, 2.0 * spp * cpp * dph, -c2tm * dth, 2.0 * spm * cpm * dph},
      {-2.0 * ctp * stp * dth, c2pp * dph, -2.0 * ctm * stm * dth, c2pm * dph},
      {c2tp * dth, 2.0 * spp * cpp * dph, c2tm * dth, 2.0 * spm * cpm * dph},
  };
  Vector dv(4);
  for (int c = 0; c < 4; ++c) {
    Complex s = 0.0;
    for (int i = 0; i < 4; ++i) s += de[i] * fac[c][i] + e[i] * dfac[c][i];
    dv[c] = 0.5 * s;
  }
  return dv;
}

ComplexMatrix bipartite_state(const BipartiteParams& p) {
  if (at_quarter_pi(p.phi1) && at_quarter_pi(p.phi2)) {
    return projector(bipartite_state_vector(p));
  }
  const Vector v0 =
      kron_vec(qubit_initial_vector(p.phi2), nucleus_initial_vector(p.phi1));
  return evolve_unitary(bipartite_hamiltonian(p.omega_l, p.rabi, p.coupling), projector(v0),
                        p.t);
}

ParamFamily bipartite_family(double rabi, double coupling, double phi1, double phi2) {
  ParamFamily f;
  f.dim = 4;
  f.dim_a = 2;  // electron (outer)
  f.dim_b = 2;  // nucleus (inner)
  if (at_quarter_pi(phi1) && at_quarter_pi(phi2)) {
    f.state_at = [rabi, coupling](double omega_l, double t) {
      return projector(bipartite_state_vector({omega_l, rabi, coupling,
                                               kQuarterPi, kQuarterPi, t}));
    };
    f.derivative_at = [rabi, coupling](double omega_l, double t) {
      const BipartiteParams p{omega_l, rabi, coupling, kQuarterPi, kQuarterPi, t};
      const Vector v = bipartite_state_vector(p);
      const Vector dv = bipartite_state_vector_derivative(p);
      return (outer(dv, v) + outer(v, dv)).hermitian_part();
    };
    auto state = f.state_at;
    auto deriv = f.derivative_at;
    f.state_and_derivative_at = [state, deriv](double omega_l, double t) {
      return std::make_pair(state(omega_l, t), deriv(omega_l, t));
    };
    return f;
  }
  const Vector v0 = kron_vec(qubit_initial_vector(phi2), nucleus_initial_vector(phi1));
  const ComplexMatrix rho0 = projector(v0);
  f.state_and_derivative_at = [rabi, coupling, rho0](double omega_l, double t) {
    return evolve_and_derivative(bipartite_hamiltonian(omega_l, rabi, coupling),
                                 bipartite_hamiltonian_derivative(), rho0, t);
  };
  f.state_at = [rabi, coupling, rho0](double omega_l, double t) {
    return evolve_unitary(bipartite_hamiltonian(omega_l, rabi, coupling), rho0, t);
  };
  auto combined = f.state_and_derivative_at;
  f.derivative_at = [combined](double omega_l, double t) {
    return combined(omega_l, t).second;
  };
  return f;
}

// --------------------------- generic + noisy paths --------------------------

ComplexMatrix unitary_parameter_derivative(const ComplexMatrix& hamiltonian,
                                           const ComplexMatrix& dh,
                                           const ComplexMatrix& rho0, double t) {
  return evolve_and_derivative(hamiltonian, dh, rho0, t).second;
}

ComplexMatrix jump_operator(NoiseSpec::Jump jump, int dim) {
  const ComplexMatrix& base =
      jump == NoiseSpec::Jump::Dephasing ? pauli_x() : sigma_minus();
  if (dim == 2) return base;
  if (dim == 4) return kron(base, pauli_identity());
  throw DimensionMismatch("jump_operator: unsupported dimension " + std::to_string(dim));
}

namespace {

void validate_noise(const NoiseSpec& noise) {
  if (noise.kappa < 0.0) throw Error("noise rate kappa must be non-negative");
  if (noise.dt <= 0.0) throw Error("integrator step dt must be positive");
}

struct LindbladGenerator {
  ComplexMatrix h;
  ComplexMatrix m, m_dag, m_dag_m;
  double kappa;

  ComplexMatrix operator()(const ComplexMatrix& rho) const {
    ComplexMatrix out = Complex(0.0, -1.0) * commutator(h, rho);
    if (kappa > 0.0) {
      out += (0.5 * kappa) *
             (2.0 * (m * rho * m_dag) - rho * m_dag_m - m_dag_m * rho);
    }
    return out;
  }
};

LindbladGenerator make_generator(const ComplexMatrix& h, const NoiseSpec& noise) {
  const ComplexMatrix m = jump_operator(noise.jump, h.dim());
  return {h, m, m.adjoint(), m.adjoint() * m, noise.kappa};
}

int step_count(double t, double dt) {
  return std::max(1, static_cast<int>(std::llround(t / dt)));
}

void check_trace_drift(const ComplexMatrix& rho) {
  const Complex tr = rho.trace();
  if (!std::isfinite(tr.real()) || !std::isfinite(tr.imag()) ||
      std::abs(tr.real() - 1.0) > tol::trace_drift || std::abs(tr.imag()) > tol::trace_drift) {
    throw StepTooLarge("integrator trace drift exceeds tolerance; reduce dt");
  }
}

ComplexMatrix rk4_state(const LindbladGenerator& gen, ComplexMatrix rho, double t, double dt) {
  if (t == 0.0) return rho;
  const int steps = step_count(t, dt);
  const double h = t / steps;
  for (int s = 0; s < steps; ++s) {
    const ComplexMatrix k1 = gen(rho);
    const ComplexMatrix k2 = gen(rho + (0.5 * h) * k1);
    const ComplexMatrix k3 = gen(rho + (0.5 * h) * k2);
    const ComplexMatrix k4 = gen(rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  check_trace_drift(rho);
  return rho.hermitian_part();
}

std::pair<ComplexMatrix, ComplexMatrix> rk4_state_and_derivative(const LindbladGenerator& gen,
                                                                 const ComplexMatrix& dh,
                                                                 ComplexMatrix rho, double t,
                                                                 double dt) {
  ComplexMatrix sigma = ComplexMatrix::zero(rho.dim());
  if (t == 0.0) return {rho, sigma};
  const int steps = step_count(t, dt);
  const double h = t / steps;
  const Complex mi(0.0, -1.0);
  auto rhs_sigma = [&](const ComplexMatrix& r, const ComplexMatrix& s) {
    return gen(s) + mi * commutator(dh, r);
  };
  for (int s = 0; s < steps; ++s) {
    const ComplexMatrix k1r = gen(rho);
    const ComplexMatrix k1s = rhs_sigma(rho, sigma);
    const ComplexMatrix r2 = rho + (0.5 * h) * k1r;
    const ComplexMatrix s2 = sigma + (0.5 * h) * k1s;
    const ComplexMatrix k2r = gen(r2);
    const ComplexMatrix k2s = rhs_sigma(r2, s2);
    const ComplexMatrix r3 = rho + (0.5 * h) * k2r;
    const ComplexMatrix s3 = sigma + (0.5 * h) * k2s;
    const ComplexMatrix k3r = gen(r3);
    const ComplexMatrix k3s = rhs_sigma(r3, s3);
    const ComplexMatrix r4 = rho + h * k3r;
    const ComplexMatrix s4 = sigma + h * k3s;
    const ComplexMatrix k4r = gen(r4);
    const ComplexMatrix k4s = rhs_sigma(r4, s4);
    rho += (h / 6.0) * (k1r + 2.0 * k2r + 2.0 * k3r + k4r);
    sigma += (h / 6.0) * (k1s + 2.0 * k2s + 2.0 * k3s + k4s);
  }
  check_trace_drift(rho);
  return {rho.hermitian_part(), sigma.hermitian_part()};
}

}  // namespace

ComplexMatrix lindblad_evolve(const ComplexMatrix& hamiltonian, const ComplexMatrix& rho0,
                              const NoiseSpec& noise, double t) {
  validate_noise(noise);
  if (t < 0.0) throw Error("lindblad_evolve: negative time");
  if (!hamiltonian.is_hermitian(tol::hermitian)) {
    throw NonHermitian("lindblad_evolve: Hamiltonian is not Hermitian");
  }
  return rk4_state(make_generator(hamiltonian, noise), rho0, t, noise.dt);
}

ParamFamily lindblad_family(double rabi, double coupling, double phi1, double phi2,
                            const NoiseSpec& noise) {
  validate_noise(noise);
  const Vector v0 = kron_vec(qubit_initial_vector(phi2), nucleus_initial_vector(phi1));
  const ComplexMatrix rho0 = projector(v0);
  const ComplexMatrix dh = bipartite_hamiltonian_derivative();

  ParamFamily f;
  f.dim = 4;
  f.dim_a = 2;
  f.dim_b = 2;
  f.state_at = [rabi, coupling, rho0, noise](double omega_l, double t) {
    return rk4_state(make_generator(bipartite_hamiltonian(omega_l, rabi, coupling), noise),
                     rho0, t, noise.dt);
  };
  f.state_and_derivative_at = [rabi, coupling, rho0, dh, noise](double omega_l, double t) {
    return rk4_state_and_derivative(
        make_generator(bipartite_hamiltonian(omega_l, rabi, coupling), noise), dh, rho0, t,
        noise.dt);
  };
  auto combined = f.state_and_derivative_at;
  f.derivative_at = [combined](double omega_l, double t) {
    return combined(omega_l, t).second;
  };
  return f;
}

}  // namespace qestim
