#include "yqc/effective.hpp"

#include <cmath>
#include <stdexcept>

#include "yqc/errors.hpp"

namespace yqc {

PolarizabilityBasis::PolarizabilityBasis(const AtomSpec& spec, double b_gauss)
    : spec_(spec), b_(b_gauss) {
  const int ni = spec.nuclear_dim();
  const int ne = spec.excited_dim();
  const auto es = excited_spectrum(spec, b_gauss, 0.0);
  energies_ = es.eigenvalues;
  vectors_ = es.eigenvectors;

  // channel_[i](nu, m) = <nu| (D_i x 1) |g, m>; D_i places |g, m> at
  // excited product index (mJ row) * ni + m.
  const auto d = dipole_components();
  const ComplexMatrix* comps[3] = {&d.dx, &d.dy, &d.dz};
  for (int i = 0; i < 3; ++i) {
    ComplexMatrix ch = ComplexMatrix::Zero(ne, ni);
    for (int mji = 0; mji < 3; ++mji) {
      const Complex amp = (*comps[i])(1 + mji, 0);
      if (amp == Complex(0.0, 0.0)) continue;
      for (int m = 0; m < ni; ++m)
        for (int nu = 0; nu < ne; ++nu)
          ch(nu, m) += std::conj(vectors_(mji * ni + m, nu)) * amp;
    }
    channel_[i] = std::move(ch);
  }

  ground_ = Eigen::VectorXd(ni);
  for (int k = 0; k < ni; ++k)
    ground_(k) = -spec.g_i * constants::mu_nuclear * b_gauss *
                 nuclear_label(spec, k);
}

double PolarizabilityBasis::min_detuning(double detuning) const {
  return (energies_.array() - detuning).abs().minCoeff();
}

PolarizabilityTensor PolarizabilityBasis::tensor(double detuning,
                                                 double delta_floor) const {
  if (min_detuning(detuning) <= delta_floor)
    throw SingularExcitedManifold(
        "polarizability: laser within delta_floor of an excited level");
  const int ni = spec_.nuclear_dim();
  const int ne = spec_.excited_dim();
  Eigen::VectorXcd inv_e(ne);
  for (int nu = 0; nu < ne; ++nu) inv_e(nu) = 1.0 / (energies_(nu) - detuning);

  PolarizabilityTensor alpha;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      alpha(i, j) = channel_[i].adjoint() * inv_e.asDiagonal() * channel_[j];
  return alpha;
}

EffectiveCoefficients PolarizabilityBasis::coefficients(
    double detuning, double delta_floor) const {
  const auto alpha = tensor(detuning, delta_floor);
  const int ni = spec_.nuclear_dim();
  EffectiveCoefficients c;
  c.ground_energies = ground_;
  c.delta_min = min_detuning(detuning);
  c.s_z.resize(ni);
  c.s_x.resize(ni);
  c.g.resize(ni - 1);
  c.h.resize(ni - 2);
  const ComplexMatrix cross = alpha(0, 2) + alpha(2, 0);
  for (int k = 0; k < ni; ++k) {
    c.s_z(k) = alpha(2, 2)(k, k).real();
    c.s_x(k) = alpha(0, 0)(k, k).real();
    if (k + 1 < ni) c.g(k) = cross(k, k + 1);
    if (k + 2 < ni) c.h(k) = alpha(0, 0)(k, k + 2);
  }
  return c;
}

PolarizabilityTensor polarizability(const AtomSpec& spec, double b_gauss,
                                    double detuning) {
  return PolarizabilityBasis(spec, b_gauss).tensor(detuning);
}

EffectiveModel effective_model_from(const PolarizabilityBasis& basis,
                                    const FieldConfig& cfg,
                                    double delta_floor) {
  const auto alpha = basis.tensor(cfg.detuning, delta_floor);
  const int ni = basis.spec().nuclear_dim();
  const double st = std::sin(cfg.theta);
  const double ct = std::cos(cfg.theta);

  ComplexMatrix contracted = ct * ct * alpha(2, 2) + st * st * alpha(0, 0) +
                             st * ct * (alpha(0, 2) + alpha(2, 0));

  EffectiveModel model;
  model.coeffs = basis.coefficients(cfg.detuning, delta_floor);
  model.cfg = cfg;
  model.h_eff = -0.25 * cfg.rabi * cfg.rabi * contracted;
  for (int k = 0; k < ni; ++k)
    model.h_eff(k, k) += model.coeffs.ground_energies(k);
  return model;
}

EffectiveModel effective_hamiltonian(const AtomSpec& spec,
                                     const FieldConfig& cfg) {
  return effective_model_from(PolarizabilityBasis(spec, cfg.b_gauss), cfg);
}

ComplexMatrix assemble_five_diagonal(const EffectiveCoefficients& coeffs,
                                     double rabi, double theta) {
  const int ni = static_cast<int>(coeffs.ground_energies.size());
  const double st = std::sin(theta);
  const double ct = std::cos(theta);
  const double scale = 0.25 * rabi * rabi;
  ComplexMatrix h = ComplexMatrix::Zero(ni, ni);
  for (int k = 0; k < ni; ++k) {
    h(k, k) = coeffs.ground_energies(k) -
              scale * (coeffs.s_z(k) * ct * ct + coeffs.s_x(k) * st * st);
    if (k + 1 < ni) {
      h(k, k + 1) = -scale * coeffs.g(k) * st * ct;
      h(k + 1, k) = std::conj(h(k, k + 1));
    }
    if (k + 2 < ni) {
      h(k, k + 2) = -scale * coeffs.h(k) * st * st;
      h(k + 2, k) = std::conj(h(k, k + 2));
    }
  }
  return h;
}

double excited_population_bound(double rabi, double delta_min) {
  if (delta_min <= 0)
    throw std::invalid_argument("excited_population_bound: delta_min must be > 0");
  const double r = rabi / (2.0 * delta_min);
  return r * r;
}

double scattered_photons_bound(const AtomSpec& spec, double p_excited,
                               double f_op_hz) {
  if (f_op_hz <= 0)
    throw std::invalid_argument("scattered_photons_bound: f_op must be > 0");
  return spec.decay_rate * p_excited / f_op_hz;
}

}  // namespace yqc
