#include "yqc/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "yqc/errors.hpp"

namespace yqc {

namespace {

using constants::two_pi;

void require_normalized(const ComplexVector& psi0) {
  if (std::abs(psi0.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("propagate: initial state is not normalized");
}

void fill_sample(PropagationTrace& trace, int row, const ComplexVector& psi) {
  trace.populations.row(row) = psi.cwiseAbs2().real().transpose();
  trace.norms(row) = psi.norm();
}

}  // namespace

Eigen::VectorXd PropagationTrace::excited_population(int first_excited) const {
  const Eigen::Index cols = populations.cols();
  return populations.rightCols(cols - first_excited).rowwise().sum();
}

double PropagationTrace::max_excited_population(int first_excited) const {
  return excited_population(first_excited).maxCoeff();
}

PropagationTrace propagate(const ComplexMatrix& h, const ComplexVector& psi0,
                           const std::vector<double>& times) {
  require_normalized(psi0);
  if (!is_hermitian(h, 1e-10))
    throw std::invalid_argument("propagate: Hamiltonian is not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  const ComplexVector c0 = solver.eigenvectors().adjoint() * psi0;

  PropagationTrace trace;
  trace.times = times;
  const int nt = static_cast<int>(times.size());
  const int dim = static_cast<int>(psi0.size());
  trace.populations.resize(nt, dim);
  trace.norms.resize(nt);
  for (int s = 0; s < nt; ++s) {
    ComplexVector phases(dim);
    for (int k = 0; k < dim; ++k)
      phases(k) = std::exp(Complex(0.0, -solver.eigenvalues()(k) * times[s])) * c0(k);
    fill_sample(trace, s, solver.eigenvectors() * phases);
  }
  return trace;
}

PropagationTrace propagate_with_decay(const ComplexMatrix& h,
                                      const ComplexVector& psi0,
                                      const std::vector<double>& times,
                                      double gamma, int first_excited) {
  require_normalized(psi0);
  const int dim = static_cast<int>(h.rows());
  ComplexMatrix h_tot = h;
  for (int k = first_excited; k < dim; ++k)
    h_tot(k, k) -= Complex(0.0, 0.5 * gamma);

  PropagationTrace trace;
  trace.times = times;
  const int nt = static_cast<int>(times.size());
  trace.populations.resize(nt, dim);
  trace.norms.resize(nt);

  Eigen::ComplexEigenSolver<ComplexMatrix> solver(h_tot);
  const double residual = max_abs(ComplexMatrix(
      h_tot * solver.eigenvectors() -
      solver.eigenvectors() * solver.eigenvalues().asDiagonal()));
  if (solver.info() == Eigen::Success && residual <= 1e-8 * max_abs(h_tot)) {
    const ComplexVector c0 = solver.eigenvectors().partialPivLu().solve(psi0);
    for (int s = 0; s < nt; ++s) {
      ComplexVector phases(dim);
      for (int k = 0; k < dim; ++k)
        phases(k) = std::exp(Complex(0.0, -1.0) * solver.eigenvalues()(k) * times[s]) * c0(k);
      fill_sample(trace, s, solver.eigenvectors() * phases);
    }
    return trace;
  }

  // ill-conditioned decomposition: step with scaling-and-squaring
  std::map<double, ComplexMatrix> step_cache;
  ComplexVector psi = psi0;
  double t_prev = 0.0;
  for (int s = 0; s < nt; ++s) {
    const double dt = times[s] - t_prev;
    if (dt < 0) throw std::invalid_argument("propagate: times must be ascending");
    if (dt > 0) {
      auto it = step_cache.find(dt);
      if (it == step_cache.end()) {
        const ComplexMatrix u = (Complex(0.0, -dt) * h_tot).exp();
        it = step_cache.emplace(dt, u).first;
      }
      psi = it->second * psi;
    }
    t_prev = times[s];
    fill_sample(trace, s, psi);
  }
  return trace;
}

std::vector<double> time_grid(double duration, int samples) {
  if (samples < 2 || duration <= 0)
    throw std::invalid_argument("time_grid: need duration > 0 and >= 2 samples");
  std::vector<double> t(samples);
  for (int k = 0; k < samples; ++k)
    t[k] = duration * static_cast<double>(k) / (samples - 1);
  return t;
}

FlipSimulation simulate_flip(const AtomSpec& spec, const FieldConfig& cfg,
                             double mi_lower, double duration, int samples,
                             const FeasibilityThresholds& thresholds,
                             std::optional<double> decay) {
  FlipSimulation sim;
  sim.record = assess_point(spec, cfg, mi_lower, thresholds);
  if (!sim.record.feasible) {
    std::string why;
    if (!sim.record.magic.exists)
      why = sim.record.magic.reason;
    else if (sim.record.p_e_bound > thresholds.p_max)
      why = "excited population bound exceeded";
    else
      why = "leakage bound exceeded";
    throw InfeasiblePoint("simulate_flip: infeasible operating point: " + why);
  }
  sim.lower_index = nuclear_index(spec, mi_lower);
  sim.upper_index = nuclear_index(spec, mi_lower + 1.0);

  FieldConfig at_magic = cfg;
  at_magic.theta = sim.record.magic.theta_star;
  const ComplexMatrix h = full_hamiltonian(spec, at_magic);
  ComplexVector psi0 = ComplexVector::Zero(spec.full_dim());
  psi0(sim.lower_index) = 1.0;

  if (duration <= 0) duration = two_pi / sim.record.magic.raman_rabi;
  const auto times = time_grid(duration, samples);
  sim.trace = decay ? propagate_with_decay(h, psi0, times, *decay,
                                           spec.ground_dim())
                    : propagate(h, psi0, times);
  return sim;
}

SinusoidFit fit_sinusoid(const std::vector<double>& times,
                         const std::vector<double>& values) {
  const int n = static_cast<int>(times.size());
  if (n < 8 || values.size() != times.size())
    throw std::invalid_argument("fit_sinusoid: need >= 8 uniform samples");
  const double dt = times[1] - times[0];
  for (int k = 1; k < n; ++k)
    if (std::abs(times[k] - times[k - 1] - dt) > 1e-9 * std::max(dt, 1e-300))
      throw std::invalid_argument("fit_sinusoid: non-uniform time grid");

  const double mean =
      std::accumulate(values.begin(), values.end(), 0.0) / n;
  double rms = 0.0;
  for (double v : values) rms += (v - mean) * (v - mean);
  rms = std::sqrt(rms / n);
  if (rms == 0.0) throw FitError("fit_sinusoid: constant trace");

  // discrete Fourier peak as the deterministic initializer
  int peak = 1;
  double peak_power = 0.0;
  for (int k = 1; k <= n / 2; ++k) {
    Complex xk(0.0, 0.0);
    for (int s = 0; s < n; ++s)
      xk += (values[s] - mean) * std::exp(Complex(0.0, -two_pi * k * s / n));
    const double p = std::norm(xk);
    if (p > peak_power) {
      peak_power = p;
      peak = k;
    }
  }
  if (peak_power == 0.0) throw FitError("fit_sinusoid: no spectral peak");

  const auto solve_at = [&](double omega, SinusoidFit* out) {
    Eigen::Matrix3d ata = Eigen::Matrix3d::Zero();
    Eigen::Vector3d atb = Eigen::Vector3d::Zero();
    for (int s = 0; s < n; ++s) {
      const Eigen::Vector3d row(1.0, std::cos(omega * times[s]),
                                std::sin(omega * times[s]));
      ata += row * row.transpose();
      atb += row * values[s];
    }
    const Eigen::Vector3d c = ata.ldlt().solve(atb);
    double res = 0.0;
    for (int s = 0; s < n; ++s) {
      const double model =
          c(0) + c(1) * std::cos(omega * times[s]) + c(2) * std::sin(omega * times[s]);
      res += (values[s] - model) * (values[s] - model);
    }
    if (out) {
      out->offset = c(0);
      out->amplitude = std::hypot(c(1), c(2));
      out->omega = omega;
      out->phase = std::atan2(-c(2), c(1));
      out->rms_residual = std::sqrt(res / n);
    }
    return res;
  };

  const double bin = two_pi / (n * dt);
  double lo = std::max(0.25 * bin, (peak - 1) * bin);
  double hi = (peak + 1) * bin;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = solve_at(x1, nullptr), f2 = solve_at(x2, nullptr);
  for (int it = 0; it < 200 && (hi - lo) > 1e-13 * hi; ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = solve_at(x1, nullptr);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = solve_at(x2, nullptr);
    }
  }
  SinusoidFit fit;
  solve_at(0.5 * (lo + hi), &fit);
  if (fit.amplitude < 1e-6 * rms)
    throw FitError("fit_sinusoid: non-oscillatory trace");
  return fit;
}

ValidationReport validate_effective(const AtomSpec& spec, const FieldConfig& cfg,
                                    double mi_lower,
                                    const FeasibilityThresholds& thresholds) {
  ValidationReport report;
  // three flops resolve the frequency; 4096 samples keep the Fourier
  // initializer sharp
  FlipSimulation sim;
  {
    const auto probe = assess_point(spec, cfg, mi_lower, thresholds);
    if (!probe.feasible)
      throw InfeasiblePoint("validate_effective: infeasible operating point");
    const double duration = 3.0 * two_pi / probe.magic.raman_rabi;
    sim = simulate_flip(spec, cfg, mi_lower, duration, 4096, thresholds);
  }
  report.predicted_raman_rabi = sim.record.magic.raman_rabi;

  std::vector<double> diff(sim.trace.times.size());
  for (size_t s = 0; s < diff.size(); ++s)
    diff[s] = sim.trace.populations(static_cast<Eigen::Index>(s), sim.lower_index) -
              sim.trace.populations(static_cast<Eigen::Index>(s), sim.upper_index);
  const auto fit = fit_sinusoid(sim.trace.times, diff);
  report.fitted_flip_frequency = fit.omega;
  report.relative_deviation =
      std::abs(fit.omega - report.predicted_raman_rabi) / report.predicted_raman_rabi;

  report.max_excited_population =
      sim.trace.max_excited_population(spec.ground_dim());
  double leak = 0.0;
  for (Eigen::Index s = 0; s < sim.trace.populations.rows(); ++s) {
    double outside = 0.0;
    for (int k = 0; k < spec.ground_dim(); ++k)
      if (k != sim.lower_index && k != sim.upper_index)
        outside += sim.trace.populations(s, k);
    leak = std::max(leak, outside);
  }
  report.max_leakage = leak;
  report.scattered_photons = scattered_photons_bound(
      spec, report.max_excited_population,
      constants::to_hz(report.predicted_raman_rabi));
  // validation thresholds are twice the design thresholds
  report.pass = report.relative_deviation <= 0.10 &&
                report.max_excited_population <= 2e-2 && report.max_leakage <= 2e-2;
  return report;
}

PropagationTrace effective_propagate(const EffectiveModel& model,
                                     const ComplexVector& psi0,
                                     const std::vector<double>& times) {
  return propagate(model.h_eff, psi0, times);
}

}  // namespace yqc
