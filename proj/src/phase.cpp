#include "yqc/phase.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "yqc/errors.hpp"

namespace yqc {

namespace {

std::array<double, 6> shifts_from(const Eigen::VectorXd& s, double rabi) {
  const int ni = static_cast<int>(s.size());
  if (ni != 6) throw std::invalid_argument("phase shifts: expected a 6-level manifold");
  const double mean = s.mean();
  std::array<double, 6> out{};
  for (int k = 0; k < ni; ++k)
    out[k] = -0.25 * rabi * rabi * (s(k) - mean);
  return out;
}

double dominant_label(const std::array<double, 6>& shifts, double spin) {
  int best = 0;
  for (int k = 1; k < 6; ++k)
    if (std::abs(shifts[k]) >= std::abs(shifts[best])) best = k;  // ties -> lower mI
  return spin - best;
}

}  // namespace

std::array<double, 6> diagonal_hamiltonian(const EffectiveModel& model) {
  if (model.cfg.theta != 0.0)
    throw std::invalid_argument("diagonal_hamiltonian: model was built at theta != 0");
  const int ni = static_cast<int>(model.coeffs.ground_energies.size());
  std::array<double, 6> out{};
  for (int k = 0; k < ni; ++k)
    out[k] = model.coeffs.ground_energies(k) -
             0.25 * model.cfg.rabi * model.cfg.rabi * model.coeffs.s_z(k);
  return out;
}

std::array<double, 6> centered_shifts(const EffectiveModel& model) {
  if (model.cfg.theta != 0.0)
    throw std::invalid_argument("centered_shifts: model was built at theta != 0");
  return shifts_from(model.coeffs.s_z, model.cfg.rabi);
}

double max_rabi_under_population(const AtomSpec& spec, double b_gauss,
                                 double detuning, double p_max,
                                 double delta_floor) {
  if (p_max < 0) throw std::invalid_argument("max_rabi_under_population: p_max < 0");
  const double dmin = min_detuning(spec, b_gauss, detuning);
  if (dmin <= delta_floor)
    throw SingularExcitedManifold(
        "max_rabi_under_population: minimum detuning below floor");
  return 2.0 * dmin * std::sqrt(p_max);
}

std::vector<PhaseShiftProfile> scan_phase_rates(const AtomSpec& spec,
                                                double b_gauss,
                                                const std::vector<double>& delta_grid,
                                                double p_max, double delta_floor,
                                                bool use_sx_axis) {
  PolarizabilityBasis basis(spec, b_gauss);
  const double spin = spec.nuclear_spin;
  std::vector<PhaseShiftProfile> out;
  out.reserve(delta_grid.size());
  for (const double delta : delta_grid) {
    PhaseShiftProfile p;
    p.b_gauss = b_gauss;
    p.detuning = delta;
    p.delta_min = basis.min_detuning(delta);
    if (p.delta_min <= delta_floor) {
      p.feasible = false;
      p.dominant_mi = std::numeric_limits<double>::quiet_NaN();
      out.push_back(p);
      continue;
    }
    p.feasible = true;
    p.rabi_max = 2.0 * p.delta_min * std::sqrt(p_max);
    const auto coeffs = basis.coefficients(delta, delta_floor);
    p.shifts = shifts_from(use_sx_axis ? coeffs.s_x : coeffs.s_z, p.rabi_max);
    p.dominant_mi = dominant_label(p.shifts, spin);
    out.push_back(p);
  }
  return out;
}

PhaseSummaryRow summarize_phase_vs_b(double b_gauss,
                                     const std::vector<PhaseShiftProfile>& profiles) {
  PhaseSummaryRow row;
  row.b_gauss = b_gauss;
  row.median_of_medians = std::numeric_limits<double>::quiet_NaN();
  row.median_of_maxima = row.median_of_medians;
  row.rabi_median_of_medians = row.median_of_medians;
  row.rabi_median_of_maxima = row.median_of_medians;

  std::vector<std::vector<double>> per_level(6);
  std::vector<double> rabis;
  for (const auto& p : profiles) {
    if (!p.feasible) continue;
    for (int k = 0; k < 6; ++k) per_level[k].push_back(std::abs(p.shifts[k]));
    rabis.push_back(p.rabi_max);
  }
  if (rabis.empty()) return row;

  std::vector<double> medians, maxima;
  for (const auto& level : per_level) {
    medians.push_back(median(level));
    maxima.push_back(*std::max_element(level.begin(), level.end()));
  }
  row.any_feasible = true;
  row.median_of_medians = median(medians);
  row.median_of_maxima = median(maxima);
  // the drive statistics are level-independent; the per-level median
  // collapses to the plain median over the feasible detuning range
  row.rabi_median_of_medians = median(rabis);
  row.rabi_median_of_maxima = *std::max_element(rabis.begin(), rabis.end());
  return row;
}

}  // namespace yqc
