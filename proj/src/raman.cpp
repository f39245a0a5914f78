#include "yqc/raman.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "yqc/errors.hpp"

namespace yqc {

namespace {

constexpr double quiet_nan = std::numeric_limits<double>::quiet_NaN();

int pair_upper_index(int ni, double mi_lower) {
  // pair couples basis indices (k, k+1); k holds mI = mi_lower + 1
  const double spin = 0.5 * (ni - 1);
  const double kf = spin - (mi_lower + 1.0);
  const int k = static_cast<int>(std::round(kf));
  if (std::abs(kf - k) > 1e-9 || k < 0 || k + 1 >= ni)
    throw std::invalid_argument("invalid lower transition label");
  return k;
}

double diag_energy(const EffectiveCoefficients& c, double rabi, double theta,
                   int k) {
  const double st = std::sin(theta), ct = std::cos(theta);
  return c.ground_energies(k) -
         0.25 * rabi * rabi * (c.s_z(k) * ct * ct + c.s_x(k) * st * st);
}

double two_level_loss(double coupling, double detuning) {
  const double n = coupling * coupling;
  const double d = n + detuning * detuning;
  if (d == 0.0) return 0.0;  // zero coupling and zero detuning
  return n / d;
}

}  // namespace

double effective_splitting(const EffectiveCoefficients& coeffs, double rabi,
                           double mi_lower, double theta) {
  const int ni = static_cast<int>(coeffs.ground_energies.size());
  const int k = pair_upper_index(ni, mi_lower);
  return diag_energy(coeffs, rabi, theta, k) -
         diag_energy(coeffs, rabi, theta, k + 1);
}

double effective_splitting(const EffectiveModel& model, double mi_lower,
                           double theta) {
  return effective_splitting(model.coeffs, model.cfg.rabi, mi_lower, theta);
}

MagicAngleResult magic_angle(const EffectiveCoefficients& coeffs, double rabi,
                             double mi_lower) {
  const int ni = static_cast<int>(coeffs.ground_energies.size());
  const int k = pair_upper_index(ni, mi_lower);

  MagicAngleResult res;
  res.transition_mi = mi_lower;
  res.sin2_theta = quiet_nan;
  res.theta_star = quiet_nan;
  res.residual = quiet_nan;
  res.raman_rabi = quiet_nan;

  if (rabi <= 0.0) {
    res.reason = "no magic angle: zero drive";
    return res;
  }
  const double de_ground = coeffs.ground_energies(k) - coeffs.ground_energies(k + 1);
  const double dsz = coeffs.s_z(k) - coeffs.s_z(k + 1);
  const double dsx = coeffs.s_x(k) - coeffs.s_x(k + 1);
  const double denom = dsx - dsz;
  const double scale = std::max(std::abs(dsx), std::abs(dsz));
  if (scale == 0.0 || std::abs(denom) < 1e-14 * scale) {
    res.reason = "no magic angle: degenerate coefficients";
    return res;
  }
  const double rhs = (4.0 * de_ground / (rabi * rabi) - dsz) / denom;
  res.sin2_theta = rhs;
  constexpr double interior = 1e-12;
  if (!(rhs > interior) || !(rhs < 1.0 - interior)) {
    res.reason = "no magic angle: sin^2 theta* outside (0, 1)";
    return res;
  }
  res.exists = true;
  res.theta_star = std::asin(std::sqrt(rhs));
  res.residual = std::abs(effective_splitting(coeffs, rabi, mi_lower, res.theta_star));
  res.raman_rabi = raman_rabi(coeffs, rabi, mi_lower, res.theta_star);
  return res;
}

MagicAngleResult magic_angle(const EffectiveModel& model, double mi_lower) {
  return magic_angle(model.coeffs, model.cfg.rabi, mi_lower);
}

double magic_angle_numeric(const EffectiveCoefficients& coeffs, double rabi,
                           double mi_lower) {
  const auto f = [&](double theta) {
    return std::abs(effective_splitting(coeffs, rabi, mi_lower, theta));
  };
  double a = 0.0, b = constants::pi / 2.0;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > 1e-10) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = f(x2);
    }
  }
  const double mid = 0.5 * (a + b);
  // prefer the smallest angle among ties with the boundaries
  const double fm = f(mid);
  if (f(0.0) <= fm) return 0.0;
  if (f(constants::pi / 2.0) < fm) return constants::pi / 2.0;
  return mid;
}

double raman_rabi(const EffectiveCoefficients& coeffs, double rabi,
                  double mi_lower, double theta) {
  const int ni = static_cast<int>(coeffs.ground_energies.size());
  const int k = pair_upper_index(ni, mi_lower);
  return 0.5 * rabi * rabi *
         std::abs(coeffs.g(k) * std::sin(theta) * std::cos(theta));
}

double raman_rabi(const EffectiveModel& model, double mi_lower, double theta) {
  return raman_rabi(model.coeffs, model.cfg.rabi, mi_lower, theta);
}

LeakageBounds leakage_bounds(const EffectiveCoefficients& coeffs, double rabi,
                             double mi_lower, double theta) {
  const int ni = static_cast<int>(coeffs.ground_energies.size());
  const double spin = 0.5 * (ni - 1);
  const int target = pair_upper_index(ni, mi_lower);
  const double st = std::sin(theta), ct = std::cos(theta);

  LeakageBounds out;
  for (int k = 0; k + 1 < ni; ++k) {
    if (k == target) continue;
    LeakageChannel ch;
    ch.lower_mi = spin - (k + 1);
    ch.span = 1;
    ch.coupling = 0.5 * rabi * rabi * std::abs(coeffs.g(k) * st * ct);
    ch.detuning = diag_energy(coeffs, rabi, theta, k) -
                  diag_energy(coeffs, rabi, theta, k + 1);
    ch.loss = two_level_loss(ch.coupling, ch.detuning);
    out.channels.push_back(ch);
  }
  for (int k = 0; k + 2 < ni; ++k) {
    LeakageChannel ch;
    ch.lower_mi = spin - (k + 2);
    ch.span = 2;
    ch.coupling = 0.5 * rabi * rabi * std::abs(coeffs.h(k)) * st * st;
    ch.detuning = diag_energy(coeffs, rabi, theta, k) -
                  diag_energy(coeffs, rabi, theta, k + 2);
    ch.loss = two_level_loss(ch.coupling, ch.detuning);
    out.channels.push_back(ch);
  }
  out.max_loss = 0.0;
  for (const auto& ch : out.channels) out.max_loss = std::max(out.max_loss, ch.loss);
  return out;
}

LeakageBounds leakage_bounds(const EffectiveModel& model, double mi_lower,
                             double theta) {
  return leakage_bounds(model.coeffs, model.cfg.rabi, mi_lower, theta);
}

double manifold_mean_energy(const PolarizabilityBasis& basis) {
  const auto& spec = basis.spec();
  const int ni = spec.nuclear_dim();
  const int ne = spec.excited_dim();
  const auto& vecs = basis.excited_vectors();

  double sum = 0.0;
  int count = 0;
  for (int nu = 0; nu < ne; ++nu) {
    double w[3] = {0.0, 0.0, 0.0};  // mJ = +1, 0, -1
    for (int e = 0; e < ne; ++e) w[e / ni] += std::norm(vecs(e, nu));
    const int dominant = static_cast<int>(std::max_element(w, w + 3) - w);
    if (dominant == 2) {
      sum += basis.excited_energies()(nu);
      ++count;
    }
  }
  if (count != ni)
    throw AmbiguousCharacter(
        "manifold_mean_energy: mJ = -1 character assignment is ambiguous (" +
        std::to_string(count) + " states instead of " + std::to_string(ni) + ")");
  return sum / count;
}

double shifted_detuning(const AtomSpec& spec, double b_gauss, double detuning) {
  return detuning - manifold_mean_energy(PolarizabilityBasis(spec, b_gauss));
}

std::vector<double> all_transitions(const AtomSpec& spec) {
  std::vector<double> out;
  for (int k = spec.nuclear_dim() - 2; k >= 0; --k)
    out.push_back(nuclear_label(spec, k + 1));  // ascending lower labels
  return out;
}

std::vector<double> default_delta_grid(const AtomSpec& spec, double b_gauss,
                                       double margin, double step) {
  if (step <= 0) throw std::invalid_argument("default_delta_grid: step must be > 0");
  PolarizabilityBasis basis(spec, b_gauss);
  double lo, hi;
  try {
    const int ni = spec.nuclear_dim();
    const int ne = spec.excited_dim();
    const auto& vecs = basis.excited_vectors();
    lo = std::numeric_limits<double>::infinity();
    hi = -lo;
    int count = 0;
    for (int nu = 0; nu < ne; ++nu) {
      double w[3] = {0.0, 0.0, 0.0};
      for (int e = 0; e < ne; ++e) w[e / ni] += std::norm(vecs(e, nu));
      if (static_cast<int>(std::max_element(w, w + 3) - w) == 2) {
        lo = std::min(lo, basis.excited_energies()(nu));
        hi = std::max(hi, basis.excited_energies()(nu));
        ++count;
      }
    }
    if (count != ni) throw AmbiguousCharacter("fallback");
  } catch (const AmbiguousCharacter&) {
    lo = basis.excited_energies().minCoeff();
    hi = basis.excited_energies().maxCoeff();
  }
  return linear_grid(lo - margin, hi + margin, step);
}

std::vector<double> log_grid(double lo, double hi, int points) {
  if (points < 1 || lo <= 0 || hi < lo)
    throw std::invalid_argument("log_grid: invalid range");
  std::vector<double> out;
  if (points == 1) return {lo};
  const double ratio = std::log(hi / lo) / (points - 1);
  for (int k = 0; k < points; ++k) out.push_back(lo * std::exp(ratio * k));
  return out;
}

std::vector<double> linear_grid(double lo, double hi, double step) {
  if (step <= 0 || hi < lo) throw std::invalid_argument("linear_grid: invalid range");
  std::vector<double> out;
  const int n = static_cast<int>(std::floor((hi - lo) / step)) + 1;
  for (int k = 0; k < n; ++k) out.push_back(lo + k * step);
  return out;
}

FeasibilityRecord assess_point(const AtomSpec& spec, const FieldConfig& cfg,
                               double mi_lower,
                               const FeasibilityThresholds& thresholds) {
  PolarizabilityBasis basis(spec, cfg.b_gauss);
  FeasibilityRecord rec;
  rec.b_gauss = cfg.b_gauss;
  rec.detuning = cfg.detuning;
  rec.rabi = cfg.rabi;
  rec.transition_mi = mi_lower;
  try {
    rec.shifted = cfg.detuning - manifold_mean_energy(basis);
  } catch (const AmbiguousCharacter&) {
    rec.shifted = quiet_nan;
  }
  const double dmin = basis.min_detuning(cfg.detuning);
  rec.p_e_bound = dmin > 0 ? excited_population_bound(cfg.rabi, dmin)
                           : std::numeric_limits<double>::infinity();
  if (dmin <= thresholds.delta_floor) {
    rec.magic.transition_mi = mi_lower;
    rec.magic.reason = "no magic angle: minimum detuning below floor";
    rec.leakage_max = quiet_nan;
    rec.feasible = false;
    return rec;
  }
  const auto coeffs = basis.coefficients(cfg.detuning, thresholds.delta_floor);
  rec.magic = magic_angle(coeffs, cfg.rabi, mi_lower);
  rec.leakage_max =
      rec.magic.exists
          ? leakage_bounds(coeffs, cfg.rabi, mi_lower, rec.magic.theta_star).max_loss
          : quiet_nan;
  rec.feasible = rec.magic.exists && rec.p_e_bound <= thresholds.p_max &&
                 rec.leakage_max <= thresholds.leak_max;
  return rec;
}

void scan_phase_diagram(const AtomSpec& spec, const std::vector<double>& b_grid,
                        const std::vector<double>& delta_grid,
                        const std::vector<double>& omega_grid,
                        const std::vector<double>& transitions,
                        const FeasibilityThresholds& thresholds,
                        const RecordSink& sink) {
  for (const double b : b_grid) {
    PolarizabilityBasis basis(spec, b);
    double mean = quiet_nan;
    try {
      mean = manifold_mean_energy(basis);
    } catch (const AmbiguousCharacter&) {
    }
    for (const double delta : delta_grid) {
      const double dmin = basis.min_detuning(delta);
      const bool floored = dmin <= thresholds.delta_floor;
      EffectiveCoefficients coeffs;
      if (!floored) coeffs = basis.coefficients(delta, thresholds.delta_floor);
      for (const double rabi : omega_grid) {
        const double p_e = dmin > 0
                               ? excited_population_bound(rabi, dmin)
                               : std::numeric_limits<double>::infinity();
        for (const double mi : transitions) {
          FeasibilityRecord rec;
          rec.b_gauss = b;
          rec.detuning = delta;
          rec.shifted = delta - mean;
          rec.rabi = rabi;
          rec.transition_mi = mi;
          rec.p_e_bound = p_e;
          if (floored) {
            rec.magic.transition_mi = mi;
            rec.magic.reason = "no magic angle: minimum detuning below floor";
            rec.leakage_max = quiet_nan;
            rec.feasible = false;
          } else {
            rec.magic = magic_angle(coeffs, rabi, mi);
            rec.leakage_max =
                rec.magic.exists
                    ? leakage_bounds(coeffs, rabi, mi, rec.magic.theta_star).max_loss
                    : quiet_nan;
            rec.feasible = rec.magic.exists && p_e <= thresholds.p_max &&
                           rec.leakage_max <= thresholds.leak_max;
          }
          sink(rec);
        }
      }
    }
  }
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median: empty input");
  std::sort(values.begin(), values.end());
  const size_t n = values.size();
  return n % 2 == 1 ? values[n / 2]
                    : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

RamanSummaryRow summarize_vs_b(double b_gauss,
                               const std::vector<FeasibilityRecord>& records) {
  RamanSummaryRow row;
  row.b_gauss = b_gauss;
  row.min_rabi_magic = quiet_nan;
  row.median_of_medians = quiet_nan;
  row.median_of_maxima = quiet_nan;

  std::map<double, std::vector<double>> rabi_by_transition;
  for (const auto& rec : records) {
    if (rec.magic.exists &&
        (std::isnan(row.min_rabi_magic) || rec.rabi < row.min_rabi_magic))
      row.min_rabi_magic = rec.rabi;
    if (rec.feasible) rabi_by_transition[rec.transition_mi].push_back(rec.magic.raman_rabi);
  }
  if (rabi_by_transition.empty()) return row;

  std::vector<double> medians, maxima;
  for (auto& [mi, rates] : rabi_by_transition) {
    medians.push_back(median(rates));
    maxima.push_back(*std::max_element(rates.begin(), rates.end()));
  }
  row.any_feasible = true;
  row.median_of_medians = median(medians);
  row.median_of_maxima = median(maxima);
  return row;
}

}  // namespace yqc
