#pragma once

#include <functional>
#include <string>
#include <vector>

#include "yqc/effective.hpp"

namespace yqc {

struct FeasibilityThresholds {
  double p_max = 1e-2;
  double leak_max = 1e-2;
  double delta_floor = default_delta_floor;
};

struct MagicAngleResult {
  double transition_mi = 0;  // lower-state label of the pair
  bool exists = false;
  double sin2_theta = 0;     // closed-form right-hand side
  double theta_star = 0;     // radians, valid when exists
  double residual = 0;       // |dE_eff(theta*)|, rad/s
  double raman_rabi = 0;     // rad/s, valid when exists
  std::string reason;        // set when !exists
};

// Effective energy difference E_eff(mI+1) - E_eff(mI) at angle theta.
double effective_splitting(const EffectiveCoefficients& coeffs, double rabi,
                           double mi_lower, double theta);
double effective_splitting(const EffectiveModel& model, double mi_lower,
                           double theta);

// Closed-form magic angle; exists only for an interior solution.
MagicAngleResult magic_angle(const EffectiveCoefficients& coeffs, double rabi,
                             double mi_lower);
MagicAngleResult magic_angle(const EffectiveModel& model, double mi_lower);

// Golden-section minimizer of |dE_eff| over [0, pi/2], tolerance 1e-10
// rad; the independent cross-check of the closed form.
double magic_angle_numeric(const EffectiveCoefficients& coeffs, double rabi,
                           double mi_lower);

double raman_rabi(const EffectiveCoefficients& coeffs, double rabi,
                  double mi_lower, double theta);
double raman_rabi(const EffectiveModel& model, double mi_lower, double theta);

struct LeakageChannel {
  double lower_mi = 0;  // lower-state label of the leaking pair
  int span = 1;         // 1 = nearest neighbor, 2 = next-nearest
  double coupling = 0;  // rad/s
  double detuning = 0;  // rad/s
  double loss = 0;
};

struct LeakageBounds {
  std::vector<LeakageChannel> channels;
  double max_loss = 0;
};

// Every off-diagonal channel of h_eff(theta) except the target pair.
LeakageBounds leakage_bounds(const EffectiveCoefficients& coeffs, double rabi,
                             double mi_lower, double theta);
LeakageBounds leakage_bounds(const EffectiveModel& model, double mi_lower,
                             double theta);

// Detuning re-centered on the mean energy of the mJ = -1 dominant
// excited manifold at field B.
double shifted_detuning(const AtomSpec& spec, double b_gauss, double detuning);
double manifold_mean_energy(const PolarizabilityBasis& basis);

struct FeasibilityRecord {
  double b_gauss = 0;
  double detuning = 0;          // rad/s
  double shifted = 0;           // rad/s
  double rabi = 0;              // rad/s
  double transition_mi = 0;
  MagicAngleResult magic;
  double p_e_bound = 0;
  double leakage_max = 0;
  bool feasible = false;
};

FeasibilityRecord assess_point(const AtomSpec& spec, const FieldConfig& cfg,
                               double mi_lower,
                               const FeasibilityThresholds& thresholds = {});

std::vector<double> all_transitions(const AtomSpec& spec);  // lower labels

// Detuning grid spanning the mJ = -1 manifold plus a margin.
std::vector<double> default_delta_grid(const AtomSpec& spec, double b_gauss,
                                       double margin, double step);
std::vector<double> log_grid(double lo, double hi, int points);
std::vector<double> linear_grid(double lo, double hi, double step);

using RecordSink = std::function<void(const FeasibilityRecord&)>;

// Feasibility per cell per transition, emitted B-major, then detuning,
// then rabi, then transition. Infeasible cells are records, not errors.
void scan_phase_diagram(const AtomSpec& spec, const std::vector<double>& b_grid,
                        const std::vector<double>& delta_grid,
                        const std::vector<double>& omega_grid,
                        const std::vector<double>& transitions,
                        const FeasibilityThresholds& thresholds,
                        const RecordSink& sink);

struct RamanSummaryRow {
  double b_gauss = 0;
  bool any_feasible = false;
  double min_rabi_magic = 0;       // smallest Omega_E with a magic angle
  double median_of_medians = 0;    // Omega_R statistics over transitions
  double median_of_maxima = 0;
};

// Summary over the records of a single field value.
RamanSummaryRow summarize_vs_b(double b_gauss,
                               const std::vector<FeasibilityRecord>& records);

double median(std::vector<double> values);

}  // namespace yqc
