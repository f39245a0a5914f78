#pragma once

#include <array>
#include <vector>

#include "yqc/raman.hpp"

namespace yqc {

struct PhaseShiftProfile {
  double b_gauss = 0;
  double detuning = 0;               // rad/s
  bool feasible = false;             // min detuning above the floor
  double delta_min = 0;              // rad/s
  double rabi_max = 0;               // rad/s
  std::array<double, 6> shifts{};    // S_m by basis index (mI descending)
  double dominant_mi = 0;
};

// Diagonal energies of the theta = 0 effective Hamiltonian. Throws
// when the model was built at theta != 0.
std::array<double, 6> diagonal_hamiltonian(const EffectiveModel& model);

// Light shifts centered on the manifold mean (zero-sum vector).
std::array<double, 6> centered_shifts(const EffectiveModel& model);

// Largest drive compatible with the population bound: 2 delta_min sqrt(p_max).
double max_rabi_under_population(const AtomSpec& spec, double b_gauss,
                                 double detuning, double p_max,
                                 double delta_floor = default_delta_floor);

// One profile per detuning at the largest allowed drive. use_sx_axis
// evaluates the theta = pi/2 diagonal (s^x) instead; not part of the
// standard phase-gate configuration.
std::vector<PhaseShiftProfile> scan_phase_rates(
    const AtomSpec& spec, double b_gauss, const std::vector<double>& delta_grid,
    double p_max, double delta_floor = default_delta_floor,
    bool use_sx_axis = false);

struct PhaseSummaryRow {
  double b_gauss = 0;
  bool any_feasible = false;
  double median_of_medians = 0;       // |S_m| statistics across levels, rad/s
  double median_of_maxima = 0;
  double rabi_median_of_medians = 0;  // matching Omega_E statistics
  double rabi_median_of_maxima = 0;
};

PhaseSummaryRow summarize_phase_vs_b(double b_gauss,
                                     const std::vector<PhaseShiftProfile>& profiles);

}  // namespace yqc
