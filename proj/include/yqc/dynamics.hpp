#pragma once

#include <optional>
#include <vector>

#include "yqc/raman.hpp"

namespace yqc {

struct PropagationTrace {
  std::vector<double> times;     // s
  Eigen::MatrixXd populations;   // n_times x dim
  Eigen::VectorXd norms;         // n_times; non-increasing with decay

  // Sum of populations from first_excited onward, per time sample.
  Eigen::VectorXd excited_population(int first_excited) const;
  double max_excited_population(int first_excited) const;
};

// psi(t) = exp(-i h t) psi0 via Hermitian eigendecomposition; h is the
// time-independent rotating-frame Hamiltonian.
PropagationTrace propagate(const ComplexMatrix& h, const ComplexVector& psi0,
                           const std::vector<double>& times);

// Non-Hermitian variant h - i (gamma/2) P_E; norm loss accumulates the
// scattering probability. Uses a general eigendecomposition with a
// residual check, falling back to per-step scaling-and-squaring.
PropagationTrace propagate_with_decay(const ComplexMatrix& h,
                                      const ComplexVector& psi0,
                                      const std::vector<double>& times,
                                      double gamma, int first_excited);

std::vector<double> time_grid(double duration, int samples);

struct FlipSimulation {
  PropagationTrace trace;       // 24-level populations
  FeasibilityRecord record;
  int lower_index = 0;          // ground basis index of |g, mI>
  int upper_index = 0;          // ground basis index of |g, mI+1>
};

// Exact 24-level propagation of one flop starting in |g, mI> at the
// magic angle of the operating point. Rejects infeasible points,
// naming the failed condition. duration <= 0 selects 2 pi / Omega_R.
FlipSimulation simulate_flip(const AtomSpec& spec, const FieldConfig& cfg,
                             double mi_lower, double duration = 0.0,
                             int samples = 2001,
                             const FeasibilityThresholds& thresholds = {},
                             std::optional<double> decay = std::nullopt);

struct SinusoidFit {
  double offset = 0;
  double amplitude = 0;
  double omega = 0;  // rad/s
  double phase = 0;
  double rms_residual = 0;
};

// Least-squares fit of a + b cos(w t + phi); initialized from the
// discrete Fourier peak, refined by golden section on the concentrated
// residual. Throws FitError for non-oscillatory input.
SinusoidFit fit_sinusoid(const std::vector<double>& times,
                         const std::vector<double>& values);

struct ValidationReport {
  double fitted_flip_frequency = 0;   // rad/s
  double predicted_raman_rabi = 0;    // rad/s
  double relative_deviation = 0;
  double max_excited_population = 0;
  double max_leakage = 0;             // ground population outside the pair
  double scattered_photons = 0;
  bool pass = false;
};

// Full-dynamics check of the effective model at one operating point:
// fitted flip frequency vs the closed-form Raman rate over >= 3 flops.
ValidationReport validate_effective(const AtomSpec& spec, const FieldConfig& cfg,
                                    double mi_lower,
                                    const FeasibilityThresholds& thresholds = {});

// Same propagation contract on the effective 6-level model.
PropagationTrace effective_propagate(const EffectiveModel& model,
                                     const ComplexVector& psi0,
                                     const std::vector<double>& times);

}  // namespace yqc
