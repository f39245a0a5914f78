#pragma once

#include <array>

#include "yqc/atom.hpp"

namespace yqc {

// Below this minimum detuning the excited-manifold resolvent is
// declared singular and the operating point infeasible.
inline constexpr double default_delta_floor = constants::two_pi * 1e6;  // rad/s

// Operator-valued dynamic polarizability: 3x3 tensor of blocks on the
// nuclear manifold, units 1/(rad/s). Component order x, y, z.
struct PolarizabilityTensor {
  std::array<std::array<ComplexMatrix, 3>, 3> comp;
  const ComplexMatrix& operator()(int i, int j) const { return comp[i][j]; }
  ComplexMatrix& operator()(int i, int j) { return comp[i][j]; }
};

// Five-diagonal coefficient sequences of the effective Hamiltonian,
// indexed by nuclear basis index (mI descending). s, g, h carry units
// 1/(rad/s); they are scaled by Omega_E^2/4 on assembly.
struct EffectiveCoefficients {
  Eigen::VectorXd ground_energies;  // 2I+1, rad/s
  Eigen::VectorXd s_z, s_x;         // 2I+1
  Eigen::VectorXcd g;               // 2I, couples (k, k+1)
  Eigen::VectorXcd h;               // 2I-1, couples (k, k+2)
  double delta_min = 0;             // rad/s
};

// Excited eigenbasis at fixed (spec, B); the detuning only shifts the
// resolvent denominators, so one decomposition serves a whole
// detuning scan.
class PolarizabilityBasis {
 public:
  PolarizabilityBasis(const AtomSpec& spec, double b_gauss);

  // Throws SingularExcitedManifold when min detuning <= floor.
  PolarizabilityTensor tensor(double detuning,
                              double delta_floor = default_delta_floor) const;
  EffectiveCoefficients coefficients(double detuning,
                                     double delta_floor = default_delta_floor) const;

  double min_detuning(double detuning) const;
  const Eigen::VectorXd& excited_energies() const { return energies_; }
  const ComplexMatrix& excited_vectors() const { return vectors_; }
  const AtomSpec& spec() const { return spec_; }
  double b_gauss() const { return b_; }

 private:
  AtomSpec spec_;
  double b_;
  Eigen::VectorXd energies_;              // at Delta = 0, ascending
  ComplexMatrix vectors_;                 // 18x18
  std::array<ComplexMatrix, 3> channel_;  // <nu| D_i x 1 |g, m>, 18 x (2I+1)
  Eigen::VectorXd ground_;                // ground Zeeman energies
};

PolarizabilityTensor polarizability(const AtomSpec& spec, double b_gauss,
                                    double detuning);

struct EffectiveModel {
  EffectiveCoefficients coeffs;
  FieldConfig cfg;
  ComplexMatrix h_eff;  // (2I+1) square, rad/s
};

// H_eff = H_G - (Omega_E^2/4) eps'(theta) alpha eps(theta), contracted
// from the full polarizability blocks.
EffectiveModel effective_hamiltonian(const AtomSpec& spec, const FieldConfig& cfg);
EffectiveModel effective_model_from(const PolarizabilityBasis& basis,
                                    const FieldConfig& cfg,
                                    double delta_floor = default_delta_floor);

// Independent assembly route from the coefficient sequences (band form).
ComplexMatrix assemble_five_diagonal(const EffectiveCoefficients& coeffs,
                                     double rabi, double theta);

// Crude excited-population bound Omega_E^2 / (4 delta_min^2).
double excited_population_bound(double rabi, double delta_min);

// Scattered photons per operation, Gamma * p_E / f_op (f_op in Hz).
double scattered_photons_bound(const AtomSpec& spec, double p_excited,
                               double f_op_hz);

}  // namespace yqc
