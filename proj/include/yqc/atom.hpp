#pragma once

#include <string>
#include <vector>

#include "yqc/constants.hpp"
#include "yqc/spin_ops.hpp"

namespace yqc {

// Constants of one electronic transition. Energies are angular
// frequencies (rad/s), the dipole moment is in atomic units (e*a0),
// the wavelength in meters.
struct AtomSpec {
  double nuclear_spin = 0;   // I
  double excited_j = 0;      // J of the excited level
  double g_j = 0;
  double g_i = 0;
  double hyperfine_a = 0;    // rad/s
  double hyperfine_q = 0;    // rad/s
  double decay_rate = 0;     // rad/s
  double dipole_moment = 0;  // e*a0
  double wavelength = 0;     // m
  std::string label;

  int nuclear_dim() const { return static_cast<int>(2.0 * nuclear_spin) + 1; }
  int excited_multiplicity() const { return static_cast<int>(2.0 * excited_j) + 1; }
  int ground_dim() const { return nuclear_dim(); }
  int excited_dim() const { return excited_multiplicity() * nuclear_dim(); }
  int full_dim() const { return (1 + excited_multiplicity()) * nuclear_dim(); }
};

// Control knobs of one operating point. B in Gauss along +z, detuning
// Delta = omega0 - omega in rad/s, rabi = electronic Rabi frequency
// Omega_E in rad/s, theta = linear-polarization angle in [0, pi/2].
struct FieldConfig {
  double b_gauss = 0;
  double detuning = 0;
  double rabi = 0;
  double theta = 0;
};

AtomSpec builtin_spec(const std::string& name);  // Yb173_3P1 | Yb173_1P1
std::vector<std::string> builtin_spec_names();

// Basis contract used by every module: descending m everywhere.
// Electronic order (ground; mJ = +1, 0, -1), nuclear order
// mI = +I ... -I, full-space index = electronic * (2I+1) + nuclear.
int nuclear_index(const AtomSpec& spec, double mi);
double nuclear_label(const AtomSpec& spec, int index);

// Zeeman term (g_J mu_B Jz - g_I mu_N Iz) B on the full space; J acts
// as zero on the ground level. Diagonal in the product basis.
ComplexMatrix h_zeeman(const AtomSpec& spec, double b_gauss);

// A I.J + quadrupole term, nonzero on the excited manifold only.
// Requires excited_j = 1 and I >= 1.
ComplexMatrix h_hyperfine(const AtomSpec& spec);

// Ground-to-excited coupling block W of the laser term, dimensions
// (2I+1) x 3(2I+1). Rows ground mI, columns excited (mJ, mI).
ComplexMatrix coupling_block(const AtomSpec& spec, double rabi, double theta);

// Full rotating-frame Hamiltonian of Eqs. (1)-(5): Zeeman + hyperfine
// - Delta on the excited manifold + laser coupling.
ComplexMatrix full_hamiltonian(const AtomSpec& spec, const FieldConfig& cfg);

struct ExcitedSpectrum {
  Eigen::VectorXd eigenvalues;  // ascending, rad/s (includes -Delta)
  ComplexMatrix eigenvectors;   // columns, product-basis coordinates
};

// Hermitian eigendecomposition of the excited block. Solved per
// mF = mJ + mI block (an exact symmetry of the static Hamiltonian),
// merged ascending, eigenvector phases fixed deterministically.
ExcitedSpectrum excited_spectrum(const AtomSpec& spec, double b_gauss,
                                 double detuning);

// delta_min: distance of the laser from the nearest excited eigenvalue,
// min_nu |E_nu(B, Delta=0) - Delta|.
double min_detuning(const AtomSpec& spec, double b_gauss, double detuning);

struct SpectrumCurve {
  struct Character {
    int mj = 0;
    double mi = 0;
    double weight = 0;  // squared amplitude of the dominant component
  };
  std::vector<double> field_grid;                        // Gauss
  std::vector<std::vector<double>> excited_levels;       // [level][field]
  std::vector<std::vector<Character>> excited_characters;
  std::vector<std::vector<double>> ground_levels;        // [level][field]
  std::vector<double> ground_mi;                         // fixed labels
};

// Adiabatically tracked level curves over an ascending field grid.
// Throws TrackingError when successive eigenvector overlap drops
// below 0.5 on some interval.
SpectrumCurve breit_rabi(const AtomSpec& spec, const std::vector<double>& b_grid);

// Rabi frequency <-> peak intensity for this transition, and Gaussian
// beam power for a given waist. Intensities in W/cm^2, power in W.
double rabi_to_intensity(const AtomSpec& spec, double rabi);
double intensity_to_rabi(const AtomSpec& spec, double intensity_w_cm2);
double power_for_waist(double intensity_w_cm2, double waist_m);

}  // namespace yqc
