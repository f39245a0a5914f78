#pragma once

#include <vector>

#include "yqc/atom.hpp"

namespace yqc {

// Effective two-level scattering rate (Gamma/2) s / (1 + s + (2 delta/Gamma)^2)
// with saturation parameter s = 2 Omega^2 / Gamma^2.
double bright_rate(double gamma, double rabi, double delta);

struct StretchedTransition {
  int mj = 0;      // excited mJ of the cycling transition (+1 or -1)
  double mi = 0;   // nuclear projection of the stretched pair
};

// The spectrally isolated cycling transition of each manifold: the
// lower stretched pair for the 3P1 spec, the upper for 1P1.
StretchedTransition default_addressed(const AtomSpec& spec);

struct DarkChannel {
  double ground_mi = 0;    // dark ground state
  int excited_index = 0;   // eigenstate index at this field
  double beta = 0;         // relative coupling strength
  double detuning = 0;     // rad/s from the probe
  double rate = 0;         // rad/s
};

struct DarkRates {
  std::vector<DarkChannel> channels;
  double max_rate = 0;     // R_D
  double dominant_mi = 0;  // ground state of the dominant channel
};

// Off-resonant scattering of every non-addressed ground state under a
// circular probe resonant with the addressed transition (plus an
// optional probe detuning). One channel per (ground, excited) pair
// with coupling above 1e-6.
DarkRates dark_rates(const AtomSpec& spec, double b_gauss, double rabi,
                     const StretchedTransition& addressed,
                     double probe_detuning = 0.0);

struct ReadoutPoint {
  double b_gauss = 0;
  double rabi = 0;            // rad/s
  double probe_detuning = 0;  // rad/s
  double r_bright = 0;        // rad/s
  double r_dark = 0;          // rad/s
  double contrast = 0;        // r_bright / r_dark
  double dominant_mi = 0;
};

std::vector<ReadoutPoint> scan_readout(const AtomSpec& spec,
                                       const std::vector<double>& b_grid,
                                       const std::vector<double>& omega_grid,
                                       double probe_detuning = 0.0);

}  // namespace yqc
