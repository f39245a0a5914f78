#pragma once

#include <numbers>

namespace yqc::constants {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * pi;

// CODATA 2018 values, SI.
inline constexpr double hbar_si = 1.054571817e-34;          // J s
inline constexpr double epsilon0_si = 8.8541878128e-12;     // F/m
inline constexpr double speed_of_light_si = 2.99792458e8;   // m/s
inline constexpr double dipole_au_si = 8.4783536255e-30;    // C m per e*a0

// Magnetons per Gauss. All internal energies are angular frequencies
// (hbar = 1), so the rad/s forms carry the 2*pi.
inline constexpr double mu_bohr_hz_per_gauss = 1.399624604e6;  // Hz/G
inline constexpr double mu_nuclear_hz_per_gauss = 762.2593;    // Hz/G
inline constexpr double mu_bohr = two_pi * mu_bohr_hz_per_gauss;        // rad/s/G
inline constexpr double mu_nuclear = two_pi * mu_nuclear_hz_per_gauss;  // rad/s/G

// External interfaces quote frequencies; MHz-labeled values are
// ordinary frequencies, i.e. value * 2*pi in rad/s.
inline constexpr double from_mhz(double f_mhz) { return two_pi * 1e6 * f_mhz; }
inline constexpr double to_mhz(double omega) { return omega / (two_pi * 1e6); }
inline constexpr double from_hz(double f_hz) { return two_pi * f_hz; }
inline constexpr double to_hz(double omega) { return omega / two_pi; }

}  // namespace yqc::constants
