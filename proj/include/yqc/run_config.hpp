#pragma once

#include <optional>
#include <string>
#include <vector>

#include "yqc/raman.hpp"

namespace yqc {

// Flat key=value configuration with [section] headers. MHz-labeled
// keys are frequencies (value * 2*pi rad/s internally); fields are in
// Gauss. Unknown keys are parse errors.
struct RunConfig {
  std::string spec_name = "Yb173_3P1";
  std::optional<double> g_j_override;
  int threads = 1;

  // [grid] raman/phase scans
  double b_min = 50.0, b_max = 2000.0, b_step = 25.0;  // Gauss
  double delta_margin = constants::from_mhz(3000.0);   // around the manifold
  double delta_step = constants::from_mhz(10.0);
  double omega_min = constants::from_mhz(1.0);
  double omega_max = constants::from_mhz(100.0);
  int omega_points = 40;  // log-spaced

  // [readout]
  double readout_b_min = 50.0, readout_b_max = 1000.0, readout_b_step = 25.0;
  std::optional<double> readout_omega_min, readout_omega_max;  // spec-dependent
  int readout_omega_points = 40;
  double probe_detuning = 0.0;

  // [thresholds]
  FeasibilityThresholds thresholds;

  // [point]
  double point_b = 500.0;
  double point_delta = constants::from_mhz(-3000.0);
  double point_rabi = constants::from_mhz(15.0);
  double point_mi = -0.5;
  double waist = 50e-6;  // m

  AtomSpec resolve_spec() const;
  FieldConfig point() const;
  std::vector<double> b_grid() const;
  std::vector<double> omega_grid() const;
  std::vector<double> readout_b_grid() const;
  std::vector<double> readout_omega_grid(const AtomSpec& spec) const;

  // Canonical key=value rendering; hashed into the scan sidecar.
  std::string canonical_text() const;

  static RunConfig parse_file(const std::string& path);   // throws ConfigError
  static RunConfig parse_text(const std::string& text);
};

uint64_t fnv1a_hash(const std::string& text);

}  // namespace yqc
