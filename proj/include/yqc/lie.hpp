#pragma once

#include <string>
#include <vector>

#include "yqc/raman.hpp"

namespace yqc {

struct ControlGenerator {
  ComplexMatrix h;  // Hermitian, traceless, rad/s
  std::string tag;
};

struct ControlSet {
  std::vector<ControlGenerator> generators;
  std::vector<std::string> provenance;  // operating points used
};

struct FlipPoint {
  double detuning = 0;  // rad/s
  double rabi = 0;      // rad/s
  double transition_mi = 0;
};

struct PhasePoint {
  double detuning = 0;  // rad/s
  double rabi = 0;      // rad/s
};

// Traceless-projected flip Hamiltonians h_eff(theta*) plus diagonal
// phase Hamiltonians h_eff(0). Flip points must be feasible for their
// transition; phase profiles must have pairwise-distinct, nonzero
// neighboring level differences.
ControlSet build_control_set(const AtomSpec& spec, double b_gauss,
                             const std::vector<FlipPoint>& flips,
                             const std::vector<PhasePoint>& phases,
                             const FeasibilityThresholds& thresholds = {},
                             double distinct_tol = 1e-6);

struct LieClosureReport {
  int dimension = 0;
  std::vector<int> basis_rank_history;
  bool converged = false;
  double tolerance = 0;
};

// Dimension of the real Lie algebra generated by {i H_k} under
// commutation. Rank via singular values above tol relative to the
// largest, generators normalized to unit Hilbert-Schmidt norm.
LieClosureReport lie_closure(const std::vector<ComplexMatrix>& generators,
                             double tol = 1e-9);

struct IsolationResult {
  ComplexMatrix coupling;    // proportional to the pair-exchange generator
  int polynomial_degree = 0;
};

// Lagrange-filtered double commutator: annihilates the diagonal and
// every non-target coupling of a five-diagonal flip generator, leaving
// the nearest-neighbor coupling on pair (pair_index, pair_index + 1).
IsolationResult isolate_coupling(const ComplexMatrix& h_flip,
                                 const ComplexMatrix& h_phi, int pair_index,
                                 double distinct_tol = 1e-6);

struct Su2Triple {
  ComplexMatrix x, y, z;
  int pair_index = 0;
};

// Local su(2) on the pair addressed by an isolated coupling:
// Y from [h_phi, X] / (i Delta), Z from [X, Y] / (2i).
Su2Triple pair_su2(const ComplexMatrix& x_like, const ComplexMatrix& h_phi);

struct ControlSearchResult {
  std::vector<FlipPoint> flips;
  PhasePoint phase;
  std::vector<std::string> notes;
};

// Deterministic search over the scan grids for one feasible flip point
// per transition (largest Raman rate) and one phase point passing the
// distinctness requirement.
ControlSearchResult find_control_points(const AtomSpec& spec, double b_gauss,
                                        const std::vector<double>& delta_grid,
                                        const std::vector<double>& omega_grid,
                                        const FeasibilityThresholds& thresholds = {},
                                        double distinct_tol = 1e-6);

}  // namespace yqc
