#include "yqc/lie.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "yqc/errors.hpp"

namespace yqc {

namespace {

ComplexMatrix traceless(const ComplexMatrix& m) {
  const int n = static_cast<int>(m.rows());
  return m - (m.trace() / static_cast<double>(n)) * ComplexMatrix::Identity(n, n);
}

// Hermitian n x n <-> real vector of dimension n^2 preserving the
// Hilbert-Schmidt norm.
Eigen::VectorXd vectorize_hermitian(const ComplexMatrix& m) {
  const int n = static_cast<int>(m.rows());
  Eigen::VectorXd v(n * n);
  int p = 0;
  for (int i = 0; i < n; ++i) v(p++) = m(i, i).real();
  const double rt2 = std::sqrt(2.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      v(p++) = rt2 * m(i, j).real();
      v(p++) = rt2 * m(i, j).imag();
    }
  return v;
}

ComplexMatrix unvectorize_hermitian(const Eigen::VectorXd& v, int n) {
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  int p = 0;
  for (int i = 0; i < n; ++i) m(i, i) = v(p++);
  const double inv_rt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double re = v(p++) * inv_rt2;
      const double im = v(p++) * inv_rt2;
      m(i, j) = Complex(re, im);
      m(j, i) = Complex(re, -im);
    }
  return m;
}

// Bracket on Hermitian matrices equivalent to the commutator of the
// anti-Hermitian generators iH.
ComplexMatrix bracket(const ComplexMatrix& a, const ComplexMatrix& b) {
  return imag_unit * (a * b - b * a);
}

std::vector<double> neighbor_gaps(const Eigen::VectorXd& lambda) {
  std::vector<double> gaps;
  for (int k = 0; k + 1 < lambda.size(); ++k)
    gaps.push_back(lambda(k) - lambda(k + 1));
  return gaps;
}

void require_distinct_gaps(const Eigen::VectorXd& lambda, double tol) {
  const auto gaps = neighbor_gaps(lambda);
  std::vector<double> sq;
  for (double g : gaps) sq.push_back(g * g);
  const double top = *std::max_element(sq.begin(), sq.end());
  if (top == 0.0)
    throw DistinctnessViolation("phase profile has no level differences");
  for (size_t a = 0; a < sq.size(); ++a) {
    if (sq[a] < tol * top)
      throw DistinctnessViolation("phase profile has a vanishing neighboring gap");
    for (size_t b = a + 1; b < sq.size(); ++b)
      if (std::abs(sq[a] - sq[b]) < tol * top)
        throw DistinctnessViolation(
            "phase profile has coinciding squared neighboring gaps");
  }
}

double distinctness_margin(const Eigen::VectorXd& lambda) {
  const auto gaps = neighbor_gaps(lambda);
  std::vector<double> sq;
  for (double g : gaps) sq.push_back(g * g);
  const double top = *std::max_element(sq.begin(), sq.end());
  if (top == 0.0) return 0.0;
  double margin = std::numeric_limits<double>::infinity();
  for (size_t a = 0; a < sq.size(); ++a) {
    margin = std::min(margin, sq[a] / top);
    for (size_t b = a + 1; b < sq.size(); ++b)
      margin = std::min(margin, std::abs(sq[a] - sq[b]) / top);
  }
  return margin;
}

}  // namespace

ControlSet build_control_set(const AtomSpec& spec, double b_gauss,
                             const std::vector<FlipPoint>& flips,
                             const std::vector<PhasePoint>& phases,
                             const FeasibilityThresholds& thresholds,
                             double distinct_tol) {
  if (phases.empty())
    throw std::invalid_argument("build_control_set: at least one phase point required");
  PolarizabilityBasis basis(spec, b_gauss);
  ControlSet set;

  for (const auto& fp : flips) {
    FieldConfig cfg{b_gauss, fp.detuning, fp.rabi, 0.0};
    const auto rec = assess_point(spec, cfg, fp.transition_mi, thresholds);
    if (!rec.feasible) {
      std::string why = !rec.magic.exists        ? rec.magic.reason
                        : rec.p_e_bound > thresholds.p_max
                            ? "population bound violated"
                            : "leakage bound violated";
      throw InfeasiblePoint("build_control_set: flip point infeasible (" + why + ")");
    }
    cfg.theta = rec.magic.theta_star;
    const auto model = effective_model_from(basis, cfg, thresholds.delta_floor);
    ControlGenerator gen;
    gen.h = traceless(model.h_eff);
    gen.tag = "flip mI=" + std::to_string(fp.transition_mi);
    set.generators.push_back(std::move(gen));
    set.provenance.push_back(
        "flip mI=" + std::to_string(fp.transition_mi) +
        " B=" + std::to_string(b_gauss) + "G" +
        " delta=" + std::to_string(constants::to_mhz(fp.detuning)) + "MHz" +
        " omegaE=" + std::to_string(constants::to_mhz(fp.rabi)) + "MHz" +
        " theta=" + std::to_string(rec.magic.theta_star) + "rad");
  }

  for (const auto& pp : phases) {
    FieldConfig cfg{b_gauss, pp.detuning, pp.rabi, 0.0};
    const auto model = effective_model_from(basis, cfg, thresholds.delta_floor);
    Eigen::VectorXd lambda = model.h_eff.diagonal().real();
    require_distinct_gaps(lambda, distinct_tol);
    ControlGenerator gen;
    gen.h = traceless(model.h_eff);
    gen.tag = "phase";
    set.generators.push_back(std::move(gen));
    set.provenance.push_back(
        "phase B=" + std::to_string(b_gauss) + "G" +
        " delta=" + std::to_string(constants::to_mhz(pp.detuning)) + "MHz" +
        " omegaE=" + std::to_string(constants::to_mhz(pp.rabi)) + "MHz");
  }
  return set;
}

LieClosureReport lie_closure(const std::vector<ComplexMatrix>& generators,
                             double tol) {
  if (generators.empty())
    throw std::invalid_argument("lie_closure: no generators");
  const int n = static_cast<int>(generators.front().rows());
  const int dim_space = n * n;

  auto rank_and_basis = [&](const std::vector<Eigen::VectorXd>& cols) {
    Eigen::MatrixXd m(dim_space, static_cast<Eigen::Index>(cols.size()));
    for (size_t c = 0; c < cols.size(); ++c) m.col(static_cast<Eigen::Index>(c)) = cols[c];
    Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k)
      if (sv(k) > tol * sv(0)) ++rank;
    std::vector<Eigen::VectorXd> basis;
    for (int k = 0; k < rank; ++k) basis.push_back(svd.matrixU().col(k));
    return basis;
  };

  std::vector<Eigen::VectorXd> cols;
  for (const auto& g : generators) {
    const ComplexMatrix t = traceless(g);
    Eigen::VectorXd v = vectorize_hermitian(t);
    const double norm = v.norm();
    if (norm > 0) cols.push_back(v / norm);
  }

  LieClosureReport report;
  report.tolerance = tol;
  std::vector<Eigen::VectorXd> basis = rank_and_basis(cols);
  report.basis_rank_history.push_back(static_cast<int>(basis.size()));

  constexpr int max_sweeps = 24;
  constexpr double drop_tol = 1e-12;  // commutators of commuting elements
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    std::vector<Eigen::VectorXd> cand = basis;
    for (size_t a = 0; a < basis.size(); ++a) {
      const ComplexMatrix ma = unvectorize_hermitian(basis[a], n);
      for (size_t b = a + 1; b < basis.size(); ++b) {
        const ComplexMatrix mb = unvectorize_hermitian(basis[b], n);
        Eigen::VectorXd v = vectorize_hermitian(bracket(ma, mb));
        const double norm = v.norm();
        if (norm > drop_tol) cand.push_back(v / norm);
      }
    }
    std::vector<Eigen::VectorXd> next = rank_and_basis(cand);
    report.basis_rank_history.push_back(static_cast<int>(next.size()));
    if (next.size() == basis.size()) {
      report.converged = true;
      basis = std::move(next);
      break;
    }
    basis = std::move(next);
  }
  report.dimension = static_cast<int>(basis.size());
  return report;
}

IsolationResult isolate_coupling(const ComplexMatrix& h_flip,
                                 const ComplexMatrix& h_phi, int pair_index,
                                 double distinct_tol) {
  const int n = static_cast<int>(h_phi.rows());
  if (pair_index < 0 || pair_index + 1 >= n)
    throw std::invalid_argument("isolate_coupling: pair index out of range");
  const double phi_scale = max_abs(h_phi);
  ComplexMatrix offdiag = h_phi;
  offdiag.diagonal().setZero();
  if (max_abs(offdiag) > 1e-12 * phi_scale)
    throw std::invalid_argument("isolate_coupling: h_phi is not diagonal");

  const Eigen::VectorXd lambda = h_phi.diagonal().real();
  const double flip_scale = max_abs(h_flip);

  std::vector<double> nodes{0.0};
  for (int k = 0; k + 1 < n; ++k) {
    if (k == pair_index) continue;
    const double d = lambda(k) - lambda(k + 1);
    nodes.push_back(d * d);
  }
  for (int k = 0; k + 2 < n; ++k) {
    if (std::abs(h_flip(k, k + 2)) > 1e-12 * flip_scale) {
      const double d = lambda(k) - lambda(k + 2);
      nodes.push_back(d * d);
    }
  }
  const double dt = lambda(pair_index) - lambda(pair_index + 1);
  const double target = dt * dt;

  double top = target;
  for (double nd : nodes) top = std::max(top, nd);
  if (top == 0.0 || target < distinct_tol * top)
    throw DistinctnessViolation("isolate_coupling: target gap vanishes");

  // merge coinciding non-target nodes; the filter only needs each root once
  std::sort(nodes.begin(), nodes.end());
  std::vector<double> distinct_nodes;
  for (double nd : nodes) {
    if (std::abs(nd - target) < distinct_tol * top)
      throw DistinctnessViolation(
          "isolate_coupling: a non-target gap coincides with the target gap");
    if (distinct_nodes.empty() ||
        std::abs(nd - distinct_nodes.back()) > distinct_tol * top)
      distinct_nodes.push_back(nd);
  }

  ComplexMatrix a = h_flip;
  for (double nd : distinct_nodes) {
    const ComplexMatrix la = bracket(h_phi, bracket(h_phi, a)) * (-1.0);
    // bracket(x, y) = i[x, y]; the double commutator [h, [h, a]] = -bracket^2
    a = (la - nd * a) / (target - nd);
  }
  IsolationResult res;
  res.coupling = a;
  res.polynomial_degree = static_cast<int>(distinct_nodes.size());
  return res;
}

Su2Triple pair_su2(const ComplexMatrix& x_like, const ComplexMatrix& h_phi) {
  const int n = static_cast<int>(x_like.rows());
  int pair = 0;
  for (int k = 1; k + 1 < n; ++k)
    if (std::abs(x_like(k, k + 1)) > std::abs(x_like(pair, pair + 1))) pair = k;
  const double r = std::abs(x_like(pair, pair + 1));
  if (r <= 0)
    throw std::invalid_argument("pair_su2: input has no nearest-neighbor coupling");

  const double delta = (h_phi(pair, pair) - h_phi(pair + 1, pair + 1)).real();
  if (std::abs(delta) < 1e-12 * max_abs(h_phi))
    throw DistinctnessViolation("pair_su2: level difference below tolerance");

  Su2Triple t;
  t.pair_index = pair;
  t.x = x_like / r;
  t.y = commutator(h_phi, t.x) / Complex(0.0, delta);
  t.z = commutator(t.x, t.y) / Complex(0.0, 2.0);
  return t;
}

ControlSearchResult find_control_points(const AtomSpec& spec, double b_gauss,
                                        const std::vector<double>& delta_grid,
                                        const std::vector<double>& omega_grid,
                                        const FeasibilityThresholds& thresholds,
                                        double distinct_tol) {
  ControlSearchResult result;
  const auto transitions = all_transitions(spec);

  std::map<double, FeasibilityRecord> best;
  scan_phase_diagram(spec, {b_gauss}, delta_grid, omega_grid, transitions,
                     thresholds, [&](const FeasibilityRecord& rec) {
                       if (!rec.feasible) return;
                       auto it = best.find(rec.transition_mi);
                       if (it == best.end() ||
                           rec.magic.raman_rabi > it->second.magic.raman_rabi)
                         best[rec.transition_mi] = rec;
                     });
  for (const double mi : transitions) {
    auto it = best.find(mi);
    if (it == best.end())
      throw InfeasiblePoint(
          "find_control_points: no feasible cell for transition mI=" +
          std::to_string(mi) + " at B=" + std::to_string(b_gauss) + " G");
    result.flips.push_back({it->second.detuning, it->second.rabi, mi});
    result.notes.push_back("flip mI=" + std::to_string(mi) + " OmegaR=" +
                           std::to_string(constants::to_hz(it->second.magic.raman_rabi)) +
                           "Hz");
  }

  PolarizabilityBasis basis(spec, b_gauss);
  double best_margin = 0.0;
  bool found = false;
  for (const double delta : delta_grid) {
    const double dmin = basis.min_detuning(delta);
    if (dmin <= thresholds.delta_floor) continue;
    const double rabi = 2.0 * dmin * std::sqrt(thresholds.p_max);
    const auto coeffs = basis.coefficients(delta, thresholds.delta_floor);
    Eigen::VectorXd lambda =
        coeffs.ground_energies - 0.25 * rabi * rabi * coeffs.s_z;
    const double margin = distinctness_margin(lambda);
    if (margin > best_margin) {
      best_margin = margin;
      result.phase = {delta, rabi};
      found = true;
    }
  }
  if (!found || best_margin < distinct_tol)
    throw DistinctnessViolation(
        "find_control_points: no phase profile with distinct gaps found");
  result.notes.push_back(
      "phase delta=" + std::to_string(constants::to_mhz(result.phase.detuning)) +
      "MHz margin=" + std::to_string(best_margin));
  return result;
}

}  // namespace yqc
