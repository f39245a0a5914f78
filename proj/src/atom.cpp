#include "yqc/atom.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>

#include "yqc/constants.hpp"
#include "yqc/errors.hpp"

namespace yqc {

namespace {

using constants::two_pi;

// Electronic-space operators on the 4-state basis (ground; mJ +1, 0, -1):
// spin-1 matrices embedded in the excited triplet, zero on the ground level.
ComplexMatrix embed_excited(const ComplexMatrix& m3) {
  ComplexMatrix out = ComplexMatrix::Zero(4, 4);
  out.block(1, 1, 3, 3) = m3;
  return out;
}

ComplexMatrix excited_projector4() {
  ComplexMatrix p = ComplexMatrix::Zero(4, 4);
  p(1, 1) = p(2, 2) = p(3, 3) = 1.0;
  return p;
}

}  // namespace

AtomSpec builtin_spec(const std::string& name) {
  AtomSpec s;
  s.nuclear_spin = 2.5;
  s.excited_j = 1.0;
  s.g_i = -0.67989;
  if (name == "Yb173_3P1") {
    s.g_j = 1.5;
    s.hyperfine_a = constants::from_mhz(-1094.361);
    s.hyperfine_q = constants::from_mhz(-836.351);
    s.decay_rate = constants::from_mhz(0.183);
    s.dipole_moment = 0.54 / std::sqrt(3.0);
    s.wavelength = 556e-9;
    s.label = name;
    return s;
  }
  if (name == "Yb173_1P1") {
    // g_J defaults to the pure-singlet value 1.0 (config-overridable).
    s.g_j = 1.0;
    s.hyperfine_a = constants::from_mhz(57.91);
    s.hyperfine_q = constants::from_mhz(610.47);
    s.decay_rate = constants::from_mhz(29.1);
    s.dipole_moment = 4.4 / std::sqrt(3.0);
    s.wavelength = 399e-9;
    s.label = name;
    return s;
  }
  throw std::invalid_argument("builtin_spec: unknown spec '" + name + "'");
}

std::vector<std::string> builtin_spec_names() {
  return {"Yb173_3P1", "Yb173_1P1"};
}

int nuclear_index(const AtomSpec& spec, double mi) {
  const double idx = spec.nuclear_spin - mi;
  const int k = static_cast<int>(std::round(idx));
  if (std::abs(idx - k) > 1e-9 || k < 0 || k >= spec.nuclear_dim())
    throw std::invalid_argument("nuclear_index: invalid mI label");
  return k;
}

double nuclear_label(const AtomSpec& spec, int index) {
  return spec.nuclear_spin - index;
}

ComplexMatrix h_zeeman(const AtomSpec& spec, double b_gauss) {
  if (b_gauss < 0) throw std::invalid_argument("h_zeeman: B must be >= 0");
  const int ni = spec.nuclear_dim();
  const auto je = spin_matrices(spec.excited_j);
  const auto in = spin_matrices(spec.nuclear_spin);
  const ComplexMatrix jz4 = embed_excited(je.jz);
  const ComplexMatrix id4 = ComplexMatrix::Identity(4, 4);
  const ComplexMatrix idn = ComplexMatrix::Identity(ni, ni);
  return spec.g_j * constants::mu_bohr * b_gauss * kron(jz4, idn) -
         spec.g_i * constants::mu_nuclear * b_gauss * kron(id4, in.jz);
}

ComplexMatrix h_hyperfine(const AtomSpec& spec) {
  if (std::abs(spec.excited_j - 1.0) > 1e-12 || spec.nuclear_spin < 1.0)
    throw std::invalid_argument("h_hyperfine: requires J = 1 and I >= 1");
  const double ii = spec.nuclear_spin;
  const double jj = spec.excited_j;
  const auto je = spin_matrices(jj);
  const auto in = spin_matrices(ii);

  ComplexMatrix idot = kron(embed_excited(je.jx), in.jx) +
                       kron(embed_excited(je.jy), in.jy) +
                       kron(embed_excited(je.jz), in.jz);
  const int n = idot.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);

  // I^2 J^2 vanishes on the ground level along with J^2.
  const double casimirs = ii * (ii + 1.0) * jj * (jj + 1.0);
  const ComplexMatrix i2j2 =
      casimirs * kron(excited_projector4(), ComplexMatrix::Identity(spec.nuclear_dim(), spec.nuclear_dim()));

  const double denom = 2.0 * ii * jj * (2.0 * ii - 1.0) * (2.0 * jj - 1.0);
  ComplexMatrix quad = (3.0 * idot * idot + 1.5 * idot - i2j2) / denom;
  return spec.hyperfine_a * idot + spec.hyperfine_q * quad;
}

ComplexMatrix coupling_block(const AtomSpec& spec, double rabi, double theta) {
  const int ni = spec.nuclear_dim();
  const auto d = dipole_components();
  const ComplexMatrix d4 = std::sin(theta) * d.dx + std::cos(theta) * d.dz;
  ComplexMatrix w = ComplexMatrix::Zero(ni, 3 * ni);
  for (int mji = 0; mji < 3; ++mji) {
    const Complex amp = 0.5 * rabi * std::conj(d4(1 + mji, 0));
    if (amp == Complex(0.0, 0.0)) continue;
    for (int n = 0; n < ni; ++n) w(n, mji * ni + n) = amp;
  }
  return w;
}

ComplexMatrix full_hamiltonian(const AtomSpec& spec, const FieldConfig& cfg) {
  const int ni = spec.nuclear_dim();
  const int dim = spec.full_dim();
  ComplexMatrix h = h_zeeman(spec, cfg.b_gauss) + h_hyperfine(spec);
  for (int k = ni; k < dim; ++k) h(k, k) -= cfg.detuning;
  const ComplexMatrix w = coupling_block(spec, cfg.rabi, cfg.theta);
  h.block(0, ni, ni, 3 * ni) += w;
  h.block(ni, 0, 3 * ni, ni) += w.adjoint();
  return h;
}

ExcitedSpectrum excited_spectrum(const AtomSpec& spec, double b_gauss,
                                 double detuning) {
  const int ni = spec.nuclear_dim();
  const int ne = spec.excited_dim();
  ComplexMatrix he =
      (h_zeeman(spec, b_gauss) + h_hyperfine(spec)).block(ni, ni, ne, ne);
  for (int k = 0; k < ne; ++k) he(k, k) -= detuning;

  // mF = mJ + mI is exact for the static Hamiltonian; diagonalize per block.
  std::map<int, std::vector<int>, std::greater<int>> blocks;  // key 2*mF
  for (int e = 0; e < ne; ++e) {
    const int mji = e / ni;
    const double mj = 1.0 - mji;
    const double mi = nuclear_label(spec, e % ni);
    blocks[static_cast<int>(std::round(2.0 * (mj + mi)))].push_back(e);
  }

  std::vector<std::pair<double, ComplexVector>> pairs;
  pairs.reserve(ne);
  for (const auto& [mf2, idx] : blocks) {
    const int n = static_cast<int>(idx.size());
    ComplexMatrix sub(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) sub(r, c) = he(idx[r], idx[c]);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sub);
    for (int k = 0; k < n; ++k) {
      ComplexVector full = ComplexVector::Zero(ne);
      for (int r = 0; r < n; ++r) full(idx[r]) = solver.eigenvectors()(r, k);
      pairs.emplace_back(solver.eigenvalues()(k), std::move(full));
    }
  }

  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  ExcitedSpectrum out;
  out.eigenvalues.resize(ne);
  out.eigenvectors.resize(ne, ne);
  for (int k = 0; k < ne; ++k) {
    out.eigenvalues(k) = pairs[k].first;
    ComplexVector v = pairs[k].second;
    // deterministic phase: largest-magnitude component real positive
    int imax = 0;
    for (int i = 1; i < ne; ++i)
      if (std::abs(v(i)) > std::abs(v(imax))) imax = i;
    if (std::abs(v(imax)) > 0)
      v *= std::conj(v(imax)) / std::abs(v(imax));
    out.eigenvectors.col(k) = v;
  }
  return out;
}

double min_detuning(const AtomSpec& spec, double b_gauss, double detuning) {
  const auto es = excited_spectrum(spec, b_gauss, 0.0);
  return (es.eigenvalues.array() - detuning).abs().minCoeff();
}

SpectrumCurve breit_rabi(const AtomSpec& spec, const std::vector<double>& b_grid) {
  if (b_grid.empty()) throw std::invalid_argument("breit_rabi: empty field grid");
  for (size_t i = 1; i < b_grid.size(); ++i)
    if (b_grid[i] <= b_grid[i - 1])
      throw std::invalid_argument("breit_rabi: field grid must be ascending");

  const int ni = spec.nuclear_dim();
  const int ne = spec.excited_dim();
  SpectrumCurve curve;
  curve.field_grid = b_grid;
  curve.excited_levels.assign(ne, {});
  curve.excited_characters.assign(ne, {});
  curve.ground_levels.assign(ni, {});
  for (int k = 0; k < ni; ++k) curve.ground_mi.push_back(nuclear_label(spec, k));

  auto character_of = [&](const ComplexVector& v) {
    int imax = 0;
    for (int i = 1; i < ne; ++i)
      if (std::norm(v(i)) > std::norm(v(imax))) imax = i;
    SpectrumCurve::Character c;
    c.mj = 1 - imax / ni;
    c.mi = nuclear_label(spec, imax % ni);
    c.weight = std::norm(v(imax));
    return c;
  };

  ComplexMatrix prev;          // tracked vectors, column l = curve l
  std::vector<int> perm(ne);   // curve label -> eigen index at current field
  for (size_t fi = 0; fi < b_grid.size(); ++fi) {
    const auto es = excited_spectrum(spec, b_grid[fi], 0.0);
    if (fi == 0) {
      for (int l = 0; l < ne; ++l) perm[l] = l;
      prev = es.eigenvectors;
    } else {
      // assign each tracked curve to the best-overlapping new vector
      std::vector<std::tuple<double, int, int>> cand;  // overlap, label, new
      cand.reserve(ne * ne);
      for (int l = 0; l < ne; ++l)
        for (int k = 0; k < ne; ++k)
          cand.emplace_back(std::abs(prev.col(l).dot(es.eigenvectors.col(k))),
                            l, k);
      std::sort(cand.begin(), cand.end(), [](const auto& a, const auto& b) {
        if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
        if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) < std::get<1>(b);
        return std::get<2>(a) < std::get<2>(b);
      });
      std::vector<bool> label_done(ne, false), new_done(ne, false);
      int assigned = 0;
      for (const auto& [ov, l, k] : cand) {
        if (label_done[l] || new_done[k]) continue;
        if (ov < 0.5)
          throw TrackingError(
              "breit_rabi: level tracking lost between B = " +
                  std::to_string(b_grid[fi - 1]) + " G and " +
                  std::to_string(b_grid[fi]) + " G (grid too coarse)",
              b_grid[fi - 1], b_grid[fi]);
        label_done[l] = true;
        new_done[k] = true;
        perm[l] = k;
        if (++assigned == ne) break;
      }
      for (int l = 0; l < ne; ++l) prev.col(l) = es.eigenvectors.col(perm[l]);
    }
    for (int l = 0; l < ne; ++l) {
      curve.excited_levels[l].push_back(es.eigenvalues(perm[l]));
      curve.excited_characters[l].push_back(
          character_of(es.eigenvectors.col(perm[l])));
    }
    for (int k = 0; k < ni; ++k)
      curve.ground_levels[k].push_back(-spec.g_i * constants::mu_nuclear *
                                       b_grid[fi] * nuclear_label(spec, k));
  }
  return curve;
}

double rabi_to_intensity(const AtomSpec& spec, double rabi) {
  if (rabi < 0) throw std::invalid_argument("rabi_to_intensity: negative input");
  const double f = rabi / two_pi;
  const double d_si = spec.dipole_moment * constants::dipole_au_si;
  const double field_energy = constants::hbar_si * f;
  const double w_per_m2 = constants::epsilon0_si * constants::speed_of_light_si *
                          field_energy * field_energy / (2.0 * d_si * d_si);
  return w_per_m2 / 1e4;
}

double intensity_to_rabi(const AtomSpec& spec, double intensity_w_cm2) {
  if (intensity_w_cm2 < 0)
    throw std::invalid_argument("intensity_to_rabi: negative input");
  const double w_per_m2 = intensity_w_cm2 * 1e4;
  const double d_si = spec.dipole_moment * constants::dipole_au_si;
  const double f =
      d_si *
      std::sqrt(2.0 * w_per_m2 /
                (constants::epsilon0_si * constants::speed_of_light_si)) /
      constants::hbar_si;
  return two_pi * f;
}

double power_for_waist(double intensity_w_cm2, double waist_m) {
  if (intensity_w_cm2 < 0 || waist_m < 0)
    throw std::invalid_argument("power_for_waist: negative input");
  return intensity_w_cm2 * 1e4 * constants::pi * waist_m * waist_m / 2.0;
}

}  // namespace yqc
