#include <doctest.h>

#include <cmath>

#include "yqc/atom.hpp"
#include "yqc/constants.hpp"
#include "yqc/errors.hpp"

using namespace yqc;
using constants::two_pi;

namespace {

// closed-form Casimir oracle for the zero-field hyperfine energies
double hyperfine_level(const AtomSpec& spec, double f) {
  const double ii = spec.nuclear_spin, jj = spec.excited_j;
  const double k = f * (f + 1.0) - ii * (ii + 1.0) - jj * (jj + 1.0);
  const double quad =
      (1.5 * k * (k + 1.0) - 2.0 * ii * (ii + 1.0) * jj * (jj + 1.0)) /
      (4.0 * ii * jj * (2.0 * ii - 1.0) * (2.0 * jj - 1.0));
  return 0.5 * spec.hyperfine_a * k + spec.hyperfine_q * quad;
}

ComplexMatrix fz_operator(const AtomSpec& spec) {
  const auto j1 = spin_matrices(spec.excited_j);
  const auto in = spin_matrices(spec.nuclear_spin);
  ComplexMatrix jz4 = ComplexMatrix::Zero(4, 4);
  jz4.block(1, 1, 3, 3) = j1.jz;
  return kron(jz4, ComplexMatrix::Identity(spec.nuclear_dim(), spec.nuclear_dim())) +
         kron(ComplexMatrix::Identity(4, 4), in.jz);
}

double round_to_one_sig_fig(double x) {
  if (x == 0) return 0;
  const double mag = std::pow(10.0, std::floor(std::log10(std::abs(x))));
  return std::round(x / mag) * mag;
}

}  // namespace

TEST_CASE("builtin spec constants") {
  const auto s3 = builtin_spec("Yb173_3P1");
  CHECK(s3.nuclear_spin == 2.5);
  CHECK(s3.excited_j == 1.0);
  CHECK(s3.g_j == 1.5);
  CHECK(s3.g_i == -0.67989);
  CHECK(s3.hyperfine_a == doctest::Approx(-two_pi * 1094.361e6));
  CHECK(s3.hyperfine_q == doctest::Approx(-two_pi * 836.351e6));
  CHECK(s3.decay_rate == doctest::Approx(two_pi * 183e3));
  CHECK(s3.dipole_moment == doctest::Approx(0.54 / std::sqrt(3.0)));
  CHECK(s3.wavelength == 556e-9);
  CHECK(s3.full_dim() == 24);

  const auto s1 = builtin_spec("Yb173_1P1");
  CHECK(s1.hyperfine_a == doctest::Approx(two_pi * 57.91e6));
  CHECK(s1.hyperfine_q == doctest::Approx(two_pi * 610.47e6));
  CHECK(s1.decay_rate == doctest::Approx(two_pi * 29.1e6));
  CHECK(s1.g_j == 1.0);
  CHECK(s1.dipole_moment == doctest::Approx(4.4 / std::sqrt(3.0)));

  CHECK_THROWS_AS(builtin_spec("Yb171"), std::invalid_argument);
}

TEST_CASE("zeeman hamiltonian") {
  const auto spec = builtin_spec("Yb173_3P1");
  SUBCASE("ground splitting at 500 G") {
    const auto hz = h_zeeman(spec, 500.0);
    // hand oracle: 0.67989 * 762.2593 Hz/G * 500 G = 259126.3 Hz
    const double oracle_hz = 0.67989 * 762.2593 * 500.0;
    CHECK(oracle_hz == doctest::Approx(259126.3).epsilon(1e-6));
    for (int k = 0; k + 1 < 6; ++k) {
      const double split = (hz(k, k) - hz(k + 1, k + 1)).real();
      CHECK(split == doctest::Approx(two_pi * oracle_hz).epsilon(1e-12));
    }
    // energies increase with mI for g_I < 0
    CHECK(hz(0, 0).real() > hz(5, 5).real());
  }
  SUBCASE("B = 0 gives the zero matrix") {
    CHECK(max_abs(h_zeeman(spec, 0.0)) == 0.0);
  }
  SUBCASE("diagonal and commutes with Fz") {
    const auto hz = h_zeeman(spec, 873.0);
    ComplexMatrix offdiag = hz;
    offdiag.diagonal().setZero();
    CHECK(max_abs(offdiag) == 0.0);
    CHECK(max_abs(commutator(hz, fz_operator(spec))) == 0.0);
  }
}

TEST_CASE("hyperfine hamiltonian") {
  const auto spec = builtin_spec("Yb173_3P1");
  const ComplexMatrix hf = h_hyperfine(spec);
  CHECK(is_hermitian(hf));

  SUBCASE("vanishes on the ground manifold") {
    CHECK(max_abs(ComplexMatrix(hf.block(0, 0, 6, 24))) == 0.0);
    CHECK(max_abs(ComplexMatrix(hf.block(0, 0, 24, 6))) == 0.0);
  }

  SUBCASE("commutes with Fz") {
    CHECK(max_abs(commutator(hf, fz_operator(spec))) <= 1e-12 * max_abs(hf));
  }

  SUBCASE("zero-field levels group into F manifolds") {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hf.block(6, 6, 18, 18));
    const auto& ev = solver.eigenvalues();
    // oracle energies with multiplicities 2F+1
    std::vector<std::pair<double, int>> oracle = {
        {hyperfine_level(spec, 1.5), 4},
        {hyperfine_level(spec, 2.5), 6},
        {hyperfine_level(spec, 3.5), 8}};
    std::sort(oracle.begin(), oracle.end());
    int pos = 0;
    for (const auto& [energy, count] : oracle) {
      for (int k = 0; k < count; ++k, ++pos)
        CHECK(ev(pos) == doctest::Approx(energy).epsilon(1e-10));
    }
  }

  SUBCASE("stretched state diagonal element is the exact F=7/2 energy") {
    // |mJ=-1, mI=-5/2| is the only mF = -7/2 state
    const int idx = 3 * 6 + 5;
    CHECK(hf(idx, idx).real() ==
          doctest::Approx(hyperfine_level(spec, 3.5)).epsilon(1e-12));
  }
}

TEST_CASE("full hamiltonian block structure") {
  const auto spec = builtin_spec("Yb173_3P1");
  SUBCASE("zero drive decouples the manifolds") {
    const auto h = full_hamiltonian(spec, {500.0, two_pi * 1e9, 0.0, 0.3});
    CHECK(max_abs(ComplexMatrix(h.block(0, 6, 6, 18))) == 0.0);
    // ground block is the diagonal Zeeman ladder
    ComplexMatrix g = h.block(0, 0, 6, 6);
    g.diagonal().setZero();
    CHECK(max_abs(g) == 0.0);
  }
  SUBCASE("theta = 0 couples only the mJ = 0 channel") {
    const ComplexMatrix w = coupling_block(spec, two_pi * 1e6, 0.0);
    CHECK(max_abs(ComplexMatrix(w.block(0, 0, 6, 6))) == 0.0);    // mJ = +1
    CHECK(max_abs(ComplexMatrix(w.block(0, 12, 6, 6))) == 0.0);   // mJ = -1
    CHECK(max_abs(ComplexMatrix(w.block(0, 6, 6, 6))) > 0.0);
  }
  SUBCASE("coupling norm is rabi/2 for any theta") {
    const double rabi = two_pi * 7.3e6;
    for (double theta : {0.0, 0.21, 0.5, 0.9, 1.2, constants::pi / 2}) {
      const ComplexMatrix w = coupling_block(spec, rabi, theta);
      Eigen::JacobiSVD<ComplexMatrix> svd(w);
      CHECK(svd.singularValues()(0) == doctest::Approx(rabi / 2).epsilon(1e-12));
    }
  }
  SUBCASE("assembled matrix is Hermitian") {
    const auto h = full_hamiltonian(spec, {640.0, -two_pi * 2e9, two_pi * 20e6, 0.7});
    CHECK(is_hermitian(h));
  }
}

TEST_CASE("excited spectrum") {
  const auto spec = builtin_spec("Yb173_3P1");
  SUBCASE("detuning shifts the spectrum rigidly") {
    const auto a = excited_spectrum(spec, 500.0, 0.0);
    const auto b = excited_spectrum(spec, 500.0, two_pi * 1.7e9);
    for (int k = 0; k < 18; ++k)
      CHECK(b.eigenvalues(k) ==
            doctest::Approx(a.eigenvalues(k) - two_pi * 1.7e9).epsilon(1e-12));
  }
  SUBCASE("stretched states stay exact product eigenstates") {
    for (const auto& name : builtin_spec_names()) {
      const auto sp = builtin_spec(name);
      for (double b = 0.0; b <= 2000.0; b += 250.0) {
        const ComplexMatrix he =
            (h_zeeman(sp, b) + h_hyperfine(sp)).block(6, 6, 18, 18);
        for (int idx : {2 * 6 + 5, 0}) {  // (mJ=-1, mI=-5/2) and (mJ=+1, mI=+5/2)
          ComplexVector v = ComplexVector::Zero(18);
          v(idx) = 1.0;
          const Complex lambda = v.dot(he * v);
          CHECK((he * v - lambda * v).cwiseAbs().maxCoeff() <=
                1e-10 * max_abs(he));
        }
      }
    }
  }
  SUBCASE("zero field reproduces the Casimir energies") {
    const auto es = excited_spectrum(spec, 0.0, 0.0);
    std::vector<std::pair<double, int>> oracle = {
        {hyperfine_level(spec, 1.5), 4},
        {hyperfine_level(spec, 2.5), 6},
        {hyperfine_level(spec, 3.5), 8}};
    std::sort(oracle.begin(), oracle.end());
    int pos = 0;
    for (const auto& [energy, count] : oracle)
      for (int k = 0; k < count; ++k, ++pos)
        CHECK(es.eigenvalues(pos) == doctest::Approx(energy).epsilon(1e-10));
  }
  SUBCASE("eigenvectors diagonalize the excited block") {
    const double b = 713.0, delta = -two_pi * 2.4e9;
    const auto es = excited_spectrum(spec, b, delta);
    ComplexMatrix he = (h_zeeman(spec, b) + h_hyperfine(spec)).block(6, 6, 18, 18);
    for (int k = 0; k < 18; ++k) he(k, k) -= delta;
    const ComplexMatrix residual =
        he * es.eigenvectors -
        es.eigenvectors * es.eigenvalues.asDiagonal().toDenseMatrix().cast<Complex>();
    CHECK(max_abs(residual) <= 1e-10 * max_abs(he));
  }
}

TEST_CASE("min detuning") {
  const auto spec = builtin_spec("Yb173_3P1");
  SUBCASE("brute-force enumeration oracle at the Fig. 2 point") {
    const double b = 500.0, delta = -two_pi * 3e9;
    // independent route: plain dense solve of the excited block
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
        ComplexMatrix((h_zeeman(spec, b) + h_hyperfine(spec)).block(6, 6, 18, 18)));
    double oracle = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 18; ++k)
      oracle = std::min(oracle, std::abs(solver.eigenvalues()(k) - delta));
    CHECK(min_detuning(spec, b, delta) == doctest::Approx(oracle).epsilon(1e-12));
  }
  SUBCASE("zero exactly at an eigenvalue") {
    const auto es = excited_spectrum(spec, 400.0, 0.0);
    CHECK(min_detuning(spec, 400.0, es.eigenvalues(7)) <= 1e-9 * std::abs(es.eigenvalues(7)));
  }
  SUBCASE("asymptotically |Delta|") {
    const double delta = -two_pi * 1e15;
    CHECK(min_detuning(spec, 500.0, delta) / std::abs(delta) ==
          doctest::Approx(1.0).epsilon(1e-3));
  }
}

TEST_CASE("breit-rabi curves") {
  const auto spec = builtin_spec("Yb173_3P1");
  std::vector<double> grid;
  for (double b = 0.0; b <= 1200.0; b += 40.0) grid.push_back(b);
  const auto curve = breit_rabi(spec, grid);

  CHECK(curve.excited_levels.size() == 18);
  CHECK(curve.ground_levels.size() == 6);

  SUBCASE("ground curves match the Zeeman diagonal") {
    for (size_t fi = 0; fi < grid.size(); ++fi) {
      const auto hz = h_zeeman(spec, grid[fi]);
      for (int k = 0; k < 6; ++k)
        CHECK(curve.ground_levels[k][fi] ==
              doctest::Approx(hz(k, k).real()).epsilon(1e-12));
    }
  }

  SUBCASE("ground curves are exactly linear in B") {
    for (int k = 0; k < 6; ++k) {
      const double slope =
          (curve.ground_levels[k].back() - curve.ground_levels[k].front()) /
          (grid.back() - grid.front());
      for (size_t fi = 0; fi < grid.size(); ++fi) {
        const double lin = curve.ground_levels[k].front() +
                           slope * (grid[fi] - grid.front());
        CHECK(std::abs(curve.ground_levels[k][fi] - lin) <=
              1e-9 * std::max(1.0, std::abs(lin)));
      }
    }
  }

  SUBCASE("curves are continuous") {
    for (const auto& level : curve.excited_levels)
      for (size_t fi = 1; fi < level.size(); ++fi)
        CHECK(std::abs(level[fi] - level[fi - 1]) < two_pi * 500e6);
  }

  SUBCASE("high-field slopes approach the Paschen-Back oracle") {
    const double b0 = 1e5, db = 500.0;
    const auto pb = breit_rabi(spec, {b0, b0 + db});
    for (int l = 0; l < 18; ++l) {
      const auto ch = pb.excited_characters[l][0];
      CHECK(ch.weight > 0.99);
      const double slope = (pb.excited_levels[l][1] - pb.excited_levels[l][0]) / db;
      const double oracle = spec.g_j * constants::mu_bohr * ch.mj -
                            spec.g_i * constants::mu_nuclear * ch.mi;
      CHECK(std::abs(slope - oracle) <= two_pi * 300.0);  // rad/s per G
    }
  }
}

TEST_CASE("paschen-back regime diagonalizes the product basis") {
  const auto spec = builtin_spec("Yb173_3P1");
  const auto ratio_at = [&](double b) {
    const ComplexMatrix he =
        (h_zeeman(spec, b) + h_hyperfine(spec)).block(6, 6, 18, 18);
    ComplexMatrix offdiag = he;
    offdiag.diagonal().setZero();
    double min_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 18; ++i)
      for (int j = 0; j < 18; ++j)
        if (i != j && std::abs(he(i, j)) > 0)
          min_gap = std::min(min_gap, std::abs((he(i, i) - he(j, j)).real()));
    return max_abs(offdiag) / min_gap;
  };
  // hyperfine mixing dies off as 1/B; the ratio is ~1.2e-2 at 1e5 G
  // and falls through 1e-2 just above that field
  CHECK(ratio_at(1e5) < 2e-2);
  CHECK(ratio_at(2e5) < 1e-2);
  CHECK(ratio_at(2e5) == doctest::Approx(0.5 * ratio_at(1e5)).epsilon(0.05));
}

TEST_CASE("rabi-intensity conversions") {
  const auto spec = builtin_spec("Yb173_3P1");
  SUBCASE("round trip") {
    for (double mhz : {0.5, 10.0, 40.0, 200.0}) {
      const double rabi = constants::from_mhz(mhz);
      CHECK(intensity_to_rabi(spec, rabi_to_intensity(spec, rabi)) ==
            doctest::Approx(rabi).epsilon(1e-12));
    }
  }
  SUBCASE("reported intensity table at one significant figure") {
    CHECK(round_to_one_sig_fig(rabi_to_intensity(spec, constants::from_mhz(10))) ==
          doctest::Approx(0.02));
    CHECK(round_to_one_sig_fig(rabi_to_intensity(spec, constants::from_mhz(20))) ==
          doctest::Approx(0.08));
    CHECK(round_to_one_sig_fig(rabi_to_intensity(spec, constants::from_mhz(40))) ==
          doctest::Approx(0.3));
  }
  SUBCASE("zero maps to zero") { CHECK(rabi_to_intensity(spec, 0.0) == 0.0); }
  SUBCASE("microwatt powers for tweezer waists") {
    const double intensity = rabi_to_intensity(spec, constants::from_mhz(10));
    const double p20 = power_for_waist(intensity, 10e-6);   // 20 um diameter
    const double p100 = power_for_waist(intensity, 50e-6);  // 100 um diameter
    CHECK(p20 > 1e-8);
    CHECK(p100 < 1e-5);
  }
}
