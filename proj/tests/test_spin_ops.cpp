#include <doctest.h>

#include <cmath>
#include <random>

#include "yqc/spin_ops.hpp"

using namespace yqc;

namespace {

// independent ladder-formula oracle
double ladder(double j, double m) { return std::sqrt(j * (j + 1.0) - m * (m + 1.0)); }

ComplexMatrix random_matrix(int rows, int cols, std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) m(i, k) = Complex(dist(rng), dist(rng));
  return m;
}

}  // namespace

TEST_CASE("spin_matrices basic structure") {
  SUBCASE("j = 1/2") {
    const auto s = spin_matrices(0.5);
    CHECK(s.jz.rows() == 2);
    CHECK(s.jz(0, 0) == Complex(0.5, 0));
    CHECK(s.jz(1, 1) == Complex(-0.5, 0));
    // single raising entry at (row m=+1/2, col m=-1/2)
    CHECK(s.jplus(0, 1) == Complex(1.0, 0));
    CHECK(max_abs(s.jplus) == doctest::Approx(1.0));
  }
  SUBCASE("j = 5/2 ladder element") {
    const auto s = spin_matrices(2.5);
    CHECK(s.jz.rows() == 6);
    // <m=3/2| j+ |m=1/2>; descending basis puts 3/2 at row 1, 1/2 at col 2
    CHECK(s.jplus(1, 2).real() == doctest::Approx(ladder(2.5, 0.5)));
    CHECK(s.jplus(1, 2).real() == doctest::Approx(std::sqrt(8.0)));
  }
  SUBCASE("j = 0") {
    const auto s = spin_matrices(0.0);
    CHECK(s.jz.rows() == 1);
    CHECK(max_abs(s.jx) == 0.0);
    CHECK(max_abs(s.jy) == 0.0);
    CHECK(max_abs(s.jz) == 0.0);
  }
  SUBCASE("rejects non-half-integer j") {
    CHECK_THROWS_AS(spin_matrices(0.3), std::invalid_argument);
    CHECK_THROWS_AS(spin_matrices(-0.5), std::invalid_argument);
  }
}

TEST_CASE("su(2) relations and Casimir for j <= 9/2") {
  for (double j = 0.0; j <= 4.5; j += 0.5) {
    const auto s = spin_matrices(j);
    const double scale = std::max(1.0, max_abs(s.jz));
    CHECK(max_abs(ComplexMatrix(commutator(s.jx, s.jy) - imag_unit * s.jz)) <=
          1e-12 * scale);
    CHECK(max_abs(ComplexMatrix(commutator(s.jy, s.jz) - imag_unit * s.jx)) <=
          1e-12 * scale);
    CHECK(max_abs(ComplexMatrix(commutator(s.jz, s.jx) - imag_unit * s.jy)) <=
          1e-12 * scale);
    const ComplexMatrix casimir = s.jx * s.jx + s.jy * s.jy + s.jz * s.jz;
    const ComplexMatrix expected =
        j * (j + 1.0) * ComplexMatrix::Identity(s.jz.rows(), s.jz.cols());
    CHECK(max_abs(ComplexMatrix(casimir - expected)) <= 1e-12 * std::max(1.0, j * (j + 1.0)));
    CHECK(max_abs(ComplexMatrix(s.jplus - (s.jx + imag_unit * s.jy))) <= 1e-12 * scale);
  }
}

TEST_CASE("kron ordering and identities") {
  const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
  const ComplexMatrix id3 = ComplexMatrix::Identity(3, 3);
  CHECK(max_abs(ComplexMatrix(kron(id2, id3) - ComplexMatrix::Identity(6, 6))) == 0.0);

  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 2.0;
  ComplexMatrix b = ComplexMatrix::Zero(2, 2);
  b(0, 0) = 3.0;
  b(1, 1) = 4.0;
  const ComplexMatrix k = kron(a, b);
  CHECK(k(0, 0) == Complex(3, 0));
  CHECK(k(1, 1) == Complex(4, 0));
  CHECK(k(2, 2) == Complex(6, 0));
  CHECK(k(3, 3) == Complex(8, 0));

  // electronic index varies slowest
  const auto j1 = spin_matrices(1.0);
  const ComplexMatrix jz_full = kron(j1.jz, ComplexMatrix::Identity(6, 6));
  for (int i = 0; i < 6; ++i) {
    CHECK(jz_full(i, i) == Complex(1, 0));
    CHECK(jz_full(6 + i, 6 + i) == Complex(0, 0));
    CHECK(jz_full(12 + i, 12 + i) == Complex(-1, 0));
  }
}

TEST_CASE("kron associativity") {
  std::mt19937 rng(7);
  const ComplexMatrix a = random_matrix(2, 2, rng);
  const ComplexMatrix b = random_matrix(3, 3, rng);
  const ComplexMatrix c = random_matrix(2, 2, rng);
  const ComplexMatrix lhs = kron(kron(a, b), c);
  const ComplexMatrix rhs = kron(a, kron(b, c));
  CHECK(max_abs(ComplexMatrix(lhs - rhs)) <= 1e-14 * max_abs(lhs));
}

TEST_CASE("dipole components") {
  const auto d = dipole_components();
  // <3P1,0| dz |1S0> = 1
  CHECK(d.dz(2, 0) == Complex(1, 0));
  // <3P1,+1| dx |1S0> = -1/sqrt(2)
  CHECK(d.dx(1, 0).real() == doctest::Approx(-1.0 / std::sqrt(2.0)));
  CHECK(d.dx(3, 0).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
  // closure of the mJ = 0 channel on the ground state
  const ComplexMatrix closure = d.dz.adjoint() * d.dz;
  CHECK(closure(0, 0) == Complex(1, 0));

  // mutual orthogonality under the Hilbert-Schmidt inner product
  const ComplexMatrix* comps[3] = {&d.dx, &d.dy, &d.dz};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const Complex hs = (comps[i]->adjoint() * (*comps[j])).trace();
      if (i == j)
        CHECK(hs.real() == doctest::Approx(1.0));
      else
        CHECK(std::abs(hs) <= 1e-14);
    }
}

TEST_CASE("commutator and dagger") {
  const auto s = spin_matrices(1.5);
  CHECK(max_abs(ComplexMatrix(commutator(s.jz, s.jplus) - s.jplus)) <= 1e-12 * max_abs(s.jplus));
  CHECK(max_abs(commutator(s.jx, s.jx)) == 0.0);
  CHECK(max_abs(ComplexMatrix(dagger(s.jplus) - s.jminus)) == 0.0);

  std::mt19937 rng(11);
  const ComplexMatrix a = random_matrix(3, 3, rng);
  CHECK_THROWS_AS(commutator(a, ComplexMatrix::Identity(4, 4)), std::invalid_argument);
}

TEST_CASE("hermiticity checks") {
  const auto s = spin_matrices(2.5);
  CHECK(is_hermitian(s.jx));
  CHECK(is_hermitian(s.jy));
  CHECK(is_hermitian(s.jz));
  CHECK_FALSE(is_hermitian(s.jplus));
}
