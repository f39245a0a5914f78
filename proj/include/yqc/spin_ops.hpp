#pragma once

#include <complex>

#include <Eigen/Dense>

namespace yqc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr Complex imag_unit{0.0, 1.0};

// Max-abs (entrywise) norm; the reference norm for all relative
// tolerance checks on matrices.
double max_abs(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double rel_tol = 1e-12);

ComplexMatrix dagger(const ComplexMatrix& m);

// [a, b] = ab - ba. Throws on dimension mismatch.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

// Kronecker product. Index contract: the left (electronic) factor
// varies slowest, the right (nuclear) factor fastest.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

struct SpinOperators {
  double j;
  ComplexMatrix jx, jy, jz, jplus, jminus;
};

// Angular-momentum matrices of dimension 2j+1 in the descending-m
// basis (m = +j ... -j), hbar = 1. Rejects non-half-integer j.
SpinOperators spin_matrices(double j);

struct DipoleComponents {
  ComplexMatrix dx, dy, dz;  // 4x4
};

// Normalized dipole operator on the electronic space ordered
// (ground; excited mJ = +1, 0, -1). All components map ground to
// excited; dz is the single mJ = 0 channel.
DipoleComponents dipole_components();

}  // namespace yqc
