#include "yqc/spin_ops.hpp"

#include <cmath>
#include <stdexcept>

namespace yqc {

double max_abs(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = max_abs(m);
  if (scale == 0.0) return true;
  return max_abs(ComplexMatrix(m - m.adjoint())) <= rel_tol * scale;
}

ComplexMatrix dagger(const ComplexMatrix& m) { return m.adjoint(); }

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw std::invalid_argument("commutator: dimension mismatch");
  return a * b - b * a;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k)
      out.block(i * b.rows(), k * b.cols(), b.rows(), b.cols()) = a(i, k) * b;
  return out;
}

SpinOperators spin_matrices(double j) {
  const double two_j = 2.0 * j;
  if (j < 0.0 || std::abs(two_j - std::round(two_j)) > 1e-9)
    throw std::invalid_argument("spin_matrices: j must be a non-negative half-integer");

  const int dim = static_cast<int>(std::round(two_j)) + 1;
  SpinOperators ops;
  ops.j = j;
  ops.jz = ComplexMatrix::Zero(dim, dim);
  ops.jplus = ComplexMatrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) {
    const double m = j - k;  // descending
    ops.jz(k, k) = m;
    if (k > 0) {
      // <m+1| J+ |m> with |m> at column k, |m+1> at row k-1
      ops.jplus(k - 1, k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    }
  }
  ops.jminus = ops.jplus.adjoint();
  ops.jx = 0.5 * (ops.jplus + ops.jminus);
  ops.jy = -0.5 * imag_unit * (ops.jplus - ops.jminus);
  return ops;
}

DipoleComponents dipole_components() {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  DipoleComponents d;
  d.dx = ComplexMatrix::Zero(4, 4);
  d.dy = ComplexMatrix::Zero(4, 4);
  d.dz = ComplexMatrix::Zero(4, 4);
  // rows/cols: 0 = ground, 1 = mJ +1, 2 = mJ 0, 3 = mJ -1
  d.dx(3, 0) = inv_sqrt2;
  d.dx(1, 0) = -inv_sqrt2;
  d.dy(3, 0) = imag_unit * inv_sqrt2;
  d.dy(1, 0) = imag_unit * inv_sqrt2;
  d.dz(2, 0) = 1.0;
  return d;
}

}  // namespace yqc
