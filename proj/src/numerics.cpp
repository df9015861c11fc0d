#include "bosent/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bosent/error.hpp"

namespace bosent::numerics {

double hermiticity_deviation(const Matrix& h) {
  if (h.size() == 0) return 0.0;
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

bool all_finite(const Matrix& b) {
  return b.allFinite();
}

namespace {

void require_hermitian(const Matrix& h, const TolerancePolicy& policy) {
  if (h.rows() != h.cols()) {
    std::ostringstream msg;
    msg << "eigh: matrix is " << h.rows() << "x" << h.cols() << ", not square";
    throw InvalidInput(msg.str());
  }
  if (!all_finite(h)) throw InvalidInput("eigh: non-finite entries");
  const double scale = h.size() ? std::max(1.0, h.cwiseAbs().maxCoeff()) : 1.0;
  const double dev = hermiticity_deviation(h);
  if (dev > policy.hermiticity_tol * scale) {
    std::ostringstream msg;
    msg << "eigh: matrix is not Hermitian (deviation " << dev << ")";
    throw InvalidInput(msg.str());
  }
}

}  // namespace

EigenDecomposition eigh(const Matrix& h, const TolerancePolicy& policy) {
  require_hermitian(h, policy);
  if (h.size() == 0) return {RealVector(0), Matrix(0, 0)};
  // Symmetrize so round-off in the input does not leak into the solver.
  const Matrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::ComputeEigenvectors);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector eigvalsh(const Matrix& h, const TolerancePolicy& policy) {
  require_hermitian(h, policy);
  if (h.size() == 0) return RealVector(0);
  const Matrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

RealVector singular_values(const Matrix& b) {
  if (!all_finite(b)) throw InvalidInput("singular_values: non-finite entries");
  if (b.size() == 0) return RealVector(0);
  Eigen::BDCSVD<Matrix> svd(b);
  return svd.singularValues();
}

double trace_norm(const Matrix& b) {
  return singular_values(b).sum();
}

double min_eigenvalue(const Matrix& h, const TolerancePolicy& policy) {
  if (h.size() == 0) return std::numeric_limits<double>::infinity();
  return eigvalsh(h, policy)(0);
}

bool is_psd(const Matrix& h, const TolerancePolicy& policy) {
  if (h.size() == 0) return true;
  const double scale = std::max(1.0, std::abs(h.trace()));
  return min_eigenvalue(h, policy) >= -policy.psd_floor * scale;
}

}  // namespace bosent::numerics
