#pragma once

#include <complex>

#include <Eigen/Dense>

#include "bosent/tolerance.hpp"

namespace bosent {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace numerics {

struct EigenDecomposition {
  RealVector values;  // ascending
  Matrix vectors;     // columns are orthonormal eigenvectors
};

/// Max absolute entry of H - H^dagger.
double hermiticity_deviation(const Matrix& h);

/// Hermitian eigendecomposition. Throws InvalidInput if H is not square or
/// deviates from Hermiticity by more than policy.hermiticity_tol (relative to
/// max(1, max|H_ij|)).
EigenDecomposition eigh(const Matrix& h,
                        const TolerancePolicy& policy = default_policy());

/// Eigenvalues only, ascending.
RealVector eigvalsh(const Matrix& h,
                    const TolerancePolicy& policy = default_policy());

/// Singular values in non-increasing order. Throws on non-finite entries.
RealVector singular_values(const Matrix& b);

/// Sum of singular values.
double trace_norm(const Matrix& b);

/// Smallest eigenvalue of a Hermitian matrix (+inf for an empty matrix).
double min_eigenvalue(const Matrix& h,
                      const TolerancePolicy& policy = default_policy());

/// True when min eigenvalue >= -psd_floor * max(1, |Tr H|).
bool is_psd(const Matrix& h, const TolerancePolicy& policy = default_policy());

bool all_finite(const Matrix& b);

}  // namespace numerics
}  // namespace bosent
