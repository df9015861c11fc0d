#pragma once

#include <vector>

#include "bosent/numerics.hpp"
#include "bosent/states.hpp"
#include "bosent/tolerance.hpp"

namespace bosent {

struct DephasingParams {
  double gamma = 0.0;  // noise strength
  double t = 0.0;      // elapsed time
  /// Throws InvalidInput unless gamma >= 0 and t >= 0 (both finite).
  void validate() const;
};

/// Eigenvalue 2k - N of the relative-number operator on sector k.
int v_eigenvalue(int n_particles, int k);

/// Multiplies block (k, l) by exp(-gamma t (k - l)^2).
DensityMatrix dephase_closed_form(const DensityMatrix& rho, const DephasingParams& params);

/// Diagonal of the relative-number operator V in flat basis order.
RealVector relative_number_diagonal(const FockBasis& basis);

/// Dense right-hand side (gamma/2) (V rho V - {V^2, rho}/2) of the dephasing
/// master equation; V is given by its diagonal.
Matrix lindblad_rhs(const Matrix& rho, const RealVector& v_diag, double gamma);

/// Classical fixed-step RK4 on the dense master equation, independent of the
/// sector-block code paths. steps >= 1.
DensityMatrix integrate_oracle(const DensityMatrix& rho, const DephasingParams& params,
                               int steps);

struct TrajectoryPoint {
  double t = 0.0;
  /// Closed composition: sum_k N(rho_k) + sum_{k<l} exp(-gamma t (k-l)^2) ||B_kl||_1.
  double negativity = 0.0;
  /// negativity_general of dephase_closed_form(rho, t).
  double reevaluated = 0.0;
};

/// Negativity along a time grid by both routes. Throws std::runtime_error if
/// the routes disagree by more than policy.oracle_agreement_tol.
std::vector<TrajectoryPoint> negativity_trajectory(const DensityMatrix& rho, double gamma,
                                                   const std::vector<double>& t_grid,
                                                   const TolerancePolicy& policy = default_policy());

}  // namespace bosent
