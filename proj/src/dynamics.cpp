#include "bosent/dynamics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "bosent/error.hpp"
#include "bosent/negativity.hpp"

namespace bosent {

void DephasingParams::validate() const {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw InvalidInput("dephasing: gamma must be finite and >= 0");
  }
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw InvalidInput("dephasing: t must be finite and >= 0");
  }
}

int v_eigenvalue(int n_particles, int k) {
  if (k < 0 || k > n_particles) {
    std::ostringstream msg;
    msg << "v_eigenvalue: k=" << k << " outside [0, " << n_particles << "]";
    throw InvalidInput(msg.str());
  }
  return 2 * k - n_particles;
}

DensityMatrix dephase_closed_form(const DensityMatrix& rho, const DephasingParams& params) {
  params.validate();
  BlockMap blocks;
  for (const auto& [key, b] : rho.stored_blocks()) {
    const double dk = key.first - key.second;
    const double factor = std::exp(-params.gamma * params.t * dk * dk);
    if (factor == 0.0) continue;
    blocks.emplace(key, factor * b);
  }
  return DensityMatrix::from_blocks_unchecked(rho.basis_ptr(), std::move(blocks));
}

RealVector relative_number_diagonal(const FockBasis& basis) {
  RealVector v(static_cast<Eigen::Index>(basis.dimension()));
  for (std::size_t i = 0; i < basis.dimension(); ++i) {
    // V = sum_{left} n_i - sum_{right} n_alpha, read off the occupation.
    const auto occ = basis.occupation_of(basis.sector_index(i));
    double val = 0.0;
    for (int j = 0; j < basis.modes(); ++j) {
      val += (j < basis.left_modes() ? 1.0 : -1.0) * occ[static_cast<std::size_t>(j)];
    }
    v(static_cast<Eigen::Index>(i)) = val;
  }
  return v;
}

Matrix lindblad_rhs(const Matrix& rho, const RealVector& v_diag, double gamma) {
  const auto v = v_diag.cast<Complex>().asDiagonal();
  const RealVector v2 = v_diag.cwiseProduct(v_diag);
  const auto vsq = v2.cast<Complex>().asDiagonal();
  const Matrix vrv = v * rho * v;
  const Matrix anti = vsq * rho + rho * vsq;
  return 0.5 * gamma * (vrv - 0.5 * anti);
}

DensityMatrix integrate_oracle(const DensityMatrix& rho, const DephasingParams& params,
                               int steps) {
  params.validate();
  if (steps < 1) throw InvalidInput("integrate_oracle: steps must be >= 1");
  const RealVector v = relative_number_diagonal(rho.basis());
  const double h = params.t / steps;
  Matrix x = rho.dense();
  for (int s = 0; s < steps; ++s) {
    const Matrix k1 = lindblad_rhs(x, v, params.gamma);
    const Matrix k2 = lindblad_rhs(x + 0.5 * h * k1, v, params.gamma);
    const Matrix k3 = lindblad_rhs(x + 0.5 * h * k2, v, params.gamma);
    const Matrix k4 = lindblad_rhs(x + h * k3, v, params.gamma);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return DensityMatrix::from_dense_unchecked(rho.basis_ptr(), x);
}

std::vector<TrajectoryPoint> negativity_trajectory(const DensityMatrix& rho, double gamma,
                                                   const std::vector<double>& t_grid,
                                                   const TolerancePolicy& policy) {
  DephasingParams{gamma, 0.0}.validate();
  const auto base = negativity_general(rho, policy);
  double minors = 0.0;
  for (double nk : base.per_minor) minors += nk;
  std::vector<TrajectoryPoint> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    const DephasingParams params{gamma, t};
    params.validate();
    TrajectoryPoint p;
    p.t = t;
    p.negativity = minors;
    for (const auto& od : base.off_diagonal) {
      const double dk = od.k - od.l;
      p.negativity += std::exp(-gamma * t * dk * dk) * od.trace_norm;
    }
    p.reevaluated = negativity_general(dephase_closed_form(rho, params), policy).total;
    if (std::abs(p.negativity - p.reevaluated) > policy.oracle_agreement_tol) {
      std::ostringstream msg;
      msg << "negativity trajectory routes disagree at t=" << t << ": " << p.negativity
          << " vs " << p.reevaluated;
      throw std::runtime_error(msg.str());
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace bosent
