#include "bosent/negativity.hpp"

#include <cmath>

#include "bosent/error.hpp"

namespace bosent {

std::string to_string(NegativityMethod method) {
  switch (method) {
    case NegativityMethod::SectorDecomposition: return "sector";
    case NegativityMethod::TwoModeClosedForm: return "two-mode";
    case NegativityMethod::BruteForceOracle: return "oracle";
  }
  return "unknown";
}

double minor_negativity(const Matrix& minor, std::size_t d1, std::size_t d2) {
  if (minor.size() == 0) return 0.0;
  const Matrix pt = partial_transpose_first(minor, d1, d2);
  return 0.5 * (numerics::trace_norm(pt) - minor.trace().real());
}

NegativityReport negativity_general(const DensityMatrix& rho,
                                    const TolerancePolicy& policy) {
  rho.validate(policy);
  const auto& basis = rho.basis();
  const int n = basis.particles();
  NegativityReport rep;
  rep.method = NegativityMethod::SectorDecomposition;
  rep.per_minor.assign(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    if (!rho.has_block(k, k)) continue;
    const Matrix pt = realign_block(rho, k, k).matrix;
    const double nk = 0.5 * (numerics::trace_norm(pt) - rho.minor(k).trace().real());
    rep.per_minor[static_cast<std::size_t>(k)] = nk;
    rep.total += nk;
  }
  for (int k = 0; k <= n; ++k) {
    for (int l = k + 1; l <= n; ++l) {
      if (!rho.has_block(k, l)) continue;
      const double tn = numerics::trace_norm(realign_block(rho, k, l).matrix);
      rep.off_diagonal.push_back({k, l, tn});
      // (k,l) and (l,k) carry the same norm; each enters with weight 1/2.
      rep.total += tn;
    }
  }
  return rep;
}

NegativityReport negativity_two_mode(const DensityMatrix& rho,
                                     const TolerancePolicy& policy) {
  const auto& basis = rho.basis();
  if (basis.modes() != 2 || basis.left_modes() != 1) {
    throw InvalidInput("two-mode closed form needs M = 2 and m = 1");
  }
  rho.validate(policy);
  const int n = basis.particles();
  NegativityReport rep;
  rep.method = NegativityMethod::TwoModeClosedForm;
  rep.per_minor.assign(static_cast<std::size_t>(n) + 1, 0.0);
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    for (int l = 0; l <= n; ++l) {
      if (k == l) continue;
      const double mod = std::abs(rho.block(k, l)(0, 0));
      sum += mod;
      if (k < l && rho.has_block(k, l)) rep.off_diagonal.push_back({k, l, mod});
    }
  }
  rep.total = 0.5 * sum;
  return rep;
}

NegativityReport negativity_oracle(const DensityMatrix& rho, std::size_t cap,
                                   const TolerancePolicy& policy) {
  rho.validate(policy);
  const auto pt = extended_partial_transpose(rho, cap);
  const RealVector eig = numerics::eigvalsh(pt.matrix, policy);
  NegativityReport rep;
  rep.method = NegativityMethod::BruteForceOracle;
  rep.total = 0.5 * (eig.cwiseAbs().sum() - eig.sum());
  return rep;
}

double weighted_negativity(const NumberSectorMixture& mixture,
                           const TolerancePolicy& policy) {
  mixture.validate(policy);
  double total = 0.0;
  for (const auto& [w, rho] : mixture.components) {
    if (w == 0.0) continue;
    total += w * negativity_general(rho, policy).total;
  }
  return total;
}

}  // namespace bosent
