#pragma once

#include <string>
#include <vector>

#include "bosent/partial_transpose.hpp"
#include "bosent/states.hpp"
#include "bosent/tolerance.hpp"

namespace bosent {

enum class NegativityMethod { SectorDecomposition, TwoModeClosedForm, BruteForceOracle };

std::string to_string(NegativityMethod method);

struct OffDiagonalNorm {
  int k = 0;
  int l = 0;
  double trace_norm = 0.0;
};

struct NegativityReport {
  double total = 0.0;
  /// N(rho_k) for k = 0..N; empty for the oracle.
  std::vector<double> per_minor;
  /// Trace norms of realigned blocks, k < l only; empty for the oracle.
  std::vector<OffDiagonalNorm> off_diagonal;
  NegativityMethod method = NegativityMethod::SectorDecomposition;
};

/// Negativity of a single (non-normalized) minor: (||PT(rho_k)||_1 - Tr rho_k) / 2.
double minor_negativity(const Matrix& minor, std::size_t d1, std::size_t d2);

/// Sector decomposition: sum_k N(rho_k) + sum_{k<l} ||realign_block(k,l)||_1.
/// Never forms the extended operator.
NegativityReport negativity_general(const DensityMatrix& rho,
                                    const TolerancePolicy& policy = default_policy());

/// Closed form (1/2) sum_{k != l} |rho_{k,l}| for M = 2, m = 1.
NegativityReport negativity_two_mode(const DensityMatrix& rho,
                                     const TolerancePolicy& policy = default_policy());

/// Dense eigendecomposition of the extended partial transpose.
NegativityReport negativity_oracle(const DensityMatrix& rho,
                                   std::size_t cap = kDefaultExtendedCap,
                                   const TolerancePolicy& policy = default_policy());

/// sum_N lambda_N * negativity_general(rho_N).total
double weighted_negativity(const NumberSectorMixture& mixture,
                           const TolerancePolicy& policy = default_policy());

}  // namespace bosent
