#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "bosent/fock_space.hpp"
#include "bosent/numerics.hpp"
#include "bosent/tolerance.hpp"

namespace bosent {

/// Normalized pure state over a fixed-N Fock basis.
class PureState {
 public:
  /// Throws InvalidInput if the amplitude count does not match the basis or
  /// the squared norm deviates from 1 by more than policy.trace_tol.
  PureState(BasisPtr basis, Vector amplitudes,
            const TolerancePolicy& policy = default_policy());

  const FockBasis& basis() const { return *basis_; }
  const BasisPtr& basis_ptr() const { return basis_; }
  const Vector& amplitudes() const { return amps_; }

  /// Amplitudes of sector k reshaped as the d1 x d2 coefficient matrix
  /// C^(k)_{sigma, sigma'}.
  Matrix coefficient_matrix(int k) const;

 private:
  BasisPtr basis_;
  Vector amps_;
};

using BlockKey = std::pair<int, int>;
using BlockMap = std::map<BlockKey, Matrix>;

/// Diagnostics of a density-matrix validity check.
struct ValidityReport {
  double hermiticity_deviation = 0.0;
  double min_eigenvalue = 0.0;
  double trace = 0.0;
  bool valid = false;
};

/// Density matrix in sector-block form: block (k, l) has rows indexed by
/// (sigma, sigma') of sector k and columns by (tau, tau') of sector l. Blocks
/// that are not stored are zero.
class DensityMatrix {
 public:
  /// Validates Hermiticity, positivity and unit trace; throws InvalidInput.
  static DensityMatrix from_blocks(BasisPtr basis, BlockMap blocks,
                                   const TolerancePolicy& policy = default_policy());
  /// Same as from_blocks without the validity check. For operations whose
  /// output is valid by construction, and for tests feeding bad input.
  static DensityMatrix from_blocks_unchecked(BasisPtr basis, BlockMap blocks);
  /// Splits a dense matrix in flat basis order into sector blocks.
  static DensityMatrix from_dense(BasisPtr basis, const Matrix& dense,
                                  const TolerancePolicy& policy = default_policy());
  static DensityMatrix from_dense_unchecked(BasisPtr basis, const Matrix& dense);

  const FockBasis& basis() const { return *basis_; }
  const BasisPtr& basis_ptr() const { return basis_; }

  /// Block (k, l); a zero matrix of the right shape when not stored.
  Matrix block(int k, int l) const;
  bool has_block(int k, int l) const { return blocks_.count({k, l}) != 0; }
  const BlockMap& stored_blocks() const { return blocks_; }
  /// Diagonal block rho_k (not normalized).
  Matrix minor(int k) const { return block(k, k); }
  /// True when no off-diagonal (k != l) block is stored.
  bool is_block_diagonal() const;

  Matrix dense() const;
  double trace() const;
  /// Entry between two flat basis indices.
  Complex entry(std::size_t row, std::size_t col) const;

  ValidityReport check(const TolerancePolicy& policy = default_policy()) const;
  /// Throws InvalidInput with the offending quantity when check() fails.
  void validate(const TolerancePolicy& policy = default_policy()) const;

 private:
  DensityMatrix(BasisPtr basis, BlockMap blocks);

  BasisPtr basis_;
  BlockMap blocks_;
};

/// One term c * prod_i (a_i^dagger)^{degrees[i]} of a polynomial in the
/// creation operators of one party.
struct Monomial {
  Complex coefficient{1.0, 0.0};
  std::vector<int> degrees;
};

struct PolynomialSpec {
  std::vector<Monomial> terms;
};

/// Incoherent mixture of fixed-N states with weights lambda_N.
struct NumberSectorMixture {
  std::vector<std::pair<double, DensityMatrix>> components;

  /// Weights non-negative and summing to one (within policy.trace_tol);
  /// each component valid.
  void validate(const TolerancePolicy& policy = default_policy()) const;
};

/// Fock basis vector with unit amplitude.
PureState from_fock_occupation(BasisPtr basis, const OccupationVector& occ);

/// P(a_1^dag..a_m^dag) Q(a_{m+1}^dag..a_M^dag)|0>, normalized. P and Q must be
/// homogeneous with degrees k0 and N - k0.
PureState from_local_polynomials(BasisPtr basis, const PolynomialSpec& p,
                                 const PolynomialSpec& q);

/// Normalizes an arbitrary non-zero amplitude vector.
PureState normalized_state(BasisPtr basis, Vector amplitudes);

DensityMatrix pure_to_density(const PureState& psi);

/// sum_i w_i |psi_i><psi_i|. Weights must be non-negative and sum to 1.
DensityMatrix mix(const std::vector<double>& weights,
                  const std::vector<PureState>& states,
                  const TolerancePolicy& policy = default_policy());
DensityMatrix mix(const std::vector<double>& weights,
                  const std::vector<DensityMatrix>& states,
                  const TolerancePolicy& policy = default_policy());

/// G G^dagger / Tr with G a dim x rank complex Gaussian matrix drawn from a
/// generator seeded with `seed`.
DensityMatrix random_density(BasisPtr basis, std::size_t rank, std::uint64_t seed);

/// Haar-like random pure state over the whole basis (support across sectors).
PureState random_pure_state(BasisPtr basis, std::uint64_t seed);

/// Random product state a (x) b inside sector k.
PureState random_product_state(BasisPtr basis, int k, std::uint64_t seed);

/// Zeroes every off-diagonal sector block.
DensityMatrix block_diagonal_project(const DensityMatrix& rho);

/// Two-qutrit PPT entangled state rho_a (0 < a < 1) in the standard
/// C^3 (x) C^3 basis, index 3*i + j.
Matrix horodecki_qutrit_state(double a);

/// Block-diagonal N=4, M=4, m=2 state: rho_2 = weights[2] * qutrit_block with
/// the k=2 Fock vectors |sigma; sigma'> identified with |sigma>|sigma'>, and
/// rho_k = weights[k] * filler_k elsewhere (default filler: identity / d_k).
/// Custom fillers must be unit-trace PSD; their separability is the caller's
/// responsibility.
DensityMatrix embed_qutrit_block(BasisPtr basis, const Matrix& qutrit_block,
                                 const std::vector<double>& weights,
                                 const std::vector<std::optional<Matrix>>& fillers = {},
                                 const TolerancePolicy& policy = default_policy());

/// (1 - eps) rho + eps |tau><tau| with tau a seeded random pure state spread
/// over all sectors.
DensityMatrix perturb_offdiagonal(const DensityMatrix& rho, double eps,
                                  std::uint64_t seed);

/// The random pure state perturb_offdiagonal mixes in for a given seed.
PureState perturbation_state(BasisPtr basis, std::uint64_t seed);

/// (|N; 0> + |0; N>) / sqrt(2) for two modes split one-vs-one.
PureState noon_state(int n_particles);

}  // namespace bosent
