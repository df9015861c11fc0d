#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bosent/negativity.hpp"
#include "bosent/states.hpp"
#include "bosent/tolerance.hpp"

namespace bosent {

/// Singular-value decomposition of a pure state across the mode bipartition.
struct SchmidtDecomposition {
  /// C^(k), d1(k) x d2(k), for k = 0..N.
  std::vector<Matrix> coefficient_matrices;
  /// All Schmidt coefficients, non-increasing; squares sum to one.
  RealVector singular_values;
  std::size_t schmidt_rank = 0;
  /// Sectors carrying non-zero amplitude.
  std::vector<int> support;

  bool separable() const { return schmidt_rank == 1; }
};

/// Pure product vector left (x) right inside sector k, with a mixing weight.
struct ProductTerm {
  double weight = 0.0;
  int k = 0;
  Vector left;
  Vector right;
};

struct SeparableCertificate {
  std::vector<ProductTerm> terms;
  /// Frobenius distance between the reconstruction and the certified state.
  double reconstruction_error = 0.0;

  /// sum_i p_i |a_i b_i><a_i b_i| as a (block-diagonal) density matrix.
  DensityMatrix reconstruct(const BasisPtr& basis) const;
};

enum class Verdict { SeparableCertified, EntangledNPT, PPTUndecided };

std::string to_string(Verdict verdict);

/// Per-minor evidence attached to verdicts.
struct MinorDiagnostic {
  int k = 0;
  double trace = 0.0;
  double negativity = 0.0;
  double pt_min_eigenvalue = 0.0;
  /// ||R(rho_k / Tr rho_k)||_1; values above 1 prove the minor entangled.
  double realignment_norm = 0.0;
  bool realignment_violated = false;
};

struct ClassificationVerdict {
  Verdict verdict = Verdict::PPTUndecided;
  double negativity = 0.0;
  std::optional<SeparableCertificate> certificate;
  std::vector<MinorDiagnostic> diagnostics;
  /// Which rule produced the verdict: "negativity", "one-vs-rest",
  /// "diagonal-minor-class" or "undecided".
  std::string rule;
  std::string note;
};

struct BlockNorm {
  int k = 0;
  int l = 0;
  double frobenius = 0.0;
};

struct PptResult {
  bool ppt = false;
  bool block_diagonal = false;
  /// Off-diagonal blocks with Frobenius norm >= zero_threshold (k < l).
  std::vector<BlockNorm> offending_blocks;
  /// min eigenvalue of PT(rho_k) per non-empty sector, k ascending.
  std::vector<std::pair<int, double>> minor_min_eigenvalues;
  /// Sectors whose partial transpose has eigenvalues below -psd_floor.
  std::vector<int> npt_minors;
};

struct DiagonalMinorResult {
  bool in_class = false;
  /// Product eigenbasis of every minor, weighted by the eigenvalues. Only
  /// eigenvectors with non-zero eigenvalue are listed.
  std::vector<ProductTerm> adapted_basis;
  /// First sector whose minor has no product eigenbasis, or -1.
  int failing_sector = -1;
};

/// Schmidt decomposition of a normalized pure state. The state is separable
/// iff its support is a single sector and C^(k) has rank one.
SchmidtDecomposition schmidt_decompose(const PureState& psi,
                                       const TolerancePolicy& policy = default_policy());

/// One mode against the rest (m == 1 or M - m == 1). Never PPTUndecided in
/// practice: NPT means entangled, otherwise a certificate is built from the
/// eigenvectors of each minor.
ClassificationVerdict decide_one_vs_rest(const DensityMatrix& rho,
                                         const TolerancePolicy& policy = default_policy());

/// Block diagonal with PPT minors.
PptResult is_ppt(const DensityMatrix& rho,
                 const TolerancePolicy& policy = default_policy());

/// Whether every minor rho_k is diagonal in a basis of product vectors.
DiagonalMinorResult diagonal_minor_class_check(
    const DensityMatrix& rho, const TolerancePolicy& policy = default_policy());

/// Decision cascade: NPT -> one-vs-rest -> diagonal-minor class -> undecided.
ClassificationVerdict classify(const DensityMatrix& rho,
                               const TolerancePolicy& policy = default_policy());

/// Evidence for each non-empty minor with positive trace.
std::vector<MinorDiagnostic> minor_diagnostics(
    const DensityMatrix& rho, const TolerancePolicy& policy = default_policy());

/// Best rank-one factorization of a d1 x d2 coefficient matrix. Returns
/// std::nullopt if the second singular value exceeds tol * first.
std::optional<std::pair<Vector, Vector>> product_factors(const Matrix& coeffs,
                                                         double tol);

}  // namespace bosent
