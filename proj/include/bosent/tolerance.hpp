#pragma once

namespace bosent {

/// Single tolerance policy shared by every module. Verdicts and validity
/// checks never use module-local thresholds.
struct TolerancePolicy {
  /// Minimum eigenvalue allowed for a PSD operator, scaled by its trace.
  double psd_floor = 1e-10;
  /// Negativities and block norms at or below this count as zero.
  double zero_threshold = 1e-10;
  /// Frobenius error allowed when reconstructing a state from a certificate.
  double reconstruction_tol = 1e-10;
  /// Agreement required between independent computational routes.
  double oracle_agreement_tol = 1e-10;
  /// Hermiticity deviation (max abs entry of H - H^dagger) accepted on input.
  double hermiticity_tol = 1e-12;
  /// |Tr rho - 1| accepted on input.
  double trace_tol = 1e-12;
  /// Eigenvalues closer than this are treated as one degenerate cluster.
  double degeneracy_tol = 1e-8;

  /// Policy with every tolerance set to the same value (CLI --tolerance).
  static TolerancePolicy uniform(double tol) {
    return {tol, tol, tol, tol, tol, tol, tol};
  }
};

inline const TolerancePolicy& default_policy() {
  static const TolerancePolicy policy{};
  return policy;
}

}  // namespace bosent
