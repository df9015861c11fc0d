#pragma once

#include <cstddef>
#include <vector>

#include "bosent/fock_space.hpp"
#include "bosent/numerics.hpp"
#include "bosent/states.hpp"

namespace bosent {

/// Default cap on D1 * D2 for the dense extended-space oracle.
inline constexpr std::size_t kDefaultExtendedCap = 4096;

/// Sector pair (k, l) of the partially transposed operator. Rows are indexed
/// by (tau, sigma') (size d1(l) * d2(k)), columns by (sigma, tau') (size
/// d1(k) * d2(l)); entry = rho_{k sigma sigma', l tau tau'}.
struct RealignedBlock {
  int k = 0;
  int l = 0;
  Matrix matrix;
};

/// Partial transpose (first party) of sector pair (k, l). For k == l this is
/// the ordinary partial transpose of the minor rho_k.
RealignedBlock realign_block(const DensityMatrix& rho, int k, int l);

/// Transpose on the first factor of a (d1 d2) x (d1 d2) matrix with composite
/// index i * d2 + j.
Matrix partial_transpose_first(const Matrix& op, std::size_t d1, std::size_t d2);
/// Transpose on the second factor.
Matrix partial_transpose_second(const Matrix& op, std::size_t d1, std::size_t d2);

/// Realignment R(X)_{(i k), (j l)} = X_{(i j), (k l)} of a bipartite matrix,
/// the input of the computable cross norm criterion.
Matrix realignment(const Matrix& op, std::size_t d1, std::size_t d2);

/// Product of the two parties' Fock spaces holding 0..N particles each.
/// Party states are ordered by particle count, then descending lex.
class ExtendedSpace {
 public:
  /// Throws CapExceeded if D1 * D2 > cap.
  ExtendedSpace(const FockBasis& basis, std::size_t cap = kDefaultExtendedCap);

  std::size_t left_dim() const { return d1_; }
  std::size_t right_dim() const { return d2_; }
  std::size_t dimension() const { return d1_ * d2_; }

  /// Index of the left-party state `sigma` among those with `count` particles.
  std::size_t left_index(int count, std::size_t sigma) const;
  std::size_t right_index(int count, std::size_t sigma) const;
  std::size_t index(std::size_t left, std::size_t right) const {
    return left * d2_ + right;
  }

  /// Extended index of the fixed-N basis vector with the given flat index.
  std::size_t embed_index(const FockBasis& basis, std::size_t flat) const;

 private:
  int n_;
  std::size_t d1_ = 0;
  std::size_t d2_ = 0;
  std::vector<std::size_t> left_offsets_;
  std::vector<std::size_t> right_offsets_;
};

struct ExtendedOperator {
  ExtendedSpace space;
  Matrix matrix;
};

/// rho embedded in the extended space (support on a + b = N only).
ExtendedOperator embed_extended(const DensityMatrix& rho,
                                std::size_t cap = kDefaultExtendedCap);

/// Dense partial transpose of rho on the extended space. Built entry by entry
/// from the Fock expansion, independently of realign_block.
ExtendedOperator extended_partial_transpose(const DensityMatrix& rho,
                                            std::size_t cap = kDefaultExtendedCap);

}  // namespace bosent
