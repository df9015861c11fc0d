#pragma once

// Helpers shared by the unit and acceptance tests: seeded random matrices
// and small brute-force constructions that do not go through library code.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "bosent/numerics.hpp"
#include "bosent/states.hpp"

namespace bosent::test {

inline Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(normal(rng), normal(rng));
  return m;
}

inline Matrix random_hermitian(Eigen::Index d, std::mt19937_64& rng) {
  const Matrix g = gaussian_matrix(d, d, rng);
  return 0.5 * (g + g.adjoint());
}

inline Matrix random_unitary(Eigen::Index d, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Matrix> qr(gaussian_matrix(d, d, rng));
  return qr.householderQ();
}

/// Random PSD matrix with unit trace.
inline Matrix random_psd(Eigen::Index d, std::mt19937_64& rng, Eigen::Index rank = -1) {
  const Matrix g = gaussian_matrix(d, rank < 0 ? d : rank, rng);
  Matrix r = g * g.adjoint();
  return r / r.trace().real();
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

/// Sum of |eigenvalues| of a Hermitian matrix via plain Eigen, bypassing the
/// library's numerics layer.
inline double abs_eigen_sum(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

/// Convex mixture of `count` random product states, each confined to a random
/// sector.
inline DensityMatrix random_separable(const BasisPtr& basis, int count, std::mt19937_64& rng) {
  std::vector<PureState> states;
  std::vector<int> live;
  for (const auto& s : basis->sectors())
    if (s.dim() > 0) live.push_back(s.k);
  std::uniform_int_distribution<std::size_t> pick(0, live.size() - 1);
  std::uniform_real_distribution<double> unif(0.05, 1.0);
  std::vector<double> w;
  for (int i = 0; i < count; ++i) {
    states.push_back(random_product_state(basis, live[pick(rng)], rng()));
    w.push_back(unif(rng));
  }
  double sum = 0.0;
  for (double x : w) sum += x;
  for (double& x : w) x /= sum;
  // Rounding can move the sum of normalized weights by an ulp or two.
  return mix(w, states);
}

/// Block-diagonal state whose minors are random PSD matrices (PPT or not).
inline DensityMatrix random_block_diagonal(const BasisPtr& basis, std::mt19937_64& rng) {
  BlockMap blocks;
  double tr = 0.0;
  for (const auto& s : basis->sectors()) {
    if (s.dim() == 0) continue;
    const Matrix g = gaussian_matrix(static_cast<Eigen::Index>(s.dim()),
                                     static_cast<Eigen::Index>(s.dim()), rng);
    blocks[{s.k, s.k}] = g * g.adjoint();
    tr += blocks[{s.k, s.k}].trace().real();
  }
  for (auto& [key, b] : blocks) b /= tr;
  return DensityMatrix::from_blocks(basis, std::move(blocks));
}

/// Block-diagonal state whose minors are products A_k (x) B_k (always PPT).
inline DensityMatrix random_product_minors(const BasisPtr& basis, std::mt19937_64& rng) {
  BlockMap blocks;
  double tr = 0.0;
  for (const auto& s : basis->sectors()) {
    if (s.dim() == 0) continue;
    const Matrix a = random_psd(static_cast<Eigen::Index>(s.d1), rng);
    const Matrix b = random_psd(static_cast<Eigen::Index>(s.d2), rng);
    blocks[{s.k, s.k}] = kron(a, b);
    tr += 1.0;
  }
  for (auto& [key, b] : blocks) b /= tr;
  return DensityMatrix::from_blocks(basis, std::move(blocks));
}

}  // namespace bosent::test
