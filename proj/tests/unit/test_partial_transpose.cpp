#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "bosent/error.hpp"
#include "bosent/partial_transpose.hpp"
#include "support.hpp"

using namespace bosent;

namespace {

PureState bell(const BasisPtr& basis) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(basis->dimension()));
  v(static_cast<Eigen::Index>(basis->flat_index_of({1, 0, 1, 0}))) = 1.0;
  v(static_cast<Eigen::Index>(basis->flat_index_of({0, 1, 0, 1}))) = 1.0;
  return normalized_state(basis, v);
}

}  // namespace

TEST_CASE("Bell minor has partial-transpose spectrum {1/2, 1/2, 1/2, -1/2}") {
  auto basis = build_basis(2, {4, 2});
  const auto rho = pure_to_density(bell(basis));
  const auto pt = realign_block(rho, 1, 1);
  REQUIRE(pt.matrix.rows() == 4);
  RealVector ev = numerics::eigvalsh(pt.matrix);
  CHECK(std::abs(ev(0) + 0.5) < 1e-14);
  for (int i = 1; i < 4; ++i) CHECK(std::abs(ev(i) - 0.5) < 1e-14);
}

TEST_CASE("small partial transpose by hand") {
  // 2x2 (x) 1: transposing the first factor of a 2-dim operator transposes it.
  Matrix a(2, 2);
  a << 1, Complex(2, 1), Complex(3, -1), 4;
  CHECK(partial_transpose_first(a, 2, 1) == a.transpose());
  CHECK(partial_transpose_second(a, 2, 1) == a);
  CHECK(partial_transpose_second(a, 1, 2) == a.transpose());

  // |00><11| -> |10><01| under transpose of the first factor.
  Matrix x = Matrix::Zero(4, 4);
  x(0, 3) = 1.0;
  const Matrix y = partial_transpose_first(x, 2, 2);
  CHECK(y(2, 1) == Complex(1.0));
  CHECK(y.cwiseAbs().sum() == 1.0);
}

TEST_CASE("partial transpose is an involution and preserves the trace") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d1 = 1 + rng() % 4;
    const std::size_t d2 = 1 + rng() % 4;
    const Matrix h = test::random_hermitian(static_cast<Eigen::Index>(d1 * d2), rng);
    const Matrix pt = partial_transpose_first(h, d1, d2);
    CHECK(partial_transpose_first(pt, d1, d2) == h);
    CHECK(partial_transpose_second(partial_transpose_second(h, d1, d2), d1, d2) == h);
    CHECK(std::abs(pt.trace() - h.trace()) < 1e-12);
    // PT_B = (PT_A)^T, so both have the same spectrum.
    CHECK((partial_transpose_second(h, d1, d2) - pt.transpose()).norm() < 1e-14);
    CHECK(numerics::hermiticity_deviation(pt) < 1e-14);
  }
}

TEST_CASE("realignment of product operators has trace norm equal to the product of trace norms") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = test::random_psd(3, rng);
    const Matrix b = test::random_psd(2, rng);
    const Matrix r = realignment(test::kron(a, b), 3, 2);
    CHECK(std::abs(numerics::trace_norm(r) - a.norm() * b.norm()) < 1e-12);
  }
  // Maximally entangled two-qubit state: ||R||_1 = 2.
  Matrix phi = Matrix::Zero(4, 4);
  phi(0, 0) = phi(0, 3) = phi(3, 0) = phi(3, 3) = 0.5;
  CHECK(std::abs(numerics::trace_norm(realignment(phi, 2, 2)) - 2.0) < 1e-14);
}

TEST_CASE("realigned block shapes and entries") {
  auto basis = build_basis(3, {3, 1});
  const auto rho = random_density(basis, 3, 11);
  for (int k = 0; k <= 3; ++k) {
    for (int l = 0; l <= 3; ++l) {
      const auto b = realign_block(rho, k, l);
      const auto sk = basis->sector(k);
      const auto sl = basis->sector(l);
      CHECK(b.matrix.rows() == static_cast<Eigen::Index>(sl.d1 * sk.d2));
      CHECK(b.matrix.cols() == static_cast<Eigen::Index>(sk.d1 * sl.d2));
      const Matrix blk = rho.block(k, l);
      for (std::size_t s = 0; s < sk.d1; ++s)
        for (std::size_t sp = 0; sp < sk.d2; ++sp)
          for (std::size_t t = 0; t < sl.d1; ++t)
            for (std::size_t tp = 0; tp < sl.d2; ++tp)
              CHECK(b.matrix(static_cast<Eigen::Index>(t * sk.d2 + sp),
                             static_cast<Eigen::Index>(s * sl.d2 + tp)) ==
                    blk(static_cast<Eigen::Index>(s * sk.d2 + sp),
                        static_cast<Eigen::Index>(t * sl.d2 + tp)));
    }
  }
  // Diagonal blocks reduce to the ordinary partial transpose of the minor.
  for (int k = 0; k <= 3; ++k) {
    const auto s = basis->sector(k);
    CHECK(realign_block(rho, k, k).matrix == partial_transpose_first(rho.minor(k), s.d1, s.d2));
  }
}

TEST_CASE("extended space dimensions and embedding") {
  auto basis = build_basis(4, {4, 2});
  ExtendedSpace space(*basis);
  CHECK(space.left_dim() == 15);
  CHECK(space.right_dim() == 15);
  CHECK(space.dimension() == 225);

  std::vector<std::size_t> seen;
  for (std::size_t i = 0; i < basis->dimension(); ++i) seen.push_back(space.embed_index(*basis, i));
  std::sort(seen.begin(), seen.end());
  CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
  CHECK(seen.back() < space.dimension());

  const auto rho = random_density(basis, 2, 5);
  const auto emb = embed_extended(rho);
  CHECK(std::abs(emb.matrix.trace() - Complex(1.0)) < 1e-12);
  CHECK(std::abs(emb.matrix.norm() - rho.dense().norm()) < 1e-12);
}

TEST_CASE("extended partial transpose agrees with the dense reshuffle of the embedding") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const int modes = 2 + static_cast<int>(rng() % 3);
    const int left = 1 + static_cast<int>(rng() % static_cast<unsigned>(modes - 1));
    auto basis = build_basis(n, {modes, left});
    const auto rho = random_density(basis, 2, rng());
    const auto emb = embed_extended(rho);
    const auto ept = extended_partial_transpose(rho);
    const Matrix reshuffled =
        partial_transpose_first(emb.matrix, emb.space.left_dim(), emb.space.right_dim());
    CHECK((ept.matrix - reshuffled).norm() < 1e-14);
    CHECK(std::abs(ept.matrix.trace() - Complex(1.0)) < 1e-12);
  }
}

TEST_CASE("extended spectrum is the union of the realigned-block spectra") {
  auto basis = build_basis(2, {3, 1});
  const auto rho = random_density(basis, 3, 2);
  const auto ept = extended_partial_transpose(rho);
  double expected = 0.0;
  for (int k = 0; k <= 2; ++k) {
    expected += numerics::trace_norm(realign_block(rho, k, k).matrix);
    for (int l = k + 1; l <= 2; ++l)
      expected += 2.0 * numerics::trace_norm(realign_block(rho, k, l).matrix);
  }
  CHECK(std::abs(numerics::trace_norm(ept.matrix) - expected) < 1e-12);
}

TEST_CASE("dense oracle refuses spaces above the cap") {
  auto basis = build_basis(8, {8, 4});
  CHECK_THROWS_AS(ExtendedSpace{*basis}, CapExceeded);
  auto small = build_basis(2, {2, 1});
  CHECK_THROWS_AS((ExtendedSpace{*small, 8}), CapExceeded);
  CHECK_NOTHROW((ExtendedSpace{*small, 9}));
}

TEST_CASE("realigned (l, k) block is the adjoint of the (k, l) block") {
  const auto rho = random_density(build_basis(3, {4, 2}), 3, 19);
  for (int k = 0; k <= 3; ++k)
    for (int l = 0; l <= 3; ++l)
      CHECK(realign_block(rho, l, k).matrix == realign_block(rho, k, l).matrix.adjoint());
}
