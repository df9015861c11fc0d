#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <set>
#include <stdexcept>

#include "bosent/error.hpp"
#include "bosent/fock_space.hpp"

using namespace bosent;

namespace {

// Brute-force count of occupation vectors of `modes` modes summing to n.
std::size_t count_occupations(int modes, int n) {
  if (modes == 0) return n == 0 ? 1 : 0;
  std::size_t total = 0;
  for (int first = 0; first <= n; ++first) total += count_occupations(modes - 1, n - first);
  return total;
}

}  // namespace

TEST_CASE("N=4, M=4, m=2 sector blocks are 5, 8, 9, 8, 5") {
  const FockBasis basis(4, {4, 2});
  const std::vector<std::size_t> expected{5, 8, 9, 8, 5};
  REQUIRE(basis.sectors().size() == 5);
  for (int k = 0; k <= 4; ++k) CHECK(basis.sector(k).dim() == expected[static_cast<std::size_t>(k)]);
  CHECK(basis.dimension() == 35);
}

TEST_CASE("two modes, two bosons") {
  const FockBasis basis(2, {2, 1});
  for (int k = 0; k <= 2; ++k) {
    CHECK(basis.sector(k).d1 == 1);
    CHECK(basis.sector(k).d2 == 1);
  }
  CHECK(basis.dimension() == 3);
}

TEST_CASE("sector_dims examples") {
  CHECK(sector_dims(4, {4, 2}, 2) == std::pair<std::size_t, std::size_t>{3, 3});
  CHECK(sector_dims(4, {4, 2}, 0) == std::pair<std::size_t, std::size_t>{1, 5});
  CHECK(sector_dims(5, {3, 1}, 5) == std::pair<std::size_t, std::size_t>{1, 1});
  CHECK_THROWS_AS(sector_dims(4, {4, 2}, 5), InvalidInput);
  CHECK_THROWS_AS(sector_dims(4, {4, 2}, -1), InvalidInput);
}

TEST_CASE("invalid bipartitions are rejected") {
  CHECK_THROWS_AS(FockBasis(3, {4, 5}), InvalidInput);
  CHECK_THROWS_AS(FockBasis(3, {0, 0}), InvalidInput);
  CHECK_THROWS_AS(FockBasis(3, {4, -1}), InvalidInput);
  CHECK_THROWS_AS(FockBasis(-1, {2, 1}), InvalidInput);
}

TEST_CASE("index_of and occupation_of") {
  const FockBasis two(2, {2, 1});
  CHECK(two.index_of({1, 1}) == SectorIndex{1, 0, 0});

  const FockBasis basis(4, {4, 2});
  std::set<std::size_t> flats;
  for (std::size_t i = 0; i < basis.dimension(); ++i) {
    const auto idx = basis.sector_index(i);
    const auto occ = basis.occupation_of(idx);
    CHECK(std::accumulate(occ.begin(), occ.end(), 0) == 4);
    CHECK(occ[0] + occ[1] == idx.k);
    CHECK(basis.index_of(occ) == idx);
    CHECK(basis.flat_index_of(occ) == i);
    flats.insert(basis.flat_index_of(occ));
  }
  CHECK(flats.size() == 35);

  CHECK_THROWS_AS(basis.index_of({1, 1, 1, 0}), InvalidInput);
  CHECK_THROWS_AS(basis.index_of({1, 1, 2}), InvalidInput);
  CHECK_THROWS_AS(basis.index_of({5, -1, 0, 0}), InvalidInput);
}

TEST_CASE("k=2 left states of N=4, M=4, m=2 by exhaustive enumeration") {
  std::set<std::vector<int>> left;
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b)
      for (int c = 0; c <= 4; ++c)
        for (int d = 0; d <= 4; ++d)
          if (a + b + c + d == 4 && a + b == 2) left.insert({a, b});
  REQUIRE(left.size() == 3);
  const FockBasis basis(4, {4, 2});
  const auto& states = basis.left_states(2);
  REQUIRE(states.size() == 3);
  // Descending lexicographic order inside the party.
  CHECK(states[0] == std::vector<int>{2, 0});
  CHECK(states[1] == std::vector<int>{1, 1});
  CHECK(states[2] == std::vector<int>{0, 2});
  for (const auto& s : states) CHECK(left.count(s) == 1);
}

TEST_CASE("total dimension matches brute-force count for N <= 8, M <= 6") {
  for (int n = 0; n <= 8; ++n) {
    for (int modes = 1; modes <= 6; ++modes) {
      for (int m = 0; m <= modes; ++m) {
        const FockBasis basis(n, {modes, m});
        std::size_t total = 0;
        for (const auto& s : basis.sectors()) {
          total += s.d1 * s.d2;
          CHECK(s.d1 == count_occupations(m, s.k));
          CHECK(s.d2 == count_occupations(modes - m, n - s.k));
        }
        CHECK(total == count_occupations(modes, n));
        CHECK(total == binomial(n + modes - 1, n));
        CHECK(basis.dimension() == total);
      }
    }
  }
}

TEST_CASE("round trip over every basis element, small systems") {
  for (int n = 0; n <= 5; ++n) {
    for (int modes = 1; modes <= 4; ++modes) {
      for (int m = 0; m <= modes; ++m) {
        const FockBasis basis(n, {modes, m});
        for (std::size_t i = 0; i < basis.dimension(); ++i) {
          const auto idx = basis.sector_index(i);
          CHECK(basis.flat_index(idx) == i);
          CHECK(basis.index_of(basis.occupation_of(idx)) == idx);
        }
      }
    }
  }
}

TEST_CASE("d1 depends on (k, m) only and d2 on (N - k, M - m) only") {
  for (int m = 1; m <= 3; ++m) {
    for (int k = 0; k <= 4; ++k) {
      const auto a = sector_dims(4, {4, m}, k).first;
      const auto b = sector_dims(7, {m + 2, m}, k).first;
      CHECK(a == b);
    }
  }
  CHECK(sector_dims(5, {4, 1}, 2).second == sector_dims(3, {5, 2}, 0).second);
}

TEST_CASE("degenerate bipartitions keep a single non-empty sector") {
  const FockBasis left_empty(3, {3, 0});
  CHECK(left_empty.sector(0).dim() == 10);
  for (int k = 1; k <= 3; ++k) CHECK(left_empty.sector(k).dim() == 0);
  const FockBasis right_empty(3, {3, 3});
  CHECK(right_empty.sector(3).dim() == 10);
  for (int k = 0; k < 3; ++k) CHECK(right_empty.sector(k).dim() == 0);
  CHECK(right_empty.dimension() == 10);
  CHECK(right_empty.sector_index(0).k == 3);
}

TEST_CASE("binomial is exact and detects overflow") {
  CHECK(binomial(7, 3) == 35);
  CHECK(binomial(-1, 0) == 1);
  CHECK(binomial(3, 4) == 0);
  CHECK(binomial(66, 33) == 7219428434016265740ULL);
  CHECK_THROWS_AS(binomial(100, 50), std::overflow_error);
}
