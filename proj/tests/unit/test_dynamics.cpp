#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "bosent/dynamics.hpp"
#include "bosent/error.hpp"
#include "bosent/negativity.hpp"
#include "support.hpp"

using namespace bosent;

TEST_CASE("relative-number eigenvalues") {
  CHECK(v_eigenvalue(4, 0) == -4);
  CHECK(v_eigenvalue(4, 2) == 0);
  CHECK(v_eigenvalue(4, 4) == 4);
  auto basis = build_basis(3, {3, 1});
  const RealVector v = relative_number_diagonal(*basis);
  for (std::size_t i = 0; i < basis->dimension(); ++i)
    CHECK(v(static_cast<Eigen::Index>(i)) == v_eigenvalue(3, basis->sector_index(i).k));
}

TEST_CASE("closed-form dephasing factors") {
  auto basis = build_basis(2, {2, 1});
  const auto rho = pure_to_density(normalized_state(basis, Vector::Ones(3)));
  const auto out = dephase_closed_form(rho, {1.0, 1.0});
  CHECK(std::abs(out.block(1, 0)(0, 0) - rho.block(1, 0)(0, 0) * std::exp(-1.0)) < 1e-15);
  CHECK(std::abs(out.block(2, 0)(0, 0) - rho.block(2, 0)(0, 0) * std::exp(-4.0)) < 1e-15);
  for (int k = 0; k <= 2; ++k) CHECK(out.block(k, k) == rho.block(k, k));
  CHECK(dephase_closed_form(rho, {0.0, 5.0}).dense() == rho.dense());
  CHECK(dephase_closed_form(rho, {3.0, 0.0}).dense() == rho.dense());
}

TEST_CASE("long-time limit is the block-diagonal projection") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    auto basis = build_basis(1 + trial % 4, {3, 1 + trial % 2});
    const auto rho = random_density(basis, 2, rng());
    const auto late = dephase_closed_form(rho, {1.0, 50.0});
    CHECK((late.dense() - block_diagonal_project(rho).dense()).norm() < 1e-15);
  }
}

TEST_CASE("parameter validation") {
  const auto rho = pure_to_density(noon_state(2));
  CHECK_THROWS_AS(dephase_closed_form(rho, {-1.0, 1.0}), InvalidInput);
  CHECK_THROWS_AS(dephase_closed_form(rho, {1.0, -1.0}), InvalidInput);
  CHECK_THROWS_AS(dephase_closed_form(rho, {NAN, 1.0}), InvalidInput);
  CHECK_THROWS_AS(integrate_oracle(rho, {1.0, 1.0}, 0), InvalidInput);
}

TEST_CASE("master-equation right-hand side entrywise") {
  std::mt19937_64 rng(31);
  auto basis = build_basis(3, {3, 1});
  const Matrix rho = random_density(basis, 3, rng()).dense();
  const RealVector v = relative_number_diagonal(*basis);
  const double gamma = 0.7;
  const Matrix rhs = lindblad_rhs(rho, v, gamma);
  for (Eigen::Index i = 0; i < rho.rows(); ++i)
    for (Eigen::Index j = 0; j < rho.cols(); ++j) {
      const double dv = v(i) - v(j);
      // (gamma/2)(v_i v_j - (v_i^2 + v_j^2)/2) = -(gamma/4)(v_i - v_j)^2
      CHECK(std::abs(rhs(i, j) + 0.25 * gamma * dv * dv * rho(i, j)) < 1e-14);
    }
}

TEST_CASE("NOON negativity halves at t = ln 2 / 4") {
  const auto rho = pure_to_density(noon_state(2));
  const double t = std::log(2.0) / 4.0;
  const double n = negativity_general(dephase_closed_form(rho, {1.0, t})).total;
  CHECK(std::abs(n - 0.25) < 1e-12);
  for (double tt : {0.0, 0.1, 0.5, 2.0})
    CHECK(std::abs(negativity_general(dephase_closed_form(rho, {1.0, tt})).total -
                   0.5 * std::exp(-4.0 * tt)) < 1e-12);
}

TEST_CASE("semigroup property") {
  const auto rho = random_density(build_basis(3, {4, 2}), 2, 8);
  const auto two_steps = dephase_closed_form(dephase_closed_form(rho, {0.8, 0.3}), {0.8, 0.45});
  const auto one_step = dephase_closed_form(rho, {0.8, 0.75});
  CHECK((two_steps.dense() - one_step.dense()).norm() < 1e-14);
}

TEST_CASE("closed form agrees with the integrated master equation") {
  std::mt19937_64 rng(90);
  for (int trial = 0; trial < 10; ++trial) {
    auto basis = build_basis(1 + trial % 3, {2 + trial % 3, 1});
    const auto rho = random_density(basis, 2, rng());
    const DephasingParams p{0.5 + 0.1 * trial, 0.4};
    const auto exact = dephase_closed_form(rho, p);
    const auto numeric = integrate_oracle(rho, p, 400);
    CHECK((exact.dense() - numeric.dense()).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("trajectory") {
  const auto rho = pure_to_density(noon_state(2));
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(0.1 * i);
  const auto traj = negativity_trajectory(rho, 1.0, grid);
  REQUIRE(traj.size() == grid.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    CHECK(traj[i].t == grid[i]);
    CHECK(std::abs(traj[i].negativity - 0.5 * std::exp(-4.0 * grid[i])) < 1e-12);
    CHECK(std::abs(traj[i].negativity - traj[i].reevaluated) < 1e-10);
    if (i > 0) CHECK(traj[i].negativity <= traj[i - 1].negativity);
  }

  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    auto basis = build_basis(2 + trial % 2, {4, 2});
    const auto r = random_density(basis, 2, rng());
    const auto tr = negativity_trajectory(r, 0.7, grid);
    const double floor = negativity_general(block_diagonal_project(r)).total;
    for (std::size_t i = 1; i < tr.size(); ++i) {
      CHECK(tr[i].negativity <= tr[i - 1].negativity + 1e-12);
      CHECK(tr[i].negativity >= floor - 1e-12);
    }
  }
}
