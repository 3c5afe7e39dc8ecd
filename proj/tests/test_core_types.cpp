#include "oracles.hpp"

#include "frsne/observables.hpp"

#include <doctest.h>

#include <random>

using namespace frsne;

TEST_SUITE("core_types") {

TEST_CASE("physics params validate and expose natural units") {
  const auto p = PhysicsParams::natural();
  CHECK(p.hbar() == 1.0);
  CHECK(p.alpha() == doctest::Approx(pi / 2));
  CHECK(p.length_unit() == 1.0);
  CHECK_THROWS_AS(PhysicsParams::create(0.0, 1.0, 1.0, 0.5), InvalidArgument);
  CHECK_THROWS_AS(PhysicsParams::create(1.0, -1.0, 1.0, 0.5), InvalidArgument);
  CHECK_THROWS_AS(PhysicsParams::create(1.0, 1.0, 0.0, 0.5), InvalidArgument);
  CHECK_THROWS_AS(PhysicsParams::create(1.0, 1.0, 1.0, pi), InvalidArgument);
  CHECK_THROWS_AS(PhysicsParams::create(1.0, 1.0, 1.0, -0.1), InvalidArgument);
  CHECK_NOTHROW(PhysicsParams::create(1.0, 1.0, 1.0, 0.0));

  const auto q = PhysicsParams::create(2.0, 3.0, 0.5, 1.0);
  CHECK(q.length_unit() == doctest::Approx(4.0 / (3.0 * 0.125)));
  CHECK(q.energy_unit() == doctest::Approx(9.0 * 0.03125 / 4.0));
  CHECK(q.time_unit() == doctest::Approx(q.hbar() / q.energy_unit()));
  CHECK(q.momentum_unit() == doctest::Approx(q.hbar() / q.length_unit()));
}

TEST_CASE("make_grid stagger arithmetic") {
  SUBCASE("four cells of unit width are below the minimum size") {
    CHECK_THROWS_AS(make_grid(4, 4.0), InvalidArgument);
    const auto g = make_grid(16, 16.0);
    CHECK(g.spacing() == 1.0);
    CHECK(g.node(0) == 0.5);
    CHECK(g.node(1) == 1.5);
    CHECK(g.node(3) == 3.5);
  }
  SUBCASE("reference grid") {
    const auto g = make_grid(2000, 40.0);
    CHECK(g.spacing() == doctest::Approx(0.02).epsilon(1e-15));
    CHECK(g.node(0) == doctest::Approx(0.01).epsilon(1e-15));
  }
  SUBCASE("sixteen nodes on the unit interval") {
    const auto g = make_grid(16, 1.0);
    CHECK(g.n_points() == 16);
    CHECK(g.node(15) == doctest::Approx(0.96875).epsilon(1e-15));
    CHECK(g.node(0) > 0.0);
    CHECK(g.node(15) <= 1.0);
  }
  CHECK_THROWS_AS(make_grid(15, 1.0), InvalidArgument);
  CHECK_THROWS_AS(make_grid(100, std::numeric_limits<double>::infinity()), InvalidArgument);
  CHECK_THROWS_AS(make_grid(100, std::nan("")), InvalidArgument);
  CHECK_THROWS_AS(make_grid(100, -1.0), InvalidArgument);
}

TEST_CASE("grid nodes are positive and strictly increasing for any valid input") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> n_dist(16, 5000);
  std::uniform_real_distribution<double> r_dist(-6.0, 6.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = make_grid(n_dist(rng), std::pow(10.0, r_dist(rng)));
    CHECK(g.spacing() * static_cast<double>(g.n_points()) == doctest::Approx(g.r_max()).epsilon(1e-14));
    REQUIRE(g.node(0) > 0.0);
    for (std::size_t j = 1; j < g.n_points(); ++j) REQUIRE(g.node(j) > g.node(j - 1));
    CHECK(g.inverse_nodes()[0] == 1.0 / g.node(0));
  }
}

TEST_CASE("nearest_index clamps to the grid") {
  const auto g = make_grid(16, 16.0);
  CHECK(g.nearest_index(0.0) == 0);
  CHECK(g.nearest_index(3.7) == 3);
  CHECK(g.nearest_index(1e9) == 15);
}

TEST_CASE("wavefunction size must match the grid") {
  const auto g = make_grid(16, 1.0);
  CHECK_THROWS_AS(RadialWavefunction(g, std::vector<cplx>(15)), InvalidArgument);
}

TEST_CASE("normalize") {
  const auto g = make_grid(400, 20.0);
  const auto psi = make_gaussian(g, 1.5);

  SUBCASE("norm squared 4 halves every amplitude") {
    std::vector<cplx> doubled(psi.values().begin(), psi.values().end());
    for (auto& z : doubled) z *= 2.0;
    const RadialWavefunction big(g, doubled);
    CHECK(big.norm_sq() == doctest::Approx(4.0).epsilon(1e-12));
    const auto back = normalize(big);
    for (std::size_t j = 0; j < psi.size(); ++j) REQUIRE(std::abs(back[j] - psi[j]) <= 1e-14 * std::abs(psi[j]));
  }
  SUBCASE("normalized input is unchanged") {
    const auto again = normalize(psi);
    for (std::size_t j = 0; j < psi.size(); ++j) CHECK(std::abs(again[j] - psi[j]) < 1e-12);
  }
  SUBCASE("zero and non-finite states are rejected") {
    CHECK_THROWS_AS(normalize(RadialWavefunction(g, std::vector<cplx>(g.n_points()))), InvalidArgument);
    std::vector<cplx> bad(g.n_points(), 1.0);
    bad[3] = std::nan("");
    CHECK_THROWS_AS(normalize(RadialWavefunction(g, bad)), InvalidArgument);
  }
  SUBCASE("idempotent on random states") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> d;
    std::vector<cplx> v(g.n_points());
    for (auto& z : v) z = {d(rng), d(rng)};
    const auto once = normalize(RadialWavefunction(g, v));
    const auto twice = normalize(once);
    CHECK(std::abs(once.norm_sq() - 1.0) < 1e-12);
    for (std::size_t j = 0; j < v.size(); ++j) REQUIRE(std::abs(twice[j] - once[j]) <= 1e-15);
  }
}

TEST_CASE("require_normalized enforces the 1e-6 contract") {
  const auto g = make_grid(400, 20.0);
  const auto psi = make_gaussian(g, 1.0);
  std::vector<cplx> v(psi.values().begin(), psi.values().end());
  for (auto& z : v) z *= 1.0 + 1e-6;
  CHECK_THROWS_AS(require_normalized(RadialWavefunction(g, v), "test"), InvalidArgument);
  CHECK_NOTHROW(require_normalized(make_gaussian(g, 1.0), "test"));
}

TEST_CASE("make_gaussian matches the analytic moments") {
  const auto g = make_grid(2000, 40.0);
  CHECK(spread_r(make_gaussian(g, 1.0)) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(spread_r(make_gaussian(g, 2.0)) == doctest::Approx(2.0).epsilon(1e-3));
  CHECK_THROWS_AS(make_gaussian(g, 20.0), InvalidArgument);
  CHECK_THROWS_AS(make_gaussian(g, 0.0), InvalidArgument);
  CHECK_THROWS_AS(make_gaussian(g, -1.0), InvalidArgument);
}

TEST_CASE("analytic Gaussian samples carry unit norm to 1e-8 on the reference grid") {
  const auto g = make_grid(2000, 40.0);
  for (double sigma = 0.5; sigma <= 4.0; sigma += 0.25) {
    CAPTURE(sigma);
    CHECK(std::abs(oracle::sampled_gaussian(g, sigma).norm_sq() - 1.0) < 1e-8);
    CHECK(std::abs(make_gaussian(g, sigma).norm_sq() - 1.0) < 1e-12);
  }
}

} // TEST_SUITE
