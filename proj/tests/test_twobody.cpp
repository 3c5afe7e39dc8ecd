#include "oracles.hpp"
#include "stationary.hpp"

#include "frsne/observables.hpp"
#include "frsne/twobody.hpp"

#include <doctest.h>

using namespace frsne;

namespace {

double norm3(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

} // namespace

TEST_SUITE("twobody") {

TEST_CASE("Newton force") {
  const auto p = PhysicsParams::natural();
  const Vec3 f = newton_force({0, 0, 0}, {10, 0, 0}, p);
  CHECK(f[0] == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(f[1] == 0.0);
  CHECK(f[2] == 0.0);

  const Vec3 r1{0.3, -1.2, 4.0}, r2{-7.0, 2.5, 9.1};
  const Vec3 a = newton_force(r1, r2, p), b = newton_force(r2, r1, p);
  for (int k = 0; k < 3; ++k) CHECK(a[k] == -b[k]);

  const Vec3 far = newton_force({0, 0, 0}, {0, 0, 100}, p);
  CHECK(std::abs(norm3(far) * 100.0 - norm3(newton_force({0, 0, 0}, {0, 0, 10}, p))) < 1e-14 * norm3(far) * 100.0);

  const auto q = PhysicsParams::create(1.0, 2.0, 3.0, pi / 2);
  CHECK(newton_force({0, 0, 0}, {2, 0, 0}, q)[0] == doctest::Approx(18.0 / 4.0));
  CHECK_THROWS_AS(newton_force(r1, r1, p), InvalidArgument);
}

TEST_CASE("linearized cross potential and its guard") {
  const auto p = PhysicsParams::natural();
  const double spread = 5.5501;
  const double d = 100.0 * spread;
  const auto lin = linearized_cross_potential({0, 0, 0}, {0, d, 0}, spread, p);
  CHECK(lin.offset == doctest::Approx(-1.0 / d).epsilon(1e-14));
  const Vec3 f = newton_force({0, 0, 0}, {0, d, 0}, p);
  for (int k = 0; k < 3; ++k) CHECK(std::abs(lin.force[k] - f[k]) <= 1e-12 * norm3(f));
  CHECK_THROWS_AS(linearized_cross_potential({0, 0, 0}, {5.0 * spread, 0, 0}, spread, p), InvalidArgument);
  CHECK_THROWS_AS(linearized_cross_potential({0, 0, 0}, {10.0 * spread, 0, 0}, spread, p), InvalidArgument);
  try {
    linearized_cross_potential({0, 0, 0}, {1.0, 0, 0}, spread, p);
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("<<") != std::string::npos);
  }
}

TEST_CASE("linearization error of the cross potential") {
  const auto& psi = testing::stationary_state();
  const auto p = PhysicsParams::natural();
  const double spread = spread_r(psi);
  const double d20 = 20.0 * spread;
  REQUIRE(d20 > psi.grid().r_max());
  const auto e20 = cross_potential_linearization_error(psi, d20, p);
  const auto e40 = cross_potential_linearization_error(psi, 2.0 * d20, p);
  const auto e80 = cross_potential_linearization_error(psi, 4.0 * d20, p);
  const double leading = 1.0 / d20;
  // Monopole outside the packet: the linear model is exact on average.
  CHECK(std::abs(e20.mean) < 1e-10 * leading);
  // Quadrupole-sized residual, O((dr)^2 / d^3).
  CHECK(e20.rms < 3.0 * spread * spread / (d20 * d20 * d20));
  // Relative to the leading term the error falls as d^-2; absolutely as d^-3.
  CHECK(e20.rms / e40.rms == doctest::Approx(8.0).epsilon(0.05));
  CHECK(e40.rms / e80.rms == doctest::Approx(8.0).epsilon(0.05));
  CHECK_THROWS_AS(cross_potential_linearization_error(psi, 10.0, p), InvalidArgument);
}

TEST_CASE("induced acceleration") {
  const auto p = PhysicsParams::natural();
  const auto g = make_grid(2000, 40.0);
  const Vec3 f{0.3, -0.1, 0.2};
  const Vec3 zero = induced_acceleration(make_gaussian(g, 1.0), f, p);
  for (double x : zero) CHECK(x == 0.0);

  const auto chirped = normalize(oracle::sampled_gaussian(g, 1.0, 0.25));
  const Vec3 a = induced_acceleration(chirped, f, p);
  const Vec3 b = induced_acceleration(chirped, {-f[0], -f[1], -f[2]}, p);
  for (int k = 0; k < 3; ++k) {
    CHECK(a[k] == doctest::Approx(2.0 * 0.5 * f[k]).epsilon(1e-3));
    CHECK(a[k] == -b[k]);
  }

  const auto& psi0 = testing::stationary_state();
  const Vec3 s = induced_acceleration(psi0, {1.0, 0.0, 0.0}, p);
  CHECK(s[0] == doctest::Approx(1.3506).epsilon(0.02));
  CHECK(s[1] == 0.0);
  CHECK(s[2] == 0.0);
}

TEST_CASE("acceleration identity") {
  const auto p = PhysicsParams::natural();
  const auto g = make_grid(2000, 40.0);
  const auto chirped = normalize(oracle::sampled_gaussian(g, 1.0, 0.25));
  const auto& psi0 = testing::stationary_state();
  const Vec3 f{0.6, -0.2, 0.9};

  SUBCASE("quadratic-phase Gaussian") {
    const auto id = verify_acceleration_identity(chirped, f, p);
    CHECK(id.relative_error < 1e-6);
    for (int k = 0; k < 3; ++k) {
      CHECK(id.lhs[k] == doctest::Approx(2.0 * oracle::chirped_gaussian_r0(0.25, 1.0) * f[k]).epsilon(1e-3));
      CHECK(id.rhs[k] == doctest::Approx(2.0 * oracle::chirped_gaussian_r0(0.25, 1.0) * f[k]).epsilon(1e-3));
    }
    CHECK(id.imaginary_residual < 1e-3 * norm3(f));
  }
  SUBCASE("stationary state") {
    const auto id = verify_acceleration_identity(psi0, {1.0, 0.0, 0.0}, p);
    CHECK(id.relative_error < 1e-6);
    CHECK(id.lhs[0] == doctest::Approx(2.0 * correlation_r0(psi0, p)).epsilon(1e-6));
  }
  SUBCASE("real profile") {
    const auto id = verify_acceleration_identity(make_gaussian(g, 1.0), f, p);
    CHECK(id.relative_error == 0.0);
    CHECK(norm3(id.lhs) == 0.0);
  }
  SUBCASE("zero force") {
    const auto id = verify_acceleration_identity(psi0, {0, 0, 0}, p);
    CHECK(norm3(id.lhs) == 0.0);
    CHECK(norm3(id.rhs) == 0.0);
  }
}

TEST_CASE("effective coupling") {
  const auto p = PhysicsParams::natural();
  CHECK(effective_coupling(0.0, 0.6753, p) == 1.0);
  CHECK(effective_coupling(pi / 2, 0.6753, p) == doctest::Approx(1.3506).epsilon(1e-12));
  const double peak = oracle::coupling_peak_alpha(0.6753);
  CHECK(peak == doctest::Approx(0.9334).epsilon(1e-4));
  CHECK(effective_coupling(peak, 0.6753, p) == doctest::Approx(oracle::coupling_peak_value(0.6753)).epsilon(1e-12));
  CHECK(effective_coupling(peak, 0.6753, p) == doctest::Approx(1.6805).epsilon(1e-4));
  CHECK(effective_coupling(peak + 1e-3, 0.6753, p) < effective_coupling(peak, 0.6753, p));
  CHECK(effective_coupling(peak - 1e-3, 0.6753, p) < effective_coupling(peak, 0.6753, p));
  CHECK(effective_coupling(pi / 2, 0.5, PhysicsParams::create(1.0, 3.0, 1.0, 0.0)) == doctest::Approx(3.0));
}

TEST_CASE("sweep bookkeeping") {
  SweepSettings s;
  s.grid = make_grid(200, 40.0);
  s.criterion.max_time = 60.0;
  s.max_threads = 2;
  CHECK_THROWS_AS(sweep_alpha({}, s), InvalidArgument);
  CHECK_THROWS_AS(sweep_alpha({pi}, s), InvalidArgument);
  CHECK_THROWS_AS(sweep_alpha({-0.1}, s), InvalidArgument);

  const auto rows = sweep_alpha({1.2, 0.0, 0.9334}, s);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].alpha == 1.2);
  CHECK(rows[1].status == SweepStatus::analytic);
  CHECK(rows[1].geff_over_g_measured == 1.0);
  CHECK(rows[1].geff_over_g_constant_r0 == 1.0);
  CHECK(rows[0].status == SweepStatus::not_converged);
  CHECK(rows[2].geff_over_g_constant_r0 > rows[0].geff_over_g_constant_r0);
  CHECK(rows[0].geff_over_g_measured ==
        doctest::Approx(effective_coupling(1.2, rows[0].r0_measured, PhysicsParams::natural())));
  CHECK(status_name(SweepStatus::failed) == "failed");

  // Tail-mass failures are caught per row rather than aborting the sweep.
  SweepSettings wide = s;
  wide.init = GaussianInit{15.0};
  const auto bad = sweep_alpha({0.5}, wide);
  CHECK(bad[0].status == SweepStatus::failed);
  CHECK_FALSE(bad[0].message.empty());
}

TEST_CASE("measured coupling tends to one as alpha decreases") {
  SweepSettings s;
  s.grid = make_grid(400, 40.0);
  s.criterion.max_time = 30000.0;
  const auto rows = sweep_alpha({0.05, 0.1}, s);
  for (const auto& r : rows) REQUIRE(r.status == SweepStatus::converged);
  CHECK(rows[0].geff_over_g_measured > 1.0);
  CHECK(rows[0].geff_over_g_measured < rows[1].geff_over_g_measured);
  CHECK(rows[0].geff_over_g_measured - 1.0 < 0.1);
}

} // TEST_SUITE
