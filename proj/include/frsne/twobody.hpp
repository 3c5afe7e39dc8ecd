#pragma once

#include "frsne/core_types.hpp"
#include "frsne/evolution.hpp"
#include "frsne/relaxation.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace frsne {

/// A distant body: centroid, c.o.m. momentum, and its packet in its own frame.
struct BodyState {
  Vec3 centroid{};
  Vec3 momentum{};
  RadialWavefunction profile;
};

/// Force on body 1 from body 2: G M^2 (r2 - r1) / |r1 - r2|^3.
Vec3 newton_force(const Vec3& r1, const Vec3& r2, const PhysicsParams& params);

/// Linearization V12(r) ~ offset - force . (r - r1) of the cross potential
/// around the first centroid.
struct LinearizedCrossPotential {
  double offset = 0.0; // -G M^2 / d
  Vec3 force{};        // same as newton_force(r1, r2)
};

/// Minimum ratio of separation to packet spread for the far-field expansion.
inline constexpr double min_separation_ratio = 10.0;

/// Throws InvalidArgument unless |r1 - r2| > 10 * spread, where `spread` is
/// the packet's standard spread in physical length units.
LinearizedCrossPotential linearized_cross_potential(const Vec3& r1, const Vec3& r2, double spread,
                                                    const PhysicsParams& params);

/// Error of the linear expansion against the exact point-source potential
/// -G M^2 / |r - r2|, weighted by the density of `profile` centred at r1.
/// Gauss-Legendre quadrature over the polar angle; the integrand is
/// azimuthally symmetric about the separation axis.
struct LinearizationError {
  double mean = 0.0; // <V_exact - V_lin>
  double rms = 0.0;  // sqrt(<(V_exact - V_lin)^2>)
};
LinearizationError cross_potential_linearization_error(const RadialWavefunction& profile, double separation,
                                                       const PhysicsParams& params);

/// dp/dt = 2 R0 F for a body whose packet is `profile`.
Vec3 induced_acceleration(const RadialWavefunction& profile, const Vec3& force, const PhysicsParams& params);

struct AccelerationIdentity {
  Vec3 lhs{};
  Vec3 rhs{};
  double relative_error = 0.0;
  /// Discrete remainder of the imaginary part of the momentum-rate integral;
  /// it vanishes in the continuum by integration by parts.
  double imaginary_residual = 0.0;
};

/// Evaluates the momentum-rate integral with dpsi/dt = (1/hbar) F.(r - rbar) psi
/// substituted (left side) and compares it with 2 R F from the correlation
/// matrix (right side). The left side takes local phase increments from
/// products psi_{j+1} conj(psi_{j-1}) and never unwraps the phase.
AccelerationIdentity verify_acceleration_identity(const RadialWavefunction& profile, const Vec3& force,
                                                  const PhysicsParams& params);

/// (cos alpha + 2 r0 sin alpha) G
double effective_coupling(double alpha, double r0, const PhysicsParams& params);

enum class SweepStatus {
  converged,
  not_converged,
  analytic, // alpha = 0: G_alpha = G without relaxation
  failed,   // the run raised an error (see message)
};

std::string_view status_name(SweepStatus s);

struct SweepRow {
  double alpha = 0.0;
  double r0_measured = 0.0;
  double geff_over_g_measured = 0.0;
  double geff_over_g_constant_r0 = 0.0;
  SweepStatus status = SweepStatus::not_converged;
  std::string message;
  StationaryReport report;
};

struct SweepSettings {
  InitialCondition init = GaussianInit{};
  RadialGrid grid = make_grid(2000, 40.0);
  PhysicsParams params = PhysicsParams::natural();
  double stability_factor = 0.5;
  std::int64_t max_steps = 100'000'000;
  ConvergenceCriterion criterion;
  double constant_r0 = 0.6753;
  unsigned max_threads = 0; // 0: hardware concurrency
};

/// Relaxes at every alpha in [0, pi) and tabulates G_alpha / G with the
/// measured R0(alpha) and with a constant R0. Runs are independent and may
/// execute concurrently; the table is returned in input order.
std::vector<SweepRow> sweep_alpha(const std::vector<double>& alphas, const SweepSettings& settings);

} // namespace frsne
