#pragma once

#include "frsne/core_types.hpp"
#include "frsne/evolution.hpp"

#include <variant>
#include <vector>

namespace frsne {

// Initial states. Lengths are in units of hbar^2 / G M^3.

struct GaussianInit {
  double sigma = 1.0;
};

/// psi ~ 1 / (1 + exp((r - radius) / edge_width))
struct SmoothedRectangleInit {
  double radius = 3.0;
  double edge_width = 0.5;
};

/// psi ~ g(sigma1) + weight * g(sigma2), each Gaussian normalized on its own.
struct TwoGaussianInit {
  double sigma1 = 1.0;
  double sigma2 = 3.0;
  double weight = 1.0;
};

using InitialCondition = std::variant<GaussianInit, SmoothedRectangleInit, TwoGaussianInit>;

/// Largest tolerated fraction of the norm outside r_max / 4.
inline constexpr double max_initial_tail_mass = 1e-2;

/// Normalized real profile for `init`. Throws InvalidArgument for bad shape
/// parameters or when more than max_initial_tail_mass lies beyond r_max / 4.
RadialWavefunction make_initial_state(const RadialGrid& grid, const InitialCondition& init,
                                      const PhysicsParams& params);

/// Stopping rule. Times are in units of hbar^3 / G^2 M^5, the shape rate in
/// units of (G M^3 / hbar^2)^{3/2} per unit time.
struct ConvergenceCriterion {
  double window = 50.0;
  double tol_spread = 1e-4; // (max - min) / mean of the spread over the window
  double tol_shape = 1e-7;  // max-node change of |psi| per unit time
  double max_time = 5000.0;
  double sample_interval = 0.5;
  double reference_radius = 1.0; // node whose phase is tracked

  void validate() const;
};

struct RelaxResult {
  RadialWavefunction state;
  StationaryReport report;
  std::vector<ObservableRecord> series; // dimensionless units
};

/// Evolves until the spread and the shape of |psi| stop changing. A budget
/// exhausted without convergence returns a report with converged == false.
/// Instabilities propagate as InstabilityError.
RelaxResult relax(const InitialCondition& init, const RadialGrid& grid, const PhysicsParams& params,
                  const EvolutionConfig& cfg, const ConvergenceCriterion& crit);

/// Same, starting from an arbitrary normalized state.
RelaxResult relax_from(const RadialWavefunction& initial, const PhysicsParams& params,
                       const EvolutionConfig& cfg, const ConvergenceCriterion& crit);

/// max_j | |a_j| - |b_j| |. Throws on grid mismatch.
double shape_distance(const RadialWavefunction& a, const RadialWavefunction& b);

/// Samples `psi` onto `grid` by linear interpolation of u = r psi (u = 0 at
/// r = 0 and beyond the source box), then normalizes.
RadialWavefunction resample(const RadialWavefunction& psi, const RadialGrid& grid);

} // namespace frsne
