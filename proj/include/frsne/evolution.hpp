#pragma once

#include "frsne/core_types.hpp"

#include <cstdint>
#include <vector>

namespace frsne {

struct EvolutionConfig {
  double dt = 0.0;
  double stability_factor = 0.5; // dt = c * M h^2 / hbar
  bool renormalize_each_step = true;
  std::int64_t max_steps = 100'000'000;
  /// Off only for free-particle checks of the kinetic operator and integrator.
  bool include_mean_field = true;

  /// dt from the stability factor; throws unless 0 < c <= 1.
  static EvolutionConfig from_stability_factor(const RadialGrid& grid, const PhysicsParams& params,
                                               double stability_factor = 0.5);

  /// Throws InvalidArgument unless 0 < dt <= M h^2 / hbar.
  void validate(const RadialGrid& grid, const PhysicsParams& params) const;
};

/// Explicit stability ceiling M h^2 / hbar.
double stability_ceiling(const RadialGrid& grid, const PhysicsParams& params);

/// dpsi/dt of the complex-coupling equation on the grid:
///   (i hbar/2M)(psi'' + 2 psi'/r) - (i cos(a)/hbar) V psi - (sin(a)/hbar)(V - <V>) psi.
/// The Laplacian is the second difference of u = r psi divided by r, with
/// u(0) = u(r_max) = 0. Requires a normalized state.
std::vector<cplx> rhs(const RadialWavefunction& psi, const PhysicsParams& params,
                      bool include_mean_field = true);

/// Classical RK4 integrator on u = r psi with reusable work buffers.
class Stepper {
public:
  Stepper(const RadialWavefunction& initial, const PhysicsParams& params, const EvolutionConfig& cfg);

  /// Advances `n` steps. Throws InstabilityError on non-finite amplitudes
  /// and Error when max_steps would be exceeded.
  void advance(std::int64_t n = 1);

  RadialWavefunction state() const;
  double time() const { return static_cast<double>(steps_) * cfg_.dt; }
  std::int64_t steps() const { return steps_; }
  double dt() const { return cfg_.dt; }
  const RadialGrid& grid() const { return grid_; }
  const PhysicsParams& params() const { return params_; }

  /// |psi_j| at every node, without materializing the state.
  void moduli(std::vector<double>& out) const;

  /// 4 pi h sum |u_j|^2
  double norm_sq() const;

private:
  void evaluate(const std::vector<cplx>& u, std::vector<cplx>& out);
  void single_step();

  RadialGrid grid_;
  PhysicsParams params_;
  EvolutionConfig cfg_;
  std::int64_t steps_ = 0;
  double last_norm_sq_ = 1.0;

  std::vector<cplx> u_, acc_, stage_, k_;
  std::vector<double> density_, potential_, inner_, outer_;
};

/// One RK4 step of the state, renormalized when cfg.renormalize_each_step.
RadialWavefunction step(const RadialWavefunction& psi, const PhysicsParams& params,
                        const EvolutionConfig& cfg);

} // namespace frsne
