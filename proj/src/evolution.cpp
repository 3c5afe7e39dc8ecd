#include "frsne/evolution.hpp"

#include "frsne/kernels.hpp"
#include "frsne/meanfield.hpp"

#include <cmath>
#include <sstream>

namespace frsne {

double stability_ceiling(const RadialGrid& grid, const PhysicsParams& params) {
  const double h = grid.spacing();
  return params.mass() * h * h / params.hbar();
}

EvolutionConfig EvolutionConfig::from_stability_factor(const RadialGrid& grid, const PhysicsParams& params,
                                                       double stability_factor) {
  if (!(stability_factor > 0.0 && stability_factor <= 1.0))
    throw InvalidArgument("stability_factor must lie in (0, 1]");
  EvolutionConfig cfg;
  cfg.stability_factor = stability_factor;
  cfg.dt = stability_factor * stability_ceiling(grid, params);
  return cfg;
}

void EvolutionConfig::validate(const RadialGrid& grid, const PhysicsParams& params) const {
  const double ceiling = stability_ceiling(grid, params);
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  if (dt > ceiling * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "dt = " << dt << " exceeds the explicit stability bound M h^2/hbar = " << ceiling;
    throw InvalidArgument(msg.str());
  }
  if (max_steps <= 0) throw InvalidArgument("max_steps must be positive");
}

namespace {

kernels::RhsCoefficients coefficients(const RadialGrid& grid, const PhysicsParams& params,
                                      bool include_mean_field, double vmean) {
  const double h = grid.spacing();
  kernels::RhsCoefficients c;
  c.kin = params.hbar() / (2.0 * params.mass() * h * h);
  if (include_mean_field) {
    c.unitary = std::cos(params.alpha()) / params.hbar();
    c.friction = std::sin(params.alpha()) / params.hbar();
    c.vmean = vmean;
  }
  return c;
}

} // namespace

Stepper::Stepper(const RadialWavefunction& initial, const PhysicsParams& params, const EvolutionConfig& cfg)
    : grid_(initial.grid()), params_(params), cfg_(cfg) {
  cfg_.validate(grid_, params_);
  const std::size_t n = grid_.n_points();
  u_.resize(n);
  for (std::size_t j = 0; j < n; ++j) u_[j] = initial[j] * grid_.node(j);
  acc_.resize(n);
  stage_.resize(n);
  k_.resize(n);
  density_.resize(n);
  potential_.assign(n, 0.0);
  inner_.resize(n);
  outer_.resize(n);
  last_norm_sq_ = norm_sq();
}

void Stepper::evaluate(const std::vector<cplx>& u, std::vector<cplx>& out) {
  const auto& kt = kernels::active();
  const std::size_t n = u.size();
  double vmean = 0.0;
  if (cfg_.include_mean_field) {
    kt.abs_sq(u.data(), density_.data(), n);
    const double m = params_.mass();
    vmean = mean_field(grid_, density_, params_.newton_g() * m * m, potential_, inner_, outer_);
  }
  const auto c = coefficients(grid_, params_, cfg_.include_mean_field, vmean);
  kt.radial_rhs(u.data(), potential_.data(), c, out.data(), n);
}

void Stepper::single_step() {
  const auto& kt = kernels::active();
  const std::size_t n = u_.size();
  const double dt = cfg_.dt;

  acc_ = u_;
  evaluate(u_, k_);
  kt.rk_stage(acc_.data(), stage_.data(), u_.data(), k_.data(), dt / 6.0, dt / 2.0, n);
  evaluate(stage_, k_);
  kt.rk_stage(acc_.data(), stage_.data(), u_.data(), k_.data(), dt / 3.0, dt / 2.0, n);
  evaluate(stage_, k_);
  kt.rk_stage(acc_.data(), stage_.data(), u_.data(), k_.data(), dt / 3.0, dt, n);
  evaluate(stage_, k_);
  kt.axpy(acc_.data(), k_.data(), dt / 6.0, n);
  u_.swap(acc_);

  const double nsq = four_pi * grid_.spacing() * kt.sum_abs_sq(u_.data(), n);
  // The continuum flow conserves the norm; a jump of a percent in one step
  // means unresolved modes are growing.
  if (!std::isfinite(nsq) || std::abs(nsq / last_norm_sq_ - 1.0) > 1e-2) {
    std::ostringstream msg;
    msg << "integration became unstable at step " << steps_ + 1 << " (dt = " << dt
        << ", stability bound M h^2/hbar = " << stability_ceiling(grid_, params_) << ")";
    throw InstabilityError(msg.str());
  }
  if (cfg_.renormalize_each_step) {
    kt.scale(u_.data(), 1.0 / std::sqrt(nsq), n);
    last_norm_sq_ = 1.0;
  } else {
    last_norm_sq_ = nsq;
  }
  ++steps_;
}

void Stepper::advance(std::int64_t n) {
  if (steps_ + n > cfg_.max_steps) throw Error("max_steps exceeded");
  for (std::int64_t i = 0; i < n; ++i) single_step();
}

RadialWavefunction Stepper::state() const {
  const auto inv_r = grid_.inverse_nodes();
  std::vector<cplx> psi(u_.size());
  for (std::size_t j = 0; j < u_.size(); ++j) psi[j] = u_[j] * inv_r[j];
  return RadialWavefunction(grid_, std::move(psi));
}

void Stepper::moduli(std::vector<double>& out) const {
  const auto inv_r = grid_.inverse_nodes();
  out.resize(u_.size());
  for (std::size_t j = 0; j < u_.size(); ++j) out[j] = std::abs(u_[j]) * inv_r[j];
}

double Stepper::norm_sq() const {
  return four_pi * grid_.spacing() * kernels::active().sum_abs_sq(u_.data(), u_.size());
}

std::vector<cplx> rhs(const RadialWavefunction& psi, const PhysicsParams& params, bool include_mean_field) {
  require_normalized(psi, "rhs");
  const RadialGrid& grid = psi.grid();
  const std::size_t n = grid.n_points();
  std::vector<cplx> u(n), du(n);
  for (std::size_t j = 0; j < n; ++j) u[j] = psi[j] * grid.node(j);

  std::vector<double> density(n), potential(n, 0.0), inner(n), outer(n);
  double vmean = 0.0;
  if (include_mean_field) {
    for (std::size_t j = 0; j < n; ++j) density[j] = std::norm(u[j]);
    const double m = params.mass();
    vmean = mean_field(grid, density, params.newton_g() * m * m, potential, inner, outer);
  }
  kernels::active().radial_rhs(u.data(), potential.data(), coefficients(grid, params, include_mean_field, vmean),
                               du.data(), n);
  const auto inv_r = grid.inverse_nodes();
  for (std::size_t j = 0; j < n; ++j) du[j] *= inv_r[j];
  return du;
}

RadialWavefunction step(const RadialWavefunction& psi, const PhysicsParams& params, const EvolutionConfig& cfg) {
  require_normalized(psi, "step");
  Stepper s(psi, params, cfg);
  s.advance(1);
  return s.state();
}

} // namespace frsne
