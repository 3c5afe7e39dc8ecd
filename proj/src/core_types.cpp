#include "frsne/core_types.hpp"

#include <algorithm>
#include <cmath>

namespace frsne {

PhysicsParams PhysicsParams::create(double hbar, double newton_g, double mass, double alpha) {
  if (!(std::isfinite(hbar) && hbar > 0.0)) throw InvalidArgument("hbar must be positive and finite");
  if (!(std::isfinite(newton_g) && newton_g > 0.0))
    throw InvalidArgument("newton_g must be positive and finite");
  if (!(std::isfinite(mass) && mass > 0.0)) throw InvalidArgument("mass must be positive and finite");
  if (!(std::isfinite(alpha) && alpha >= 0.0 && alpha < pi))
    throw InvalidArgument("alpha must lie in [0, pi)");
  return PhysicsParams(hbar, newton_g, mass, alpha);
}

PhysicsParams PhysicsParams::natural(double alpha) { return create(1.0, 1.0, 1.0, alpha); }

PhysicsParams PhysicsParams::with_alpha(double alpha) const {
  return create(hbar_, newton_g_, mass_, alpha);
}

double PhysicsParams::length_unit() const {
  return hbar_ * hbar_ / (newton_g_ * mass_ * mass_ * mass_);
}

double PhysicsParams::energy_unit() const {
  const double m2 = mass_ * mass_;
  return newton_g_ * newton_g_ * m2 * m2 * mass_ / (hbar_ * hbar_);
}

double PhysicsParams::time_unit() const { return hbar_ / energy_unit(); }

double PhysicsParams::momentum_unit() const { return hbar_ / length_unit(); }

std::size_t RadialGrid::nearest_index(double r) const {
  const double x = std::floor(r / spacing_);
  if (!(x > 0.0)) return 0;
  return std::min(static_cast<std::size_t>(x), n_points() - 1);
}

RadialGrid make_grid(std::size_t n_points, double r_max) {
  if (n_points < min_grid_points)
    throw InvalidArgument("grid needs at least " + std::to_string(min_grid_points) + " points");
  if (!(std::isfinite(r_max) && r_max > 0.0)) throw InvalidArgument("r_max must be positive and finite");
  const double h = r_max / static_cast<double>(n_points);
  auto tables = std::make_shared<RadialGrid::Tables>();
  tables->nodes.resize(n_points);
  tables->inverse.resize(n_points);
  for (std::size_t j = 0; j < n_points; ++j) {
    tables->nodes[j] = (static_cast<double>(j) + 0.5) * h;
    tables->inverse[j] = 1.0 / tables->nodes[j];
  }
  return RadialGrid(std::move(tables), r_max, h);
}

RadialWavefunction::RadialWavefunction(RadialGrid grid, std::vector<cplx> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.n_points())
    throw InvalidArgument("wavefunction length does not match the grid");
}

double RadialWavefunction::norm_sq() const {
  const auto r = grid_.nodes();
  double acc = 0.0;
  for (std::size_t j = 0; j < values_.size(); ++j) acc += std::norm(values_[j]) * r[j] * r[j];
  return four_pi * acc * grid_.spacing();
}

void require_normalized(const RadialWavefunction& psi, const char* operation) {
  const double n = psi.norm_sq();
  if (!(std::abs(n - 1.0) <= normalization_tolerance))
    throw InvalidArgument(std::string(operation) + ": wavefunction is not normalized (norm^2 = " +
                          std::to_string(n) + ")");
}

RadialWavefunction normalize(const RadialWavefunction& psi) {
  const double n = psi.norm_sq();
  if (!(std::isfinite(n) && n > 0.0)) throw InvalidArgument("cannot normalize a zero or non-finite state");
  const double s = 1.0 / std::sqrt(n);
  std::vector<cplx> out(psi.values().begin(), psi.values().end());
  for (auto& v : out) v *= s;
  return RadialWavefunction(psi.grid(), std::move(out));
}

RadialWavefunction make_gaussian(const RadialGrid& grid, double sigma) {
  if (!(std::isfinite(sigma) && sigma > 0.0)) throw InvalidArgument("sigma must be positive");
  if (sigma > grid.r_max() / 4.0)
    throw InvalidArgument("sigma exceeds r_max/4; the Gaussian tail would be truncated");
  std::vector<cplx> v(grid.n_points());
  const double inv = 1.0 / (4.0 * sigma * sigma);
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double r = grid.node(j);
    v[j] = std::exp(-r * r * inv);
  }
  return normalize(RadialWavefunction(grid, std::move(v)));
}

} // namespace frsne
