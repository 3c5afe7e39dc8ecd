#include "frsne/meanfield.hpp"

#include "frsne/kernels.hpp"

#include <cmath>

namespace frsne {

double mean_field(const RadialGrid& grid, std::span<const double> shell_density, double coupling,
                  std::span<double> potential, std::span<double> inner, std::span<double> outer) {
  const std::size_t n = grid.n_points();
  const double h = grid.spacing();
  const auto inv_r = grid.inverse_nodes();

  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    acc += shell_density[j];
    inner[j] = acc * h;
  }
  acc = 0.0;
  for (std::size_t j = n; j-- > 0;) {
    outer[j] = acc * h;
    acc += shell_density[j] * inv_r[j];
  }

  const auto& k = kernels::active();
  k.combine_potential(inner.data(), outer.data(), inv_r.data(), -four_pi * coupling,
                      potential.data(), n);
  return four_pi * h * k.dot(shell_density.data(), potential.data(), n);
}

PotentialProfile compute_potential(const RadialWavefunction& psi, const PhysicsParams& params) {
  require_normalized(psi, "compute_potential");
  const RadialGrid& grid = psi.grid();
  const std::size_t n = grid.n_points();
  std::vector<double> density(n), inner(n), outer(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double r = grid.node(j);
    density[j] = std::norm(psi[j]) * r * r;
  }
  PotentialProfile out{grid, std::vector<double>(n), 0.0};
  const double m = params.mass();
  out.expectation = mean_field(grid, density, params.newton_g() * m * m, out.values, inner, outer);
  return out;
}

double potential_expectation(const RadialWavefunction& psi, const PotentialProfile& pot) {
  if (!(psi.grid() == pot.grid)) throw InvalidArgument("potential_expectation: grid mismatch");
  const auto r = psi.grid().nodes();
  double acc = 0.0;
  for (std::size_t j = 0; j < psi.size(); ++j) acc += std::norm(psi[j]) * pot.values[j] * r[j] * r[j];
  return four_pi * acc * psi.grid().spacing();
}

} // namespace frsne
