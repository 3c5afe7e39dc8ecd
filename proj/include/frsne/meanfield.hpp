#pragma once

#include "frsne/core_types.hpp"

#include <span>
#include <vector>

namespace frsne {

/// Newtonian mean field V_psi(r_j) of a spherical state together with <V_psi>.
struct PotentialProfile {
  RadialGrid grid;
  std::vector<double> values;
  double expectation = 0.0;
};

/// V(r_j) = -4 pi G M^2 [ (1/r_j) sum_{k<=j} |psi_k|^2 r_k^2 h + sum_{k>j} |psi_k|^2 r_k h ],
/// i.e. the 1/max(r, r') kernel evaluated with one prefix and one suffix sum.
/// Requires a normalized state.
PotentialProfile compute_potential(const RadialWavefunction& psi, const PhysicsParams& params);

/// 4 pi sum_j |psi_j|^2 V(r_j) r_j^2 h. Throws if the grids differ.
double potential_expectation(const RadialWavefunction& psi, const PotentialProfile& pot);

/// O(N) kernel shared with the integrator.
///
/// shell_density[j] = |psi_j|^2 r_j^2 (equivalently |u_j|^2 with u = r psi).
/// Writes V into `potential` and returns <V>. `inner` and `outer` are scratch
/// buffers of the grid size.
double mean_field(const RadialGrid& grid, std::span<const double> shell_density,
                  double coupling /* G M^2 */, std::span<double> potential, std::span<double> inner,
                  std::span<double> outer);

} // namespace frsne
