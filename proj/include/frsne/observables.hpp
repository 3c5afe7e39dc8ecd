#pragma once

#include "frsne/core_types.hpp"

#include <span>
#include <utility>
#include <vector>

namespace frsne {

/// Unwrapped phase chi(r_j) = arg psi(r_j) on the contiguous region [first, last)
/// that starts at the innermost node above the amplitude floor. Nodes outside
/// the region hold NaN.
struct PhaseProfile {
  RadialGrid grid;
  std::vector<double> chi;
  std::size_t first = 0;
  std::size_t last = 0;

  bool valid(std::size_t j) const { return j >= first && j < last; }
};

inline constexpr double default_amplitude_floor = 1e-10; // relative to the peak |psi|

/// sqrt((4 pi / 3) sum_j |psi_j|^2 r_j^4 h)
double spread_r(const RadialWavefunction& psi);

/// (hbar^2 / 2M) 4 pi sum_j |psi'_j|^2 r_j^2 h, psi' by centered differences
/// (one-sided at the two ends).
double kinetic_energy(const RadialWavefunction& psi, const PhysicsParams& params);

/// Total momentum spread sqrt(<p^2>) = sqrt(2 M E_kin).
double spread_p(const RadialWavefunction& psi, const PhysicsParams& params);

PhaseProfile phase_profile(const RadialWavefunction& psi, double amplitude_floor = default_amplitude_floor);

/// (4 pi / 3) sum_j r_j^3 |psi_j|^2 chi'_j h over the phase region, chi' by
/// centered differences of the unwrapped phase.
double correlation_r0(const RadialWavefunction& psi, const PhysicsParams& params);

/// Position-momentum correlation matrix of a spherical state. The angular
/// average of n_a n_b is delta_ab / 3, so the result is R0 times the identity.
Mat3 correlation_matrix_isotropy(const RadialWavefunction& psi, const PhysicsParams& params);

/// Least-squares slope of the unwrapped phase series. Needs >= 10 samples.
double phase_drift_rate(std::span<const std::pair<double, double>> trajectory);

/// Snapshot of all scalar diagnostics at `time`; the phase is read at node `ref_index`.
ObservableRecord observe(const RadialWavefunction& psi, const PhysicsParams& params, double time,
                         std::size_t ref_index);

} // namespace frsne
