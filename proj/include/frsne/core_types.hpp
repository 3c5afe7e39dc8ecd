#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace frsne {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double four_pi = 4.0 * std::numbers::pi;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Bad user-supplied parameters (grid, physics, configuration).
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// Non-finite amplitudes produced by the time integrator.
class InstabilityError : public Error {
public:
  using Error::Error;
};

/// Physical constants and the coupling phase of G·exp(-i alpha).
///
/// Values are immutable after construction. The natural unit system
/// hbar = G = M = 1 is the default; the *_unit() accessors give the scales
/// used to report dimensionless results for any other choice.
class PhysicsParams {
public:
  /// Throws InvalidArgument unless hbar, G, M > 0 and alpha in [0, pi).
  static PhysicsParams create(double hbar, double newton_g, double mass, double alpha);
  static PhysicsParams natural(double alpha = pi / 2);

  double hbar() const { return hbar_; }
  double newton_g() const { return newton_g_; }
  double mass() const { return mass_; }
  double alpha() const { return alpha_; }

  PhysicsParams with_alpha(double alpha) const;

  double length_unit() const;   // hbar^2 / (G M^3)
  double energy_unit() const;   // G^2 M^5 / hbar^2
  double time_unit() const;     // hbar^3 / (G^2 M^5)
  double momentum_unit() const; // G M^3 / hbar

private:
  PhysicsParams(double hbar, double newton_g, double mass, double alpha)
      : hbar_(hbar), newton_g_(newton_g), mass_(mass), alpha_(alpha) {}

  double hbar_;
  double newton_g_;
  double mass_;
  double alpha_;
};

/// Uniform radial grid staggered by half a cell: r_j = (j + 1/2) h, h = r_max / n.
/// The origin is never a node. Copies share the node table.
class RadialGrid {
public:
  std::size_t n_points() const { return tables_->nodes.size(); }
  double r_max() const { return r_max_; }
  double spacing() const { return spacing_; }
  double node(std::size_t j) const { return tables_->nodes[j]; }
  std::span<const double> nodes() const { return tables_->nodes; }
  std::span<const double> inverse_nodes() const { return tables_->inverse; }

  /// Index of the node closest to r (clamped to the grid).
  std::size_t nearest_index(double r) const;

  /// Same node count and r_max equal up to a few ulps, so that grids rebuilt
  /// from printed node positions compare equal.
  friend bool operator==(const RadialGrid& a, const RadialGrid& b) {
    return a.n_points() == b.n_points() && std::abs(a.r_max_ - b.r_max_) <= 1e-13 * a.r_max_;
  }

private:
  friend RadialGrid make_grid(std::size_t n_points, double r_max);
  struct Tables {
    std::vector<double> nodes;
    std::vector<double> inverse; // 1 / r_j
  };
  RadialGrid(std::shared_ptr<const Tables> tables, double r_max, double spacing)
      : tables_(std::move(tables)), r_max_(r_max), spacing_(spacing) {}

  std::shared_ptr<const Tables> tables_;
  double r_max_;
  double spacing_;
};

inline constexpr std::size_t min_grid_points = 16;

/// Throws InvalidArgument for n_points < 16 or a non-finite / non-positive r_max.
RadialGrid make_grid(std::size_t n_points, double r_max);

/// Complex samples psi(r_j) of a spherically symmetric 3D state.
class RadialWavefunction {
public:
  RadialWavefunction(RadialGrid grid, std::vector<cplx> values);

  const RadialGrid& grid() const { return grid_; }
  std::span<const cplx> values() const { return values_; }
  std::span<cplx> values() { return values_; }
  std::size_t size() const { return values_.size(); }
  const cplx& operator[](std::size_t j) const { return values_[j]; }

  /// 4 pi sum_j |psi_j|^2 r_j^2 h
  double norm_sq() const;

private:
  RadialGrid grid_;
  std::vector<cplx> values_;
};

/// Tolerance on |norm^2 - 1| accepted by operations that require a normalized state.
inline constexpr double normalization_tolerance = 1e-6;

/// Throws InvalidArgument if |norm^2 - 1| exceeds normalization_tolerance.
void require_normalized(const RadialWavefunction& psi, const char* operation);

/// Rescales to unit norm. Throws InvalidArgument on a zero or non-finite norm.
RadialWavefunction normalize(const RadialWavefunction& psi);

/// Normalized real Gaussian psi ~ exp(-r^2 / 4 sigma^2), whose spread is sigma.
/// Rejects sigma <= 0 and sigma > r_max / 4.
RadialWavefunction make_gaussian(const RadialGrid& grid, double sigma);

struct ObservableRecord {
  double time = 0.0;
  double norm_sq = 0.0;
  double spread_r = 0.0;
  double spread_p = 0.0;
  double kinetic_energy = 0.0;
  double phase_at_ref = 0.0;
};

/// Summary of a relaxation run. Physical quantities are dimensionless:
/// lengths in hbar^2/GM^3, energies in G^2M^5/hbar^2, momenta in GM^3/hbar,
/// rates in 1/(hbar^3/G^2M^5).
struct StationaryReport {
  double spread_r0 = 0.0;
  double energy_e0 = 0.0;
  double spread_p0 = 0.0;
  double correlation_r0 = 0.0;
  double phase_drift = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
  double residual = 0.0;           // shape change rate of |psi| at the last sample
  double spread_fluctuation = 0.0; // relative spread range over the trailing window
  double final_time = 0.0;
};

} // namespace frsne
