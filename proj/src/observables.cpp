#include "frsne/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace frsne {
namespace {

double wrap_to_pi(double x) {
  x = std::remainder(x, 2.0 * pi);
  return x;
}

template <class Value, class Get>
Value centered_derivative(std::size_t j, std::size_t first, std::size_t last, double h, Get get) {
  if (last - first < 2) return Value{};
  if (j == first) return (get(j + 1) - get(j)) / h;
  if (j + 1 == last) return (get(j) - get(j - 1)) / h;
  return (get(j + 1) - get(j - 1)) / (2.0 * h);
}

} // namespace

double spread_r(const RadialWavefunction& psi) {
  require_normalized(psi, "spread_r");
  const auto r = psi.grid().nodes();
  double acc = 0.0;
  for (std::size_t j = 0; j < psi.size(); ++j) {
    const double r2 = r[j] * r[j];
    acc += std::norm(psi[j]) * r2 * r2;
  }
  return std::sqrt(four_pi / 3.0 * acc * psi.grid().spacing());
}

double kinetic_energy(const RadialWavefunction& psi, const PhysicsParams& params) {
  const std::size_t n = psi.size();
  if (n < 3) throw InvalidArgument("kinetic_energy needs at least 3 grid points");
  require_normalized(psi, "kinetic_energy");
  const double h = psi.grid().spacing();
  const auto r = psi.grid().nodes();
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const cplx d = centered_derivative<cplx>(j, 0, n, h, [&](std::size_t k) { return psi[k]; });
    acc += std::norm(d) * r[j] * r[j];
  }
  return params.hbar() * params.hbar() / (2.0 * params.mass()) * four_pi * acc * h;
}

double spread_p(const RadialWavefunction& psi, const PhysicsParams& params) {
  return std::sqrt(2.0 * params.mass() * kinetic_energy(psi, params));
}

PhaseProfile phase_profile(const RadialWavefunction& psi, double amplitude_floor) {
  const std::size_t n = psi.size();
  double peak = 0.0;
  for (const auto& v : psi.values()) peak = std::max(peak, std::abs(v));
  const double floor = amplitude_floor * peak;

  PhaseProfile out{psi.grid(), std::vector<double>(n, std::numeric_limits<double>::quiet_NaN()), 0, 0};
  std::size_t first = 0;
  while (first < n && !(std::abs(psi[first]) > floor)) ++first;
  if (first == n) throw InvalidArgument("phase_profile: no node above the amplitude floor");
  std::size_t last = first + 1;
  while (last < n && std::abs(psi[last]) > floor) ++last;

  out.first = first;
  out.last = last;
  out.chi[first] = std::arg(psi[first]);
  for (std::size_t j = first + 1; j < last; ++j)
    out.chi[j] = out.chi[j - 1] + wrap_to_pi(std::arg(psi[j]) - std::arg(psi[j - 1]));
  return out;
}

double correlation_r0(const RadialWavefunction& psi, [[maybe_unused]] const PhysicsParams& params) {
  require_normalized(psi, "correlation_r0");
  const PhaseProfile phase = phase_profile(psi);
  const double h = psi.grid().spacing();
  const auto r = psi.grid().nodes();
  double acc = 0.0;
  for (std::size_t j = phase.first; j < phase.last; ++j) {
    const double dchi =
        centered_derivative<double>(j, phase.first, phase.last, h, [&](std::size_t k) { return phase.chi[k]; });
    acc += r[j] * r[j] * r[j] * std::norm(psi[j]) * dchi;
  }
  return four_pi / 3.0 * acc * h;
}

Mat3 correlation_matrix_isotropy(const RadialWavefunction& psi, const PhysicsParams& params) {
  // R_ab = 4 pi int r^3 |psi|^2 chi' <n_a n_b> dr with <n_a n_b> = delta_ab / 3.
  const double r0 = correlation_r0(psi, params);
  Mat3 m{};
  for (std::size_t a = 0; a < 3; ++a) m[a][a] = r0;
  return m;
}

double phase_drift_rate(std::span<const std::pair<double, double>> trajectory) {
  const std::size_t n = trajectory.size();
  if (n < 10) throw InvalidArgument("phase_drift_rate needs at least 10 samples");
  std::vector<double> phase(n);
  phase[0] = trajectory[0].second;
  for (std::size_t i = 1; i < n; ++i)
    phase[i] = phase[i - 1] + wrap_to_pi(trajectory[i].second - trajectory[i - 1].second);

  double tm = 0.0, pm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    tm += trajectory[i].first;
    pm += phase[i];
  }
  tm /= static_cast<double>(n);
  pm /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dt = trajectory[i].first - tm;
    sxy += dt * (phase[i] - pm);
    sxx += dt * dt;
  }
  if (!(sxx > 0.0)) throw InvalidArgument("phase_drift_rate: samples span no time");
  return sxy / sxx;
}

ObservableRecord observe(const RadialWavefunction& psi, const PhysicsParams& params, double time,
                         std::size_t ref_index) {
  ObservableRecord rec;
  rec.time = time;
  rec.norm_sq = psi.norm_sq();
  rec.spread_r = spread_r(psi);
  rec.kinetic_energy = kinetic_energy(psi, params);
  rec.spread_p = std::sqrt(2.0 * params.mass() * rec.kinetic_energy);
  rec.phase_at_ref = std::arg(psi[ref_index]);
  return rec;
}

} // namespace frsne
