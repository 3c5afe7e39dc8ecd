#include "frsne/twobody.hpp"

#include "frsne/observables.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

namespace frsne {
namespace {

double norm3(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

} // namespace

Vec3 newton_force(const Vec3& r1, const Vec3& r2, const PhysicsParams& params) {
  const Vec3 d = sub(r2, r1);
  const double dist = norm3(d);
  if (!(dist > 0.0)) throw InvalidArgument("newton_force: coincident centroids");
  const double m = params.mass();
  const double s = params.newton_g() * m * m / (dist * dist * dist);
  return {s * d[0], s * d[1], s * d[2]};
}

LinearizedCrossPotential linearized_cross_potential(const Vec3& r1, const Vec3& r2, double spread,
                                                    const PhysicsParams& params) {
  const double dist = norm3(sub(r2, r1));
  if (!(dist > min_separation_ratio * spread)) {
    std::ostringstream msg;
    msg << "far-field expansion needs (dr)_0 << |r1 - r2|; separation " << dist << " is not above "
        << min_separation_ratio << " x spread " << spread;
    throw InvalidArgument(msg.str());
  }
  const double m = params.mass();
  return {-params.newton_g() * m * m / dist, newton_force(r1, r2, params)};
}

LinearizationError cross_potential_linearization_error(const RadialWavefunction& profile, double separation,
                                                       const PhysicsParams& params) {
  using Quad = boost::math::quadrature::gauss<double, 32>;
  const RadialGrid& grid = profile.grid();
  if (!(separation > grid.r_max())) throw InvalidArgument("separation must exceed the profile box");

  const double m = params.mass();
  const double gm2 = params.newton_g() * m * m;
  const double d = separation;
  const double h = grid.spacing();

  double mean = 0.0, sq = 0.0;
  for (std::size_t j = 0; j < profile.size(); ++j) {
    const double r = grid.node(j);
    const double w = four_pi * r * r * h * std::norm(profile[j]);
    // Polar angle measured from the axis pointing at the other body.
    auto err = [&](double mu) {
      const double exact = -gm2 / std::sqrt(r * r + d * d - 2.0 * r * d * mu);
      const double linear = -gm2 / d - gm2 * r * mu / (d * d);
      return exact - linear;
    };
    mean += w * 0.5 * Quad::integrate(err, -1.0, 1.0);
    sq += w * 0.5 * Quad::integrate([&](double mu) { const double e = err(mu); return e * e; }, -1.0, 1.0);
  }
  return {mean, std::sqrt(sq)};
}

Vec3 induced_acceleration(const RadialWavefunction& profile, const Vec3& force, const PhysicsParams& params) {
  const double k = 2.0 * correlation_r0(profile, params);
  return {k * force[0], k * force[1], k * force[2]};
}

AccelerationIdentity verify_acceleration_identity(const RadialWavefunction& profile, const Vec3& force,
                                                  const PhysicsParams& params) {
  require_normalized(profile, "verify_acceleration_identity");
  const RadialGrid& grid = profile.grid();
  const std::size_t n = profile.size();
  const double h = grid.spacing();

  // dp_a/dt = -i hbar int psi* d_a(f psi) - i hbar int (f psi)* d_a psi, f = F.x / hbar
  //         = F_a [ -i N - 2i C ],  C = (4 pi / 3) int r^3 psi* psi' dr,
  // using d_a psi = psi'(r) x_a / r and the angular average <x_a x_b> = r^2 delta_ab / 3.
  // With psi* psi' = |psi| |psi|' + i |psi|^2 chi':  Re = 2 Im C,  Im = -(N + 2 Re C).
  double c_re = 0.0, c_im = 0.0, norm = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double r = grid.node(j);
    const double a = std::abs(profile[j]);
    std::size_t lo = j == 0 ? 0 : j - 1;
    std::size_t hi = j + 1 == n ? j : j + 1;
    const double span = static_cast<double>(hi - lo) * h;
    const double dmod = (std::abs(profile[hi]) - std::abs(profile[lo])) / span;
    const double dchi = std::arg(profile[hi] * std::conj(profile[lo])) / span;
    const double r3 = r * r * r;
    c_re += r3 * a * dmod;
    c_im += r3 * a * a * dchi;
    norm += r * r * a * a;
  }
  c_re *= four_pi / 3.0 * h;
  c_im *= four_pi / 3.0 * h;
  norm *= four_pi * h;

  AccelerationIdentity out;
  const Mat3 corr = correlation_matrix_isotropy(profile, params);
  for (std::size_t a = 0; a < 3; ++a) {
    out.lhs[a] = 2.0 * c_im * force[a];
    double acc = 0.0;
    for (std::size_t b = 0; b < 3; ++b) acc += corr[a][b] * force[b];
    out.rhs[a] = 2.0 * acc;
  }
  const double diff = norm3(sub(out.lhs, out.rhs));
  const double scale = norm3(out.rhs);
  out.relative_error = scale > 0.0 ? diff / scale : diff;
  out.imaginary_residual = std::abs(norm + 2.0 * c_re) * norm3(force);
  return out;
}

double effective_coupling(double alpha, double r0, const PhysicsParams& params) {
  return (std::cos(alpha) + 2.0 * r0 * std::sin(alpha)) * params.newton_g();
}

std::string_view status_name(SweepStatus s) {
  switch (s) {
  case SweepStatus::converged: return "converged";
  case SweepStatus::not_converged: return "not_converged";
  case SweepStatus::analytic: return "analytic";
  case SweepStatus::failed: return "failed";
  }
  return "unknown";
}

std::vector<SweepRow> sweep_alpha(const std::vector<double>& alphas, const SweepSettings& settings) {
  if (alphas.empty()) throw InvalidArgument("sweep_alpha: empty alpha list");
  for (double a : alphas)
    if (!(a >= 0.0 && a < pi)) throw InvalidArgument("sweep_alpha: alpha must lie in [0, pi)");
  settings.criterion.validate();

  std::vector<SweepRow> rows(alphas.size());
  auto run_one = [&](std::size_t i) {
    SweepRow& row = rows[i];
    row.alpha = alphas[i];
    const PhysicsParams p = settings.params.with_alpha(row.alpha);
    const double unit = settings.params.newton_g();
    row.geff_over_g_constant_r0 = effective_coupling(row.alpha, settings.constant_r0, p) / unit;
    if (row.alpha == 0.0) {
      row.status = SweepStatus::analytic;
      row.r0_measured = std::numeric_limits<double>::quiet_NaN();
      row.geff_over_g_measured = 1.0;
      return;
    }
    try {
      EvolutionConfig cfg = EvolutionConfig::from_stability_factor(settings.grid, p, settings.stability_factor);
      cfg.max_steps = settings.max_steps;
      const RelaxResult res = relax(settings.init, settings.grid, p, cfg, settings.criterion);
      row.report = res.report;
      row.r0_measured = res.report.correlation_r0;
      row.geff_over_g_measured = effective_coupling(row.alpha, row.r0_measured, p) / unit;
      row.status = res.report.converged ? SweepStatus::converged : SweepStatus::not_converged;
    } catch (const Error& e) {
      row.status = SweepStatus::failed;
      row.message = e.what();
      row.r0_measured = std::numeric_limits<double>::quiet_NaN();
      row.geff_over_g_measured = std::numeric_limits<double>::quiet_NaN();
    }
  };

  unsigned threads = settings.max_threads != 0 ? settings.max_threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(alphas.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) run_one(i);
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return rows;
}

} // namespace frsne
