#include "frsne/relaxation.hpp"

#include "frsne/observables.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace frsne {
namespace {

std::vector<double> gaussian_profile(const RadialGrid& grid, double sigma) {
  // Normalized 3D Gaussian amplitude (2 pi sigma^2)^{-3/4} exp(-r^2 / 4 sigma^2).
  const double norm = std::pow(2.0 * pi * sigma * sigma, -0.75);
  std::vector<double> out(grid.n_points());
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double r = grid.node(j);
    out[j] = norm * std::exp(-r * r / (4.0 * sigma * sigma));
  }
  return out;
}

void require_positive(double x, const char* what) {
  if (!(std::isfinite(x) && x > 0.0)) throw InvalidArgument(std::string(what) + " must be positive");
}

} // namespace

RadialWavefunction make_initial_state(const RadialGrid& grid, const InitialCondition& init,
                                      const PhysicsParams& params) {
  const double L = params.length_unit();
  std::vector<double> amp = std::visit(
      [&](const auto& ic) -> std::vector<double> {
        using T = std::decay_t<decltype(ic)>;
        if constexpr (std::is_same_v<T, GaussianInit>) {
          require_positive(ic.sigma, "sigma");
          return gaussian_profile(grid, ic.sigma * L);
        } else if constexpr (std::is_same_v<T, SmoothedRectangleInit>) {
          require_positive(ic.radius, "rectangle radius");
          require_positive(ic.edge_width, "rectangle edge width");
          std::vector<double> out(grid.n_points());
          for (std::size_t j = 0; j < out.size(); ++j)
            out[j] = 1.0 / (1.0 + std::exp((grid.node(j) - ic.radius * L) / (ic.edge_width * L)));
          return out;
        } else {
          require_positive(ic.sigma1, "sigma1");
          require_positive(ic.sigma2, "sigma2");
          if (!(std::isfinite(ic.weight) && ic.weight >= 0.0))
            throw InvalidArgument("two-Gaussian weight must be non-negative");
          auto a = gaussian_profile(grid, ic.sigma1 * L);
          const auto b = gaussian_profile(grid, ic.sigma2 * L);
          for (std::size_t j = 0; j < a.size(); ++j) a[j] += ic.weight * b[j];
          return a;
        }
      },
      init);

  std::vector<cplx> values(amp.begin(), amp.end());
  RadialWavefunction psi = normalize(RadialWavefunction(grid, std::move(values)));

  const double cut = grid.r_max() / 4.0;
  double tail = 0.0;
  for (std::size_t j = 0; j < psi.size(); ++j) {
    const double r = grid.node(j);
    if (r > cut) tail += std::norm(psi[j]) * r * r;
  }
  tail *= four_pi * grid.spacing();
  if (tail > max_initial_tail_mass)
    throw InvalidArgument("initial state is not contained in r < r_max/4 (tail mass " + std::to_string(tail) +
                          ")");
  return psi;
}

void ConvergenceCriterion::validate() const {
  require_positive(window, "convergence window");
  require_positive(tol_spread, "tol_spread");
  require_positive(tol_shape, "tol_shape");
  require_positive(max_time, "max_time");
  require_positive(sample_interval, "sample_interval");
  require_positive(reference_radius, "reference_radius");
  if (sample_interval * 10.0 > window) throw InvalidArgument("window must span at least 10 samples");
}

RelaxResult relax(const InitialCondition& init, const RadialGrid& grid, const PhysicsParams& params,
                  const EvolutionConfig& cfg, const ConvergenceCriterion& crit) {
  return relax_from(make_initial_state(grid, init, params), params, cfg, crit);
}

RelaxResult relax_from(const RadialWavefunction& initial, const PhysicsParams& params, const EvolutionConfig& cfg,
                       const ConvergenceCriterion& crit) {
  crit.validate();
  require_normalized(initial, "relax_from");
  const RadialGrid& grid = initial.grid();
  cfg.validate(grid, params);

  const double T = params.time_unit();
  const double L = params.length_unit();
  const double E = params.energy_unit();
  const double P = params.momentum_unit();
  const double amp_unit = std::pow(L, 1.5);

  // dt is shortened so that a whole number of steps spans one sample interval.
  EvolutionConfig run_cfg = cfg;
  const double interval = crit.sample_interval * T;
  const auto steps_per_sample = static_cast<std::int64_t>(std::ceil(interval / cfg.dt - 1e-9));
  run_cfg.dt = interval / static_cast<double>(steps_per_sample);
  const auto n_samples = static_cast<std::int64_t>(std::ceil(crit.max_time / crit.sample_interval - 1e-9));
  if (n_samples * steps_per_sample > cfg.max_steps)
    throw InvalidArgument("max_time needs more than max_steps integration steps");

  const std::size_t ref = grid.nearest_index(crit.reference_radius * L);
  Stepper stepper(normalize(initial), params, run_cfg);

  RelaxResult out{stepper.state(), {}, {}};
  auto record = [&](const RadialWavefunction& psi, double t) {
    ObservableRecord rec = observe(psi, params, t * T, ref);
    rec.time = t;
    rec.spread_r /= L;
    rec.spread_p /= P;
    rec.kinetic_energy /= E;
    out.series.push_back(rec);
  };
  record(out.state, 0.0);

  std::deque<std::pair<double, double>> window; // (time, spread)
  window.emplace_back(0.0, out.series.back().spread_r);
  std::vector<double> prev_mod, mod;
  stepper.moduli(prev_mod);

  bool converged = false;
  double rate = std::numeric_limits<double>::infinity();
  double fluctuation = std::numeric_limits<double>::infinity();
  for (std::int64_t s = 1; s <= n_samples; ++s) {
    stepper.advance(steps_per_sample);
    const double t = static_cast<double>(s) * crit.sample_interval;
    RadialWavefunction psi = stepper.state();
    record(psi, t);

    stepper.moduli(mod);
    double change = 0.0;
    for (std::size_t j = 0; j < mod.size(); ++j) change = std::max(change, std::abs(mod[j] - prev_mod[j]));
    rate = change * amp_unit / crit.sample_interval;
    prev_mod.swap(mod);

    window.emplace_back(t, out.series.back().spread_r);
    while (window.front().first < t - crit.window - 1e-9) window.pop_front();
    const bool full = window.front().first <= t - crit.window + 1e-9;
    if (full) {
      double lo = window.front().second, hi = lo, sum = 0.0;
      for (const auto& [tt, v] : window) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        sum += v;
      }
      fluctuation = (hi - lo) / (sum / static_cast<double>(window.size()));
    }
    out.state = std::move(psi);
    if (full && fluctuation < crit.tol_spread && rate < crit.tol_shape) {
      converged = true;
      break;
    }
  }

  StationaryReport& rep = out.report;
  rep.converged = converged;
  rep.iterations = static_cast<std::size_t>(stepper.steps());
  rep.residual = rate;
  rep.spread_fluctuation = fluctuation;
  rep.final_time = out.series.back().time;
  rep.spread_r0 = spread_r(out.state) / L;
  rep.energy_e0 = kinetic_energy(out.state, params) / E;
  rep.spread_p0 = spread_p(out.state, params) / P;
  rep.correlation_r0 = correlation_r0(out.state, params);

  // Phase drift over the trailing window.
  std::vector<std::pair<double, double>> phases;
  for (const auto& rec : out.series)
    if (rec.time >= rep.final_time - crit.window - 1e-9) phases.emplace_back(rec.time, rec.phase_at_ref);
  rep.phase_drift =
      phases.size() >= 10 ? phase_drift_rate(phases) : std::numeric_limits<double>::quiet_NaN();
  return out;
}

double shape_distance(const RadialWavefunction& a, const RadialWavefunction& b) {
  if (!(a.grid() == b.grid())) throw InvalidArgument("shape_distance: grid mismatch");
  double d = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) d = std::max(d, std::abs(std::abs(a[j]) - std::abs(b[j])));
  return d;
}

RadialWavefunction resample(const RadialWavefunction& psi, const RadialGrid& grid) {
  const RadialGrid& src = psi.grid();
  const double h = src.spacing();
  const std::size_t n = src.n_points();
  auto u_at = [&](std::ptrdiff_t k) -> cplx {
    if (k < 0) return -psi[0] * src.node(0); // odd reflection through r = 0
    if (static_cast<std::size_t>(k) >= n) return -psi[n - 1] * src.node(n - 1);
    return psi[static_cast<std::size_t>(k)] * src.node(static_cast<std::size_t>(k));
  };
  std::vector<cplx> out(grid.n_points());
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double r = grid.node(j);
    if (r >= src.r_max()) continue;
    const double x = r / h - 0.5;
    const double fl = std::floor(x);
    const auto k = static_cast<std::ptrdiff_t>(fl);
    const double w = x - fl;
    out[j] = ((1.0 - w) * u_at(k) + w * u_at(k + 1)) / r;
  }
  return normalize(RadialWavefunction(grid, std::move(out)));
}

} // namespace frsne
