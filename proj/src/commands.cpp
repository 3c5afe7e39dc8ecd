#include "frsne/commands.hpp"

#include "frsne/kernels.hpp"
#include "frsne/observables.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

namespace frsne {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

void write_json(const fs::path& path, const json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

// NaN and infinities have no JSON spelling; they become null.
json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json vec_json(const Vec3& v) { return json::array({num(v[0]), num(v[1]), num(v[2])}); }

json units_json(const PhysicsParams& p) {
  return {
      {"hbar", p.hbar()},
      {"newton_g", p.newton_g()},
      {"mass", p.mass()},
      {"length_unit", p.length_unit()},
      {"energy_unit", p.energy_unit()},
      {"time_unit", p.time_unit()},
      {"momentum_unit", p.momentum_unit()},
  };
}

class WallClock {
public:
  WallClock() : start_(std::chrono::steady_clock::now()), started_at_(std::time(nullptr)) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
  std::string started_at() const {
    std::ostringstream ss;
    std::tm tm{};
    gmtime_r(&started_at_, &tm);
    ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return ss.str();
  }

private:
  std::chrono::steady_clock::time_point start_;
  std::time_t started_at_;
};

void write_meta(const fs::path& dir, const char* command, const RunConfig& cfg, const WallClock& clock,
                int exit_code) {
  json config = json::object();
  std::istringstream lines(format_config(cfg));
  for (std::string line; std::getline(lines, line);) {
    const auto eq = line.find(" = ");
    config[line.substr(0, eq)] = line.substr(eq + 3);
  }
  write_json(dir / "meta.json", {
                                    {"command", command},
                                    {"config", config},
                                    {"started_at_utc", clock.started_at()},
                                    {"wall_seconds", clock.seconds()},
                                    {"isa", kernels::isa_name(kernels::active().isa)},
                                    {"exit_code", exit_code},
                                });
}

fs::path prepare(const RunConfig& cfg) {
  cfg.validate();
  return fs::path(cfg.out_dir);
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("out_dir", "cannot create " + dir.string() + ": " + ec.message());
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  for (std::string cell; std::getline(ss, cell, ',');) out.push_back(cell);
  return out;
}

double to_double(const std::string& s, const fs::path& path) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw InvalidArgument(path.string() + ": bad number '" + s + "'");
}

template <class F>
int guarded(std::ostream& log, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return exit_config_error;
  } catch (const InstabilityError& e) {
    log << "numerical instability: " << e.what() << '\n';
    return exit_instability;
  }
}

} // namespace

void write_series_csv(const fs::path& path, std::span<const ObservableRecord> series) {
  auto out = open_out(path);
  out << "time,norm_sq,spread_r,spread_p,kinetic_energy,phase_at_ref\n";
  for (const auto& rec : series) {
    out << format_double(rec.time) << ',' << format_double(rec.norm_sq) << ',' << format_double(rec.spread_r)
        << ',' << format_double(rec.spread_p) << ',' << format_double(rec.kinetic_energy) << ','
        << format_double(rec.phase_at_ref) << '\n';
  }
}

void write_profile_csv(const fs::path& path, const RadialWavefunction& psi) {
  const PhaseProfile phase = phase_profile(psi);
  auto out = open_out(path);
  out << "r,abs_psi_sq,phase\n";
  for (std::size_t j = 0; j < psi.size(); ++j) {
    const double chi = phase.valid(j) ? phase.chi[j] : std::arg(psi[j]);
    out << format_double(psi.grid().node(j)) << ',' << format_double(std::norm(psi[j])) << ','
        << format_double(chi) << '\n';
  }
}

RadialWavefunction read_profile_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("profile", "cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "r,abs_psi_sq,phase")
    throw ConfigError("profile", path.string() + ": expected header r,abs_psi_sq,phase");
  std::vector<double> r;
  std::vector<cplx> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != 3) throw ConfigError("profile", path.string() + ": expected three columns");
    r.push_back(to_double(cells[0], path));
    const double dens = to_double(cells[1], path);
    values.push_back(std::polar(std::sqrt(std::max(dens, 0.0)), to_double(cells[2], path)));
  }
  if (r.size() < min_grid_points) throw ConfigError("profile", path.string() + ": too few rows");
  // Staggered nodes: r_0 = h / 2 and r_{N-1} = r_max - h / 2.
  const RadialGrid grid = make_grid(r.size(), r.front() + r.back());
  const double h = grid.spacing();
  for (std::size_t j = 0; j < r.size(); ++j)
    if (std::abs(r[j] - grid.node(j)) > 1e-9 * h)
      throw ConfigError("profile", path.string() + ": nodes are not a uniform staggered grid");
  RadialWavefunction psi(grid, std::move(values));
  if (std::abs(psi.norm_sq() - 1.0) > 1e-6) throw ConfigError("profile", path.string() + ": not normalized");
  return normalize(psi);
}

void write_sweep_csv(const fs::path& path, std::span<const SweepRow> rows) {
  auto out = open_out(path);
  out << "alpha,r0_measured,geff_over_g_measured,geff_over_g_constant_r0,status\n";
  for (const auto& row : rows) {
    out << format_double(row.alpha) << ',' << format_double(row.r0_measured) << ','
        << format_double(row.geff_over_g_measured) << ',' << format_double(row.geff_over_g_constant_r0) << ','
        << status_name(row.status) << '\n';
  }
}

json report_json(const StationaryReport& report, const PhysicsParams& params) {
  return {
      {"spread_r0", num(report.spread_r0)},
      {"energy_e0", num(report.energy_e0)},
      {"spread_p0", num(report.spread_p0)},
      {"correlation_r0", num(report.correlation_r0)},
      {"phase_drift", num(report.phase_drift)},
      {"converged", report.converged},
      {"iterations", report.iterations},
      {"residual", num(report.residual)},
      {"spread_fluctuation", num(report.spread_fluctuation)},
      {"final_time", num(report.final_time)},
      {"alpha", params.alpha()},
      {"units", units_json(params)},
  };
}

int cmd_relax(const RunConfig& cfg, std::ostream& log) {
  return guarded(log, [&] {
    const WallClock clock;
    const fs::path dir = prepare(cfg);
    const RadialGrid grid = cfg.grid();
    const PhysicsParams params = cfg.physics();
    int code = exit_success;
    try {
      const RelaxResult res =
          relax(cfg.initial_condition(), grid, params, cfg.evolution(grid, params), cfg.criterion());
      ensure_dir(dir);
      write_series_csv(dir / "spread_vs_time.csv", res.series);
      write_profile_csv(dir / "stationary_profile.csv", res.state);
      write_json(dir / "report.json", report_json(res.report, params));
      const auto& r = res.report;
      log << (r.converged ? "converged" : "not converged") << " at t = " << r.final_time
          << ": spread_r0 = " << r.spread_r0 << ", energy_e0 = " << r.energy_e0 << ", spread_p0 = " << r.spread_p0
          << ", correlation_r0 = " << r.correlation_r0 << '\n';
      code = r.converged ? exit_success : exit_not_converged;
    } catch (const InstabilityError&) {
      ensure_dir(dir);
      write_meta(dir, "relax", cfg, clock, exit_instability);
      throw;
    }
    write_meta(dir, "relax", cfg, clock, code);
    return code;
  });
}

int cmd_sweep_alpha(const RunConfig& cfg, std::ostream& log) {
  return guarded(log, [&] {
    const WallClock clock;
    if (cfg.alphas.empty()) throw ConfigError("alphas", "empty alpha list");
    for (double a : cfg.alphas)
      if (!(a >= 0.0 && a < pi)) throw ConfigError("alphas", "every alpha must lie in [0, pi)");
    if (!(std::isfinite(cfg.constant_r0))) throw ConfigError("constant_r0", "must be finite");
    const fs::path dir = prepare(cfg);

    SweepSettings s;
    s.init = cfg.initial_condition();
    s.grid = cfg.grid();
    s.params = cfg.physics();
    s.stability_factor = cfg.stability_factor;
    s.max_steps = cfg.max_steps;
    s.criterion = cfg.criterion();
    s.constant_r0 = cfg.constant_r0;
    s.max_threads = cfg.threads;
    const auto rows = sweep_alpha(cfg.alphas, s);
    ensure_dir(dir);
    write_sweep_csv(dir / "geff_vs_alpha.csv", rows);

    bool any_failed = false, any_open = false;
    for (const auto& row : rows) {
      log << "alpha = " << row.alpha << ": " << status_name(row.status) << ", G_alpha/G = " << row.geff_over_g_measured;
      if (!row.message.empty()) log << " (" << row.message << ')';
      log << '\n';
      any_failed |= row.status == SweepStatus::failed;
      any_open |= row.status == SweepStatus::not_converged;
    }
    const int code = any_failed ? exit_instability : any_open ? exit_not_converged : exit_success;
    write_meta(dir, "sweep-alpha", cfg, clock, code);
    return code;
  });
}

int cmd_twobody(const RunConfig& cfg, std::ostream& log) {
  return guarded(log, [&] {
    const WallClock clock;
    const double dnorm = std::sqrt(cfg.direction[0] * cfg.direction[0] + cfg.direction[1] * cfg.direction[1] +
                                   cfg.direction[2] * cfg.direction[2]);
    if (!(dnorm > 0.0) || !std::isfinite(dnorm)) throw ConfigError("direction", "must be a nonzero finite vector");
    if (!(cfg.separation > 0.0) || !std::isfinite(cfg.separation))
      throw ConfigError("separation", "must be positive and finite");

    const PhysicsParams params = cfg.physics();
    std::optional<RadialWavefunction> profile;
    StationaryReport report;
    bool converged = true;
    if (!cfg.profile.empty()) {
      cfg.validate();
      profile = read_profile_csv(cfg.profile);
    }
    const fs::path dir = prepare(cfg);
    if (!profile) {
      const RadialGrid grid = cfg.grid();
      RelaxResult res = relax(cfg.initial_condition(), grid, params, cfg.evolution(grid, params), cfg.criterion());
      converged = res.report.converged;
      profile = std::move(res.state);
    }

    const double spread = spread_r(*profile);
    const Vec3 unit{cfg.direction[0] / dnorm, cfg.direction[1] / dnorm, cfg.direction[2] / dnorm};
    const Vec3 r1{0.0, 0.0, 0.0};
    const Vec3 r2{cfg.separation * unit[0], cfg.separation * unit[1], cfg.separation * unit[2]};
    LinearizedCrossPotential lin;
    try {
      lin = linearized_cross_potential(r1, r2, spread, params);
    } catch (const InvalidArgument& e) {
      throw ConfigError("separation", e.what());
    }
    ensure_dir(dir);
    const Vec3& force = lin.force;
    const Vec3 force2{-force[0], -force[1], -force[2]};
    const Vec3 rate1 = induced_acceleration(*profile, force, params);
    const Vec3 rate2 = induced_acceleration(*profile, force2, params);
    const double m = params.mass();
    const AccelerationIdentity id = verify_acceleration_identity(*profile, force, params);
    const double r0 = correlation_r0(*profile, params);

    json out = {
        {"separation", cfg.separation},
        {"direction", vec_json(unit)},
        {"body1_position", vec_json(r1)},
        {"body2_position", vec_json(r2)},
        {"spread_r0", num(spread)},
        {"correlation_r0", num(r0)},
        {"coupling_factor", num(2.0 * r0)},
        {"force", vec_json(force)},
        {"momentum_rate_body1", vec_json(rate1)},
        {"momentum_rate_body2", vec_json(rate2)},
        {"acceleration_body1", vec_json({rate1[0] / m, rate1[1] / m, rate1[2] / m})},
        {"acceleration_body2", vec_json({rate2[0] / m, rate2[1] / m, rate2[2] / m})},
        {"identity",
         {{"lhs", vec_json(id.lhs)},
          {"rhs", vec_json(id.rhs)},
          {"relative_error", num(id.relative_error)},
          {"imaginary_residual", num(id.imaginary_residual)}}},
        {"profile_converged", converged},
        {"alpha", params.alpha()},
        {"units", units_json(params)},
    };
    write_json(dir / "twobody.json", out);
    log << "force = " << force[0] << ", " << force[1] << ", " << force[2] << "; dp1/dt = " << 2.0 * r0
        << " F; identity residual " << id.relative_error << '\n';
    const int code = converged ? exit_success : exit_not_converged;
    write_meta(dir, "twobody", cfg, clock, code);
    return code;
  });
}

} // namespace frsne
