// frsne_cli: relax | sweep-alpha | twobody
//
// Each subcommand reads an optional flat key = value config file; the
// per-field flags override it.

#include "frsne/commands.hpp"
#include "frsne/kernels.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

namespace {

struct Overrides {
  std::string config;
  std::vector<std::string> sets;
  std::optional<double> alpha, r_max, sigma, max_time, separation;
  std::optional<std::size_t> n_points;
  std::optional<std::string> out_dir, alphas, direction, profile, isa;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "flat key = value config file");
  cmd->add_option("--set", o.sets, "extra override, key=value (repeatable)");
  cmd->add_option("--alpha", o.alpha, "phase of the complex Newton coupling");
  cmd->add_option("--n-points", o.n_points, "radial grid nodes");
  cmd->add_option("--r-max", o.r_max, "outer radius of the box");
  cmd->add_option("--sigma", o.sigma, "width of the initial Gaussian");
  cmd->add_option("--max-time", o.max_time, "relaxation time budget");
  cmd->add_option("--out-dir", o.out_dir, "output directory");
  cmd->add_option("--isa", o.isa, "kernel set: scalar or avx2");
}

frsne::RunConfig build_config(const Overrides& o) {
  using namespace frsne;
  RunConfig cfg = o.config.empty() ? RunConfig{} : load_config(o.config);
  for (const auto& kv : o.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError(kv, "--set expects key=value");
    set_field(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  auto put = [&](const char* key, const auto& value) {
    if (!value) return;
    if constexpr (std::is_same_v<std::decay_t<decltype(*value)>, std::string>)
      set_field(cfg, key, *value);
    else if constexpr (std::is_floating_point_v<std::decay_t<decltype(*value)>>)
      set_field(cfg, key, format_double(*value));
    else
      set_field(cfg, key, std::to_string(*value));
  };
  put("alpha", o.alpha);
  put("n_points", o.n_points);
  put("r_max", o.r_max);
  put("sigma", o.sigma);
  put("max_time", o.max_time);
  put("out_dir", o.out_dir);
  put("alphas", o.alphas);
  put("separation", o.separation);
  put("direction", o.direction);
  put("profile", o.profile);
  return cfg;
}

void select_isa(const std::optional<std::string>& name) {
  using namespace frsne::kernels;
  if (!name) return;
  if (*name == "scalar") {
    select(Isa::scalar);
  } else if (*name == "avx2") {
    if (avx2_table() == nullptr) throw frsne::ConfigError("isa", "AVX2 kernels unavailable on this machine");
    select(Isa::avx2);
  } else {
    throw frsne::ConfigError("isa", "expected scalar or avx2");
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frictional Schroedinger-Newton relaxation lab"};
  app.require_subcommand(1);
  Overrides o;

  auto* relax = app.add_subcommand("relax", "relax a packet to its stationary state");
  add_common(relax, o);

  auto* sweep = app.add_subcommand("sweep-alpha", "tabulate the effective coupling against alpha");
  add_common(sweep, o);
  sweep->add_option("--alphas", o.alphas, "comma-separated alpha list");

  auto* two = app.add_subcommand("twobody", "momentum transfer between two distant packets");
  add_common(two, o);
  two->add_option("--separation", o.separation, "centroid distance");
  two->add_option("--direction", o.direction, "x,y,z of the separation axis");
  two->add_option("--profile", o.profile, "stationary_profile.csv to reuse instead of relaxing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : frsne::exit_config_error;
  }

  frsne::RunConfig cfg;
  try {
    select_isa(o.isa);
    cfg = build_config(o);
  } catch (const frsne::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return frsne::exit_config_error;
  }

  try {
    if (*relax) return frsne::cmd_relax(cfg, std::cerr);
    if (*sweep) return frsne::cmd_sweep_alpha(cfg, std::cerr);
    return frsne::cmd_twobody(cfg, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
