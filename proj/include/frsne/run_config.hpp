#pragma once

#include "frsne/core_types.hpp"
#include "frsne/evolution.hpp"
#include "frsne/relaxation.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace frsne {

/// Invalid configuration; field() names the offending key.
class ConfigError : public InvalidArgument {
public:
  ConfigError(std::string field, const std::string& what)
      : InvalidArgument(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

private:
  std::string field_;
};

/// Everything a CLI run needs. Defaults reproduce the reference runs:
/// 2000 nodes on r_max = 40, hbar = G = M = 1, alpha = pi/2, Gaussian sigma = 1.
struct RunConfig {
  // grid
  std::size_t n_points = 2000;
  double r_max = 40.0;
  // physics
  double alpha = pi / 2;
  double hbar = 1.0;
  double newton_g = 1.0;
  double mass = 1.0;
  // evolution
  double stability_factor = 0.5;
  std::int64_t max_steps = 100'000'000;
  // convergence
  double window = 50.0;
  double tol_spread = 1e-4;
  double tol_shape = 1e-7;
  double max_time = 5000.0;
  double sample_interval = 0.5;
  double reference_radius = 1.0;
  // initial condition: gaussian | smoothed_rectangle | two_gaussian
  std::string initial = "gaussian";
  double sigma = 1.0;
  double rect_radius = 3.0;
  double rect_width = 0.5;
  double sigma1 = 1.0;
  double sigma2 = 3.0;
  double weight = 1.0;
  // output
  std::string out_dir = "out";
  // sweep-alpha
  std::vector<double> alphas;
  double constant_r0 = 0.6753;
  unsigned threads = 0;
  // twobody
  double separation = 100.0;
  Vec3 direction{1.0, 0.0, 0.0};
  std::string profile; // optional stationary_profile.csv to reuse

  bool operator==(const RunConfig&) const = default;

  RadialGrid grid() const;
  PhysicsParams physics() const;
  EvolutionConfig evolution(const RadialGrid& grid, const PhysicsParams& params) const;
  ConvergenceCriterion criterion() const;
  InitialCondition initial_condition() const;

  /// Builds every derived object once; throws ConfigError naming the bad field.
  void validate() const;
};

/// Sets one key from its textual value. Throws ConfigError on unknown keys
/// or unparsable values.
void set_field(RunConfig& cfg, std::string_view key, std::string_view value);

/// Flat "key = value" text; '#' starts a comment.
RunConfig parse_config(std::string_view text);
std::string format_config(const RunConfig& cfg);

/// Throws ConfigError("config", ...) when the file cannot be read.
RunConfig load_config(const std::filesystem::path& path);

/// Shortest round-trip decimal form of a double.
std::string format_double(double x);

} // namespace frsne
