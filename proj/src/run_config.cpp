#include "frsne/run_config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace frsne {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
  text = trim(text);
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ConfigError(std::string(key), "cannot parse '" + std::string(text) + "'");
  return value;
}

std::vector<double> parse_list(std::string_view key, std::string_view text) {
  std::vector<double> out;
  text = trim(text);
  while (!text.empty()) {
    const auto comma = text.find(',');
    out.push_back(parse_number<double>(key, text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  return out;
}

std::string format_list(std::span<const double> xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += format_double(xs[i]);
  }
  return out;
}

struct Field {
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <class T>
Field number_field(T RunConfig::*member, const char* key) {
  return {[member, key](RunConfig& c, std::string_view v) { c.*member = parse_number<T>(key, v); },
          [member](const RunConfig& c) {
            if constexpr (std::is_floating_point_v<T>)
              return format_double(c.*member);
            else
              return std::to_string(c.*member);
          }};
}

Field string_field(std::string RunConfig::*member) {
  return {[member](RunConfig& c, std::string_view v) { c.*member = std::string(trim(v)); },
          [member](const RunConfig& c) { return c.*member; }};
}

// Ordered so that format_config output is stable.
const std::map<std::string, Field, std::less<>>& fields() {
  static const std::map<std::string, Field, std::less<>> table = {
      {"n_points", number_field(&RunConfig::n_points, "n_points")},
      {"r_max", number_field(&RunConfig::r_max, "r_max")},
      {"alpha", number_field(&RunConfig::alpha, "alpha")},
      {"hbar", number_field(&RunConfig::hbar, "hbar")},
      {"newton_g", number_field(&RunConfig::newton_g, "newton_g")},
      {"mass", number_field(&RunConfig::mass, "mass")},
      {"stability_factor", number_field(&RunConfig::stability_factor, "stability_factor")},
      {"max_steps", number_field(&RunConfig::max_steps, "max_steps")},
      {"window", number_field(&RunConfig::window, "window")},
      {"tol_spread", number_field(&RunConfig::tol_spread, "tol_spread")},
      {"tol_shape", number_field(&RunConfig::tol_shape, "tol_shape")},
      {"max_time", number_field(&RunConfig::max_time, "max_time")},
      {"sample_interval", number_field(&RunConfig::sample_interval, "sample_interval")},
      {"reference_radius", number_field(&RunConfig::reference_radius, "reference_radius")},
      {"initial", string_field(&RunConfig::initial)},
      {"sigma", number_field(&RunConfig::sigma, "sigma")},
      {"rect_radius", number_field(&RunConfig::rect_radius, "rect_radius")},
      {"rect_width", number_field(&RunConfig::rect_width, "rect_width")},
      {"sigma1", number_field(&RunConfig::sigma1, "sigma1")},
      {"sigma2", number_field(&RunConfig::sigma2, "sigma2")},
      {"weight", number_field(&RunConfig::weight, "weight")},
      {"out_dir", string_field(&RunConfig::out_dir)},
      {"alphas",
       {[](RunConfig& c, std::string_view v) { c.alphas = parse_list("alphas", v); },
        [](const RunConfig& c) { return format_list(c.alphas); }}},
      {"constant_r0", number_field(&RunConfig::constant_r0, "constant_r0")},
      {"threads", number_field(&RunConfig::threads, "threads")},
      {"separation", number_field(&RunConfig::separation, "separation")},
      {"direction",
       {[](RunConfig& c, std::string_view v) {
          const auto xs = parse_list("direction", v);
          if (xs.size() != 3) throw ConfigError("direction", "expected three components");
          c.direction = {xs[0], xs[1], xs[2]};
        },
        [](const RunConfig& c) { return format_list(c.direction); }}},
      {"profile", string_field(&RunConfig::profile)},
  };
  return table;
}

template <class F>
auto checked(const char* field, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(field, e.what());
  }
}

} // namespace

std::string format_double(double x) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

void set_field(RunConfig& cfg, std::string_view key, std::string_view value) {
  const auto it = fields().find(key);
  if (it == fields().end()) throw ConfigError(std::string(key), "unknown configuration key");
  it->second.set(cfg, value);
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
    set_field(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

std::string format_config(const RunConfig& cfg) {
  std::string out;
  for (const auto& [key, field] : fields()) out += key + " = " + field.get(cfg) + "\n";
  return out;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

RadialGrid RunConfig::grid() const {
  if (!(std::isfinite(r_max) && r_max > 0.0)) throw ConfigError("r_max", "must be positive and finite");
  return checked("n_points", [&] { return make_grid(n_points, r_max); });
}

PhysicsParams RunConfig::physics() const {
  return checked("alpha", [&] { return PhysicsParams::create(hbar, newton_g, mass, alpha); });
}

EvolutionConfig RunConfig::evolution(const RadialGrid& g, const PhysicsParams& p) const {
  return checked("stability_factor", [&] {
    EvolutionConfig cfg = EvolutionConfig::from_stability_factor(g, p, stability_factor);
    cfg.max_steps = max_steps;
    cfg.validate(g, p);
    return cfg;
  });
}

ConvergenceCriterion RunConfig::criterion() const {
  ConvergenceCriterion c;
  c.window = window;
  c.tol_spread = tol_spread;
  c.tol_shape = tol_shape;
  c.max_time = max_time;
  c.sample_interval = sample_interval;
  c.reference_radius = reference_radius;
  checked("convergence", [&] {
    c.validate();
    return 0;
  });
  return c;
}

InitialCondition RunConfig::initial_condition() const {
  if (initial == "gaussian") return GaussianInit{sigma};
  if (initial == "smoothed_rectangle") return SmoothedRectangleInit{rect_radius, rect_width};
  if (initial == "two_gaussian") return TwoGaussianInit{sigma1, sigma2, weight};
  throw ConfigError("initial", "expected gaussian, smoothed_rectangle or two_gaussian");
}

void RunConfig::validate() const {
  const RadialGrid g = grid();
  const PhysicsParams p = physics();
  evolution(g, p);
  criterion();
  checked("initial", [&] { return make_initial_state(g, initial_condition(), p); });
  if (out_dir.empty()) throw ConfigError("out_dir", "must not be empty");
}

} // namespace frsne
