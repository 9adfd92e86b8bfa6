#include "fracgs/config.hpp"

#include <algorithm>
#include <cctype>
#include <istream>

#include "fracgs/error.hpp"

namespace fracgs {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& key, const std::string& message) {
  throw Error(ErrorCode::Config, key + ": " + message);
}

double as_double(const ConfigMap& m, const std::string& key) {
  const std::string& v = m.at(key);
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) fail(key, "expected a number, got '" + v + "'");
    return d;
  } catch (const std::logic_error&) {
    fail(key, "expected a number, got '" + v + "'");
  }
}

long long as_int(const ConfigMap& m, const std::string& key) {
  const std::string& v = m.at(key);
  try {
    std::size_t used = 0;
    const long long i = std::stoll(v, &used);
    if (used != v.size()) fail(key, "expected an integer, got '" + v + "'");
    return i;
  } catch (const std::logic_error&) {
    fail(key, "expected an integer, got '" + v + "'");
  }
}

bool as_bool(const ConfigMap& m, const std::string& key) {
  std::string v = m.at(key);
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  fail(key, "expected true or false, got '" + m.at(key) + "'");
}

void require_known(const std::string& key) {
  if (config_defaults().count(key) == 0) fail(key, "unknown configuration key");
}

}  // namespace

const ConfigMap& config_defaults() {
  static const ConfigMap defaults = {
      {"L", "64"},
      {"N", "4096"},
      {"alpha", "0.75"},
      {"validation", "false"},
      {"p", "3"},
      {"theta", "4"},
      {"p0", "3.5"},
      {"a.kind", "gaussian"},
      {"a.amplitude", "0.5"},
      {"a.width", "1"},
      {"autonomous", "true"},
      {"init.kind", "gaussian"},
      {"init.center", "0"},
      {"init.width", "2"},
      {"init.amplitude", "1"},
      {"init.file", ""},
      {"tau", "0.5"},
      {"max_iters", "5000"},
      {"residual_tol", "1e-6"},
      {"recentre", "true"},
      {"vanishing_radius", "1"},
      {"seed", "12345"},
      {"sensitivity", "true"},
      {"candidates", "20"},
      {"fiber.sigma_min", "1e-3"},
      {"fiber.sigma_max", "1e3"},
      {"fiber.n", "121"},
      {"mp.nodes", "25"},
      {"mp.sweeps", "0"},
      {"mp.endpoint_scale", "2"},
      {"hyp.t_min", "-10"},
      {"hyp.t_max", "10"},
      {"hyp.xi_min", "-5"},
      {"hyp.xi_max", "5"},
      {"hyp.n_samples", "64"},
  };
  return defaults;
}

ConfigMap parse_config(std::istream& in, const std::string& source) {
  ConfigMap out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::Config,
                  source + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    require_known(key);
    if (out.count(key) != 0) {
      fail(key, "given twice (" + source + ":" + std::to_string(line_no) + ")");
    }
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

void apply_override(ConfigMap& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw Error(ErrorCode::Config, "override '" + assignment + "' must look like key=value");
  }
  const std::string key = trim(assignment.substr(0, eq));
  require_known(key);
  config[key] = trim(assignment.substr(eq + 1));
}

RunSettings resolve_settings(const ConfigMap& given) {
  ConfigMap m = config_defaults();
  for (const auto& [k, v] : given) {
    require_known(k);
    m[k] = v;
  }

  RunSettings s;
  SolveConfig& c = s.solve;
  c.half_width = as_double(m, "L");
  c.n_points = as_int(m, "N");
  c.alpha = as_double(m, "alpha");
  c.order_mode = as_bool(m, "validation") ? OrderMode::validation : OrderMode::solver;
  c.spec.p = as_double(m, "p");
  c.spec.theta = as_double(m, "theta");
  c.spec.p0 = as_double(m, "p0");
  try {
    c.spec.a.kind = parse_perturbation_kind(m.at("a.kind"));
  } catch (const Error& e) {
    fail("a.kind", e.what());
  }
  c.spec.a.amplitude = as_double(m, "a.amplitude");
  c.spec.a.width = as_double(m, "a.width");
  c.autonomous = as_bool(m, "autonomous");

  const std::string& init_kind = m.at("init.kind");
  if (init_kind == "gaussian") {
    c.init.kind = InitKind::gaussian;
  } else if (init_kind == "custom") {
    c.init.kind = InitKind::custom;
    if (m.at("init.file").empty()) fail("init.file", "required when init.kind = custom");
  } else {
    fail("init.kind", "must be gaussian or custom, got '" + init_kind + "'");
  }
  c.init.center = as_double(m, "init.center");
  c.init.width = as_double(m, "init.width");
  c.init.amplitude = as_double(m, "init.amplitude");
  c.step = as_double(m, "tau");
  c.max_iters = static_cast<int>(as_int(m, "max_iters"));
  c.residual_tol = as_double(m, "residual_tol");
  c.recentre = as_bool(m, "recentre");
  c.vanishing_radius = as_double(m, "vanishing_radius");

  const long long seed = as_int(m, "seed");
  if (seed < 0) fail("seed", "must be nonnegative");
  s.seed = static_cast<std::uint64_t>(seed);
  s.sensitivity = as_bool(m, "sensitivity");
  s.candidates = static_cast<int>(as_int(m, "candidates"));
  if (s.candidates < 0) fail("candidates", "must be nonnegative");

  s.fiber_sigma_min = as_double(m, "fiber.sigma_min");
  s.fiber_sigma_max = as_double(m, "fiber.sigma_max");
  s.fiber_points = static_cast<int>(as_int(m, "fiber.n"));
  if (!(s.fiber_sigma_min > 0.0)) fail("fiber.sigma_min", "must be positive");
  if (!(s.fiber_sigma_max > s.fiber_sigma_min)) fail("fiber.sigma_max", "must exceed fiber.sigma_min");
  if (s.fiber_points < 2) fail("fiber.n", "must be at least 2");

  s.mp_nodes = static_cast<int>(as_int(m, "mp.nodes"));
  s.mp_sweeps = static_cast<int>(as_int(m, "mp.sweeps"));
  s.mp_endpoint_scale = as_double(m, "mp.endpoint_scale");
  if (s.mp_nodes < 3) fail("mp.nodes", "must be at least 3");
  if (s.mp_sweeps < 0) fail("mp.sweeps", "must be nonnegative");
  if (!(s.mp_endpoint_scale > 0.0)) fail("mp.endpoint_scale", "must be positive");

  s.hypothesis_box.t_min = as_double(m, "hyp.t_min");
  s.hypothesis_box.t_max = as_double(m, "hyp.t_max");
  s.hypothesis_box.xi_min = as_double(m, "hyp.xi_min");
  s.hypothesis_box.xi_max = as_double(m, "hyp.xi_max");
  s.hypothesis_box.n_samples = static_cast<int>(as_int(m, "hyp.n_samples"));
  if (s.hypothesis_box.n_samples < 2) fail("hyp.n_samples", "must be at least 2");
  if (!(s.hypothesis_box.t_max > s.hypothesis_box.t_min)) fail("hyp.t_max", "must exceed hyp.t_min");
  if (!(s.hypothesis_box.xi_max > s.hypothesis_box.xi_min)) fail("hyp.xi_max", "must exceed hyp.xi_min");

  try {
    (void)c.grid();
  } catch (const Error& e) {
    fail(e.code() == ErrorCode::NonPositiveL ? "L" : "N", e.what());
  }
  try {
    (void)c.order();
  } catch (const Error& e) {
    fail("alpha", e.what());
  }
  const auto violations = c.spec.invariant_violations();
  if (!violations.empty()) {
    const std::string& v = violations.front();
    fail(v.substr(0, v.find(' ')), v);
  }
  if (c.init.kind == InitKind::gaussian) {
    c.validate();
  } else {
    if (!(c.step > 0.0 && c.step <= 1.0)) fail("tau", "step must lie in (0, 1]");
    if (!(c.residual_tol >= 1e-12)) fail("residual_tol", "must be at least 1e-12");
    if (c.max_iters < 1) fail("max_iters", "must be at least 1");
    if (!(c.vanishing_radius > 0.0)) fail("vanishing_radius", "must be positive");
  }

  s.resolved = std::move(m);
  return s;
}

}  // namespace fracgs
