#include "fracgs/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fracgs/error.hpp"

namespace fracgs {
namespace {

void config_error(const std::string& key, const std::string& message) {
  throw Error(ErrorCode::Config, key + ": " + message);
}

bool translation_invariant(const SolveConfig& config) {
  return config.autonomous || config.spec.a.vanishes();
}

double h_alpha_inner(const SpectralField& a, const SpectralField& b, double alpha) {
  const Grid1D& grid = a.grid();
  double acc = 0.0;
  for (Eigen::Index m = 0; m < grid.size(); ++m) {
    const double k = std::pow(std::abs(grid.frequency(m)), 2.0 * alpha) + 1.0;
    acc += k * (a.spectrum()[m] * std::conj(b.spectrum()[m])).real();
  }
  return acc / (2.0 * grid.half_width());
}

double potential_along(const SpectralField& a, const SpectralField& b, double s,
                       const NonlinearitySpec& spec) {
  const Eigen::VectorXd& t = a.grid().points();
  double acc = 0.0;
  for (Eigen::Index j = 0; j < a.size(); ++j) {
    acc += eval_F(spec, t[j], (1.0 - s) * a.values()[j] + s * b.values()[j]);
  }
  return acc * a.grid().spacing();
}

// max over s in [0, 1] of I((1 - s) a + s b): the quadratic part is an exact
// quadratic in s, the potential is sampled then refined by golden section.
double segment_max(const SpectralField& a, const SpectralField& b, const NonlinearitySpec& spec,
                   double alpha) {
  const double qa = h_alpha_norm_squared(a, alpha);
  const double qb = h_alpha_norm_squared(b, alpha);
  const double qab = h_alpha_inner(a, b, alpha);
  auto value = [&](double s) {
    const double quad = 0.5 * ((1.0 - s) * (1.0 - s) * qa + 2.0 * s * (1.0 - s) * qab + s * s * qb);
    return quad - potential_along(a, b, s, spec);
  };

  constexpr int kSamples = 32;
  int best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int k = 0; k <= kSamples; ++k) {
    const double v = value(static_cast<double>(k) / kSamples);
    if (v > best_value) {
      best_value = v;
      best = k;
    }
  }
  double lo = std::max(0, best - 1) / static_cast<double>(kSamples);
  double hi = std::min(kSamples, best + 1) / static_cast<double>(kSamples);
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = value(x1);
  double f2 = value(x2);
  for (int it = 0; it < 60; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = value(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = value(x1);
    }
  }
  return std::max({best_value, f1, f2});
}

// Redistributes interior nodes to equal H^a arclength along the polygon.
void redistribute(std::vector<SpectralField>& nodes, double alpha) {
  const std::size_t n = nodes.size();
  std::vector<double> arc(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    arc[i] = arc[i - 1] + std::sqrt(h_alpha_norm_squared(nodes[i] - nodes[i - 1], alpha));
  }
  const double total = arc.back();
  if (!(total > 0.0)) return;
  std::vector<SpectralField> out;
  out.reserve(n);
  out.push_back(nodes.front());
  std::size_t seg = 0;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const double target = total * static_cast<double>(k) / static_cast<double>(n - 1);
    while (seg + 2 < n && arc[seg + 1] < target) ++seg;
    const double len = arc[seg + 1] - arc[seg];
    const double s = len > 0.0 ? std::clamp((target - arc[seg]) / len, 0.0, 1.0) : 0.0;
    out.push_back((1.0 - s) * nodes[seg] + s * nodes[seg + 1]);
  }
  out.push_back(nodes.back());
  nodes = std::move(out);
}

}  // namespace

void SolveConfig::validate() const {
  (void)grid();
  (void)order();
  spec.require_valid();
  if (!(step > 0.0 && step <= 1.0)) config_error("tau", "step must lie in (0, 1]");
  if (!(residual_tol >= 1e-12)) config_error("residual_tol", "must be at least 1e-12");
  if (max_iters < 1) config_error("max_iters", "must be at least 1");
  if (!(vanishing_radius > 0.0)) config_error("vanishing_radius", "must be positive");
  if (init.kind == InitKind::gaussian && !(init.width > 0.0)) {
    config_error("init.width", "must be positive");
  }
  if (init.kind == InitKind::custom) {
    if (!init.values || init.values->size() != n_points) {
      config_error("init.file", "custom initial field must have one value per grid point");
    }
  }
}

Grid1D SolveConfig::grid() const { return make_grid(half_width, n_points); }

SpectralField initial_field(const SolveConfig& config, const Grid1D& grid) {
  if (config.init.kind == InitKind::custom) {
    if (!config.init.values || config.init.values->size() != grid.size()) {
      throw Error(ErrorCode::InvalidInput, "custom initial field does not match the grid");
    }
    return SpectralField::from_values(grid, *config.init.values);
  }
  const InitialGuess& g = config.init;
  return SpectralField::sample(grid, [&](double t) {
    const double z = (t - g.center) / g.width;
    return g.amplitude * std::exp(-z * z);
  });
}

VanishingProfile vanishing_diagnostic(const SpectralField& u, double radius) {
  const Grid1D& grid = u.grid();
  const double h = grid.spacing();
  if (!(radius >= h)) {
    throw Error(ErrorCode::InvalidInput, "window radius must be at least the grid spacing");
  }
  const Eigen::Index n = grid.size();
  const Eigen::Index cells = std::min<Eigen::Index>(
      static_cast<Eigen::Index>(std::floor(radius / h + 1e-9)), (n - 1) / 2);
  const Eigen::VectorXd sq = u.values().array().square();

  VanishingProfile out;
  out.profile.reserve(static_cast<std::size_t>(n));
  out.max_mass = -1.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    double acc = 0.0;
    for (Eigen::Index k = -cells; k <= cells; ++k) acc += sq[((j + k) % n + n) % n];
    acc *= h;
    out.profile.emplace_back(grid.point(j), acc);
    if (acc > out.max_mass) {
      out.max_mass = acc;
      out.argmax_index = j;
    }
  }
  out.argmax_y = grid.point(out.argmax_index);
  return out;
}

SolveReport solve_ground_state(const SolveConfig& config) {
  config.validate();
  const Grid1D grid = config.grid();
  const FracOrder alpha = config.order();
  const NonlinearitySpec& spec = config.spec;
  const bool autonomous = config.autonomous;
  const bool may_recentre = config.recentre && translation_invariant(config);
  const double bound_factor = 0.5 - 1.0 / spec.theta;

  const SpectralField start = initial_field(config, grid);
  if (!has_positive_part(start)) {
    throw Error(ErrorCode::NoPositivePart, "initial field has no positive part");
  }
  NehariResult proj = nehari_project(start, spec, alpha, autonomous);

  SolveReport report(proj.projected);
  SpectralField u = proj.projected;
  double current = proj.energy;
  report.sigma_history.push_back(proj.sigma);
  report.energy_history.push_back(current);

  double tau = config.step;
  for (;;) {
    const Gradient g = gradient(u, spec, alpha, autonomous);
    report.residual_history.push_back(g.residual_norm);
    const double norm_sq = h_alpha_norm_squared(u, alpha.value());
    if (norm_sq > (current + 1.0 + std::sqrt(norm_sq)) / bound_factor) report.bounded = false;
    report.final_residual = g.residual_norm;
    report.nehari_residual = l2_inner(g.raw_residual, u) / norm_sq;

    if (g.residual_norm <= config.residual_tol) {
      report.converged = true;
      break;
    }
    if (report.iterations >= config.max_iters) break;

    for (;;) {
      const SpectralField candidate = u - tau * g.precond_gradient;
      if (has_positive_part(candidate)) {
        NehariResult next = nehari_project(candidate, spec, alpha, autonomous);
        if (next.energy <= current) {
          proj = std::move(next);
          break;
        }
      }
      tau *= 0.5;
      ++report.rejected_steps;
      if (tau < 1e-8) {
        throw Error(ErrorCode::Diverged,
                    "step size underflow after " + std::to_string(report.iterations) +
                        " iterations (residual " + std::to_string(g.residual_norm) + ")");
      }
    }
    u = proj.projected;
    current = proj.energy;
    tau = config.step;
    ++report.iterations;
    report.sigma_history.push_back(proj.sigma);
    report.energy_history.push_back(current);

    if (may_recentre) {
      const VanishingProfile v = vanishing_diagnostic(u, config.vanishing_radius);
      if (std::abs(v.argmax_y) > 0.25 * grid.half_width()) {
        const Eigen::Index cells = grid.size() / 2 - v.argmax_index;
        u = shift_cells(u, cells);
        current = energy(u, spec, alpha, autonomous).total;
        report.recentred_shift += static_cast<double>(cells) * grid.spacing();
        report.energy_history.back() = current;
      }
    }
  }

  report.field = u;
  report.level = energy(u, spec, alpha, autonomous).total;
  report.vanishing = vanishing_diagnostic(u, config.vanishing_radius);
  report.vanished = report.vanishing.max_mass < 1e-8;
  return report;
}

MountainPassResult mountain_pass_path(const SolveConfig& config, double endpoint_scale,
                                      int n_nodes, int n_deform) {
  config.validate();
  if (!(endpoint_scale > 0.0)) {
    throw Error(ErrorCode::InvalidInput, "endpoint scale must be positive");
  }
  if (n_nodes < 3) throw Error(ErrorCode::InvalidInput, "mountain pass path needs >= 3 nodes");
  if (n_deform < 0) throw Error(ErrorCode::InvalidInput, "number of sweeps must be >= 0");

  const Grid1D grid = config.grid();
  const FracOrder alpha = config.order();
  const NonlinearitySpec& spec = config.spec;
  const bool autonomous = config.autonomous;
  NonlinearitySpec storage = autonomous ? spec.autonomous_part() : spec;

  const SpectralField direction = initial_field(config, grid);
  if (!has_positive_part(direction)) {
    throw Error(ErrorCode::NoPositivePart, "path direction has no positive part");
  }

  MountainPassResult out;
  double scale = endpoint_scale;
  while (energy(scale * direction, spec, alpha, autonomous).total >= 0.0) {
    scale *= 2.0;
    if (scale > 1e6) {
      throw Error(ErrorCode::EndpointNotNegative, "no endpoint with negative energy below scale 1e6");
    }
  }
  out.endpoint_scale = scale;

  std::vector<SpectralField> nodes;
  nodes.reserve(static_cast<std::size_t>(n_nodes));
  for (int i = 0; i < n_nodes; ++i) {
    nodes.push_back((scale * i / (n_nodes - 1)) * direction);
  }
  for (const auto& node : nodes) {
    out.initial_node_energies.push_back(energy(node, spec, alpha, autonomous).total);
  }

  for (int sweep = 0; sweep < n_deform; ++sweep) {
    double total = 0.0;
    for (std::size_t i = 1; i < nodes.size(); ++i) {
      total += std::sqrt(h_alpha_norm_squared(nodes[i] - nodes[i - 1], alpha.value()));
    }
    const double max_move = 0.5 * total / (n_nodes - 1);
    for (std::size_t i = 1; i + 1 < nodes.size(); ++i) {
      // Nodes already below the zero level cannot carry the path maximum; moving
      // them would only let the path run down the unbounded valley.
      if (energy(nodes[i], spec, alpha, autonomous).total <= 0.0) continue;
      const Gradient g = gradient(nodes[i], spec, alpha, autonomous);
      double factor = config.step;
      const double move = factor * g.residual_norm;
      if (move > max_move) factor *= max_move / move;
      nodes[i] -= factor * g.precond_gradient;
    }
    redistribute(nodes, alpha.value());
  }

  out.node_max_energy = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double e = energy(nodes[i], spec, alpha, autonomous).total;
    out.node_energies.push_back(e);
    if (e > out.node_max_energy) {
      out.node_max_energy = e;
      out.max_node = static_cast<int>(i);
    }
  }
  out.path_max_energy = out.node_max_energy;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    out.path_max_energy =
        std::max(out.path_max_energy, segment_max(nodes[i - 1], nodes[i], storage, alpha.value()));
  }
  return out;
}

LevelComparison compare_levels(const SolveConfig& config) {
  SolveConfig perturbed_cfg = config;
  perturbed_cfg.autonomous = false;
  SolveConfig autonomous_cfg = config;
  autonomous_cfg.autonomous = true;

  LevelComparison out{0.0, 0.0, 0.0, false, 0.0, 0.0, false,
                      solve_ground_state(perturbed_cfg), solve_ground_state(autonomous_cfg)};
  out.c = out.perturbed.level;
  out.c_bar = out.autonomous.level;
  out.gap = out.c_bar - out.c;
  out.strict = out.gap > 10.0 * config.residual_tol;

  const NehariResult one_shot =
      nehari_project(out.autonomous.field, config.spec, config.order(), false);
  out.one_shot_level = one_shot.energy;
  out.one_shot_sigma = one_shot.sigma;
  out.one_shot_below = one_shot.energy < out.c_bar;
  return out;
}

}  // namespace fracgs
