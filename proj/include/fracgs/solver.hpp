#pragma once

#include <Eigen/Dense>

#include <optional>
#include <utility>
#include <vector>

#include "fracgs/fracops.hpp"
#include "fracgs/nonlinearity.hpp"
#include "fracgs/spectral_field.hpp"
#include "fracgs/variational.hpp"

namespace fracgs {

enum class InitKind { gaussian, custom };

struct InitialGuess {
  InitKind kind = InitKind::gaussian;
  double center = 0.0;
  double width = 2.0;
  double amplitude = 1.0;
  std::optional<Eigen::VectorXd> values;  // custom: one value per grid point
};

struct SolveConfig {
  double half_width = 64.0;
  Eigen::Index n_points = 4096;
  double alpha = 0.75;
  OrderMode order_mode = OrderMode::solver;
  NonlinearitySpec spec;
  bool autonomous = true;
  InitialGuess init;
  double step = 0.5;
  int max_iters = 5000;
  double residual_tol = 1e-6;
  bool recentre = true;
  double vanishing_radius = 1.0;

  /// Throws Config / InvalidOrder / OddN / NonPositiveL on invalid settings.
  void validate() const;
  Grid1D grid() const;
  FracOrder order() const { return FracOrder(alpha, order_mode); }
};

/// amplitude * exp(-((t - center) / width)^2), or the custom samples.
SpectralField initial_field(const SolveConfig& config, const Grid1D& grid);

struct VanishingProfile {
  std::vector<std::pair<double, double>> profile;  // (y, int_{y-r}^{y+r} u^2)
  double max_mass = 0.0;
  double argmax_y = 0.0;
  Eigen::Index argmax_index = 0;
};

/// Sliding-window L^2 mass over every grid centre (periodic windows of
/// floor(r/h) cells on each side). Requires r >= h.
VanishingProfile vanishing_diagnostic(const SpectralField& u, double radius);

struct SolveReport {
  explicit SolveReport(SpectralField f) : field(std::move(f)) {}

  SpectralField field;
  double level = 0.0;
  double final_residual = 0.0;
  double nehari_residual = 0.0;
  std::vector<double> residual_history;
  std::vector<double> sigma_history;
  std::vector<double> energy_history;  // energy of each accepted iterate
  int iterations = 0;
  int rejected_steps = 0;
  bool converged = false;
  VanishingProfile vanishing;
  double recentred_shift = 0.0;
  // ||u_k||_a^2 <= (I(u_k) + 1 + ||u_k||_a) / (1/2 - 1/theta) on every iterate
  bool bounded = true;
  // vanishing alternative: the final field carries no window mass
  bool vanished = false;
};

/// Preconditioned descent on the Nehari manifold:
///   u_{k+1} = nehari_project(u_k - tau K^-1 I'(u_k)),
/// halving tau whenever the energy would increase. Throws Diverged when tau
/// drops below 1e-8 and NoPositivePart if the initial field is <= 0.
SolveReport solve_ground_state(const SolveConfig& config);

struct MountainPassResult {
  double path_max_energy = 0.0;  // max of I along the piecewise-linear path
  double node_max_energy = 0.0;  // max of I over the nodes
  std::vector<double> node_energies;
  std::vector<double> initial_node_energies;
  double endpoint_scale = 0.0;
  int max_node = 0;
};

/// Path 0 -> e = scale * u_init discretised with n_nodes nodes (endpoints
/// included and pinned), relaxed by n_deform sweeps of preconditioned
/// descent on interior nodes followed by equal-arclength redistribution.
/// The scale is doubled until I(e) < 0 (EndpointNotNegative beyond 1e6).
MountainPassResult mountain_pass_path(const SolveConfig& config, double endpoint_scale,
                                      int n_nodes, int n_deform);

struct LevelComparison {
  double c = 0.0;       // perturbed level
  double c_bar = 0.0;   // autonomous level
  double gap = 0.0;     // c_bar - c
  bool strict = false;  // gap > 10 * residual_tol
  // Nehari projection of the autonomous ground state under the perturbed functional.
  double one_shot_level = 0.0;
  double one_shot_sigma = 0.0;
  bool one_shot_below = false;
  SolveReport perturbed;
  SolveReport autonomous;
};

LevelComparison compare_levels(const SolveConfig& config);

}  // namespace fracgs
