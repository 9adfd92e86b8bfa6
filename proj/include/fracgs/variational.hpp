#pragma once

#include <Eigen/Dense>

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fracgs/fracops.hpp"
#include "fracgs/nonlinearity.hpp"
#include "fracgs/spectral_field.hpp"

namespace fracgs {

// I(u) = 1/2 int (|-inf D^a u|^2 + u^2) - int F(t, u). With `autonomous`
// set, F is replaced by the autonomous primitive (a == 0).
struct EnergyBreakdown {
  double quadratic = 0.0;
  double potential = 0.0;
  double total = 0.0;
};

EnergyBreakdown energy(const SpectralField& u, const NonlinearitySpec& spec, FracOrder alpha,
                       bool autonomous);

struct Gradient {
  SpectralField raw_residual;      // K u - f(t, u), K = |w|^(2a) + 1
  SpectralField precond_gradient;  // K^-1 (K u - f(t, u)), the H^a Riesz representative
  double residual_norm = 0.0;      // ||precond_gradient||_a
};

Gradient gradient(const SpectralField& u, const NonlinearitySpec& spec, FracOrder alpha,
                  bool autonomous);

struct FiberScan {
  std::vector<std::pair<double, double>> samples;  // (sigma, psi(sigma))
  int derivative_sign_changes = 0;
  int plus_to_minus = 0;
};

/// psi(sigma) = I(sigma u) sampled on `sigmas` (sigma >= 0).
FiberScan fiber_map(const SpectralField& u, const NonlinearitySpec& spec, FracOrder alpha,
                    std::span<const double> sigmas, bool autonomous = false);

struct NehariResult {
  double sigma = 0.0;
  SpectralField projected;
  double constraint_residual = 0.0;  // I'(su)[su] / ||su||_a^2
  double energy = 0.0;
  EnergyBreakdown breakdown;
};

/// Unique sigma > 0 with sigma u on the Nehari manifold, i.e. the root of
///   g(sigma) = ||u||_a^2 - int f(t, sigma u) u / sigma,
/// which is decreasing by (f4). Throws NoPositivePart if u <= 0 and
/// BracketFailure if the root is not bracketed below 1e12.
NehariResult nehari_project(const SpectralField& u, const NonlinearitySpec& spec,
                            FracOrder alpha, bool autonomous);

struct LevelEstimate {
  double level = 0.0;
  int argmin_index = -1;
  std::vector<std::pair<int, std::string>> failures;
};

/// Min over candidates of the energy of their Nehari projection: an upper
/// bound for the ground-state level.
LevelEstimate estimate_level(const NonlinearitySpec& spec, FracOrder alpha,
                             std::span<const SpectralField> candidates, bool autonomous);

}  // namespace fracgs
