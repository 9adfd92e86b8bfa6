#include "fracgs/variational.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fracgs/error.hpp"

namespace fracgs {
namespace {

void require_energy_order(FracOrder alpha) {
  if (!(alpha.value() > 0.5)) {
    throw Error(ErrorCode::InvalidOrder, "energy functional needs alpha in (1/2, 1]");
  }
}

const NonlinearitySpec& effective(const NonlinearitySpec& spec, bool autonomous,
                                  NonlinearitySpec& storage) {
  if (!autonomous) return spec;
  storage = spec.autonomous_part();
  return storage;
}

Eigen::VectorXd k_symbol(const Grid1D& grid, double alpha) {
  Eigen::VectorXd k(grid.size());
  for (Eigen::Index m = 0; m < grid.size(); ++m) {
    k[m] = std::pow(std::abs(grid.frequency(m)), 2.0 * alpha) + 1.0;
  }
  return k;
}

// g(sigma) = ||u||_a^2 - int f(t, sigma u) u / sigma and its derivative,
// by the same rectangle rule as the energy.
struct FiberEquation {
  const SpectralField& u;
  const NonlinearitySpec& spec;
  double norm_sq = 0.0;

  double g(double sigma) const {
    const Eigen::VectorXd& t = u.grid().points();
    double acc = 0.0;
    for (Eigen::Index j = 0; j < u.size(); ++j) {
      const double v = u.values()[j];
      acc += eval_f(spec, t[j], sigma * v) * v;
    }
    return norm_sq - acc * u.grid().spacing() / sigma;
  }

  double dg(double sigma) const {
    const Eigen::VectorXd& t = u.grid().points();
    double acc = 0.0;
    for (Eigen::Index j = 0; j < u.size(); ++j) {
      const double v = u.values()[j];
      acc += eval_df(spec, t[j], sigma * v) * v * v / sigma -
             eval_f(spec, t[j], sigma * v) * v / (sigma * sigma);
    }
    return -acc * u.grid().spacing();
  }
};

}  // namespace

EnergyBreakdown energy(const SpectralField& u, const NonlinearitySpec& spec, FracOrder alpha,
                       bool autonomous) {
  require_energy_order(alpha);
  NonlinearitySpec storage;
  const NonlinearitySpec& s = effective(spec, autonomous, storage);

  EnergyBreakdown e;
  e.quadratic = 0.5 * h_alpha_norm_squared(u, alpha.value());
  const Eigen::VectorXd& t = u.grid().points();
  double acc = 0.0;
  for (Eigen::Index j = 0; j < u.size(); ++j) acc += eval_F(s, t[j], u.values()[j]);
  e.potential = acc * u.grid().spacing();
  e.total = e.quadratic - e.potential;
  return e;
}

Gradient gradient(const SpectralField& u, const NonlinearitySpec& spec, FracOrder alpha,
                  bool autonomous) {
  require_energy_order(alpha);
  NonlinearitySpec storage;
  const NonlinearitySpec& s = effective(spec, autonomous, storage);
  const Grid1D& grid = u.grid();

  Eigen::VectorXd nonlinear(u.size());
  for (Eigen::Index j = 0; j < u.size(); ++j) {
    nonlinear[j] = eval_f(s, grid.point(j), u.values()[j]);
  }
  const SpectralField f_field = SpectralField::from_values(grid, std::move(nonlinear));
  const Eigen::VectorXd k = k_symbol(grid, alpha.value());

  const Eigen::VectorXcd residual_hat =
      u.spectrum().cwiseProduct(k.cast<std::complex<double>>()) - f_field.spectrum();
  const Eigen::VectorXcd precond_hat = residual_hat.cwiseQuotient(k.cast<std::complex<double>>());

  Gradient g{SpectralField::from_spectrum(grid, residual_hat),
             SpectralField::from_spectrum(grid, precond_hat), 0.0};
  g.residual_norm = std::sqrt(h_alpha_norm_squared(g.precond_gradient, alpha.value()));
  return g;
}

FiberScan fiber_map(const SpectralField& u, const NonlinearitySpec& spec, FracOrder alpha,
                    std::span<const double> sigmas, bool autonomous) {
  require_energy_order(alpha);
  NonlinearitySpec storage;
  const NonlinearitySpec& s = effective(spec, autonomous, storage);
  const double norm_sq = h_alpha_norm_squared(u, alpha.value());
  const Eigen::VectorXd& t = u.grid().points();

  FiberScan scan;
  scan.samples.reserve(sigmas.size());
  for (double sigma : sigmas) {
    if (!(sigma >= 0.0)) throw Error(ErrorCode::InvalidInput, "fiber map needs sigma >= 0");
    double potential = 0.0;
    for (Eigen::Index j = 0; j < u.size(); ++j) potential += eval_F(s, t[j], sigma * u.values()[j]);
    potential *= u.grid().spacing();
    scan.samples.emplace_back(sigma, 0.5 * sigma * sigma * norm_sq - potential);
  }

  int last_sign = 0;
  for (std::size_t i = 1; i < scan.samples.size(); ++i) {
    const double d = scan.samples[i].second - scan.samples[i - 1].second;
    const int sign = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
    if (sign == 0) continue;
    if (last_sign != 0 && sign != last_sign) {
      ++scan.derivative_sign_changes;
      if (last_sign > 0) ++scan.plus_to_minus;
    }
    last_sign = sign;
  }
  return scan;
}

NehariResult nehari_project(const SpectralField& u, const NonlinearitySpec& spec,
                            FracOrder alpha, bool autonomous) {
  require_energy_order(alpha);
  if (!has_positive_part(u)) {
    throw Error(ErrorCode::NoPositivePart, "field has no positive part; no Nehari maximizer");
  }
  NonlinearitySpec storage;
  const NonlinearitySpec& s = effective(spec, autonomous, storage);
  const FiberEquation d{u, s, h_alpha_norm_squared(u, alpha.value())};

  double lo = 1e-6;
  double hi = 1.0;
  constexpr double kMaxSigma = 1e12;
  while (d.g(lo) <= 0.0) {
    lo *= 1e-3;
    if (lo < 1.0 / kMaxSigma) throw Error(ErrorCode::BracketFailure, "cannot bracket sigma from below");
  }
  while (d.g(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > kMaxSigma) {
      throw Error(ErrorCode::BracketFailure, "Nehari bracket expansion exceeded 1e12");
    }
  }

  while ((hi - lo) > 1e-3 * hi) {
    const double mid = 0.5 * (lo + hi);
    (d.g(mid) > 0.0 ? lo : hi) = mid;
  }

  double sigma = 0.5 * (lo + hi);
  const double target = 1e-12 * d.norm_sq;
  for (int iter = 0; iter < 100 && std::abs(d.g(sigma)) > target; ++iter) {
    const double gs = d.g(sigma);
    (gs > 0.0 ? lo : hi) = sigma;
    double next = sigma - gs / d.dg(sigma);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == sigma) break;
    sigma = next;
  }

  NehariResult r{sigma, sigma * u, 0.0, 0.0, {}};
  r.constraint_residual = d.g(sigma) / d.norm_sq;
  r.breakdown = energy(r.projected, s, alpha, false);
  r.energy = r.breakdown.total;
  return r;
}

LevelEstimate estimate_level(const NonlinearitySpec& spec, FracOrder alpha,
                             std::span<const SpectralField> candidates, bool autonomous) {
  LevelEstimate est;
  est.level = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    try {
      const NehariResult r = nehari_project(candidates[i], spec, alpha, autonomous);
      if (r.energy < est.level) {
        est.level = r.energy;
        est.argmin_index = static_cast<int>(i);
      }
    } catch (const Error& e) {
      est.failures.emplace_back(static_cast<int>(i), e.what());
    }
  }
  return est;
}

}  // namespace fracgs
