#include "fracgs/fracops.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fracgs/error.hpp"

namespace fracgs {
namespace {

void check_order_range(double alpha, double lo, bool lo_open, double hi, bool hi_open,
                       const char* what) {
  const bool ok = (lo_open ? alpha > lo : alpha >= lo) && (hi_open ? alpha < hi : alpha <= hi);
  if (!ok || !std::isfinite(alpha)) {
    throw Error(ErrorCode::InvalidOrder, std::string("alpha = ") + std::to_string(alpha) +
                                             " outside " + what);
  }
}

MultiplierSymbol derivative_symbol(FracOrder alpha, Side side) {
  return {side == Side::left ? SymbolKind::left_deriv : SymbolKind::right_deriv, alpha.value()};
}

}  // namespace

FracOrder::FracOrder(double alpha, OrderMode mode) : alpha_(alpha), mode_(mode) {
  if (mode == OrderMode::solver) {
    check_order_range(alpha, 0.5, true, 1.0, true, "(1/2, 1)");
  } else {
    check_order_range(alpha, 0.0, true, 1.0, false, "(0, 1]");
  }
}

std::complex<double> MultiplierSymbol::operator()(double w) const {
  const double magnitude = std::abs(w);
  switch (kind) {
    case SymbolKind::composed:
      return std::pow(magnitude, 2.0 * alpha);
    case SymbolKind::resolvent:
      return 1.0 / (std::pow(magnitude, 2.0 * alpha) + 1.0);
    default:
      break;
  }
  if (w == 0.0) return 0.0;
  const bool integral = kind == SymbolKind::left_int || kind == SymbolKind::right_int;
  const bool right = kind == SymbolKind::right_deriv || kind == SymbolKind::right_int;
  const double exponent = integral ? -alpha : alpha;
  // (iw)^e and (-iw)^e on the principal branch.
  const double sign = (w > 0.0) == !right ? 1.0 : -1.0;
  return std::polar(std::pow(magnitude, exponent), exponent * sign * std::numbers::pi / 2.0);
}

Eigen::VectorXcd symbol_values(const Grid1D& grid, const MultiplierSymbol& symbol) {
  Eigen::VectorXcd out(grid.size());
  for (Eigen::Index m = 0; m < grid.size(); ++m) out[m] = symbol(grid.frequency(m));
  if (!symbol.is_real_even()) out[grid.nyquist_index()] = 0.0;
  return out;
}

double spectral_tail_mass(const SpectralField& u) {
  const Eigen::Index n = u.size();
  const double total = u.spectrum().squaredNorm();
  if (total == 0.0) return 0.0;
  double tail = 0.0;
  for (Eigen::Index m = n / 4; m <= n - n / 4; ++m) tail += std::norm(u.spectrum()[m]);
  return tail / total;
}

SpectralField apply_symbol(const SpectralField& u, const MultiplierSymbol& symbol,
                           const OpOptions& options) {
  const Grid1D& grid = u.grid();
  const double tail = spectral_tail_mass(u);
  const bool warn = tail > kTailMassLimit;
  if (warn && options.strict) {
    throw Error(ErrorCode::SpectralTail,
                "spectral tail mass " + std::to_string(tail) + " exceeds 1e-6");
  }

  Eigen::VectorXcd product = u.spectrum().cwiseProduct(symbol_values(grid, symbol));

  // The anti-Hermitian part of the product is the spectrum of i*Im(result).
  const Eigen::Index n = grid.size();
  double anti = std::norm(product[0].imag()) + std::norm(product[n / 2].imag());
  for (Eigen::Index m = 1; m < n / 2; ++m) {
    anti += 2.0 * std::norm(0.5 * (product[m] - std::conj(product[n - m])));
  }
  const double imag_residue = std::sqrt(anti / (2.0 * grid.half_width()));
  const double scale = lp_norm(u, 2.0);
  if (imag_residue > 1e-10 * std::max(scale, 1e-300) && imag_residue > 0.0) {
    throw Error(ErrorCode::InvalidInput,
                "multiplier produced a non-real field (imaginary residue " +
                    std::to_string(imag_residue) + ")");
  }
  if (options.diagnostics != nullptr) {
    options.diagnostics->tail_mass = tail;
    options.diagnostics->imag_residue = imag_residue;
    options.diagnostics->tail_warning = warn;
  }
  return SpectralField::from_spectrum(grid, product);
}

SpectralField fractional_derivative(const SpectralField& u, FracOrder alpha, Side side,
                                    const OpOptions& options) {
  return apply_symbol(u, derivative_symbol(alpha, side), options);
}

SpectralField fractional_integral(const SpectralField& u, FracOrder alpha, Side side,
                                  const OpOptions& options) {
  const double mean = std::abs(u.spectrum()[0]) / (2.0 * u.grid().half_width());
  const double rms = lp_norm(u, 2.0) / std::sqrt(2.0 * u.grid().half_width());
  if (mean > 1e-10 * rms) {
    throw Error(ErrorCode::ZeroModeSingular,
                "fractional integral needs a zero-mean field, mean = " + std::to_string(mean));
  }
  const SymbolKind kind = side == Side::left ? SymbolKind::left_int : SymbolKind::right_int;
  return apply_symbol(u, {kind, alpha.value()}, options);
}

SpectralField composed_operator(const SpectralField& u, FracOrder alpha,
                                const OpOptions& options) {
  return apply_symbol(u, {SymbolKind::composed, alpha.value()}, options);
}

SpectralField gl_oracle(const SpectralField& u, FracOrder alpha, Side side) {
  const Grid1D& grid = u.grid();
  const Eigen::Index n = grid.size();
  const Eigen::VectorXd& values = u.values();
  const double peak = values.cwiseAbs().maxCoeff();
  const double margin_edge = 0.75 * grid.half_width();
  for (Eigen::Index j = 0; j < n; ++j) {
    if (std::abs(grid.point(j)) > margin_edge && std::abs(values[j]) > 1e-14 * peak) {
      throw Error(ErrorCode::SupportMargin,
                  "field is not supported inside |t| <= 3L/4 (value " +
                      std::to_string(values[j]) + " at t = " + std::to_string(grid.point(j)) +
                      ")");
    }
  }

  // (-1)^k binom(a, k) by the recurrence w_k = w_{k-1} (1 - (a + 1) / k).
  const double a = alpha.value();
  std::vector<double> weights{1.0};
  weights.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index k = 1; k < n; ++k) {
    const double w = weights.back() * (1.0 - (a + 1.0) / static_cast<double>(k));
    if (std::abs(w) < 1e-14) break;
    weights.push_back(w);
  }
  const auto n_weights = static_cast<Eigen::Index>(weights.size());

  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double acc = 0.0;
    if (side == Side::left) {
      const Eigen::Index kmax = std::min(j + 1, n_weights);
      for (Eigen::Index k = 0; k < kmax; ++k) acc += weights[k] * values[j - k];
    } else {
      const Eigen::Index kmax = std::min(n - j, n_weights);
      for (Eigen::Index k = 0; k < kmax; ++k) acc += weights[k] * values[j + k];
    }
    out[j] = acc;
  }
  out *= std::pow(grid.spacing(), -a);
  return SpectralField::from_values(grid, std::move(out));
}

double h_alpha_norm_squared(const SpectralField& u, double alpha) {
  const Eigen::VectorXd& w = u.grid().frequencies();
  double acc = 0.0;
  for (Eigen::Index m = 0; m < u.size(); ++m) {
    acc += (std::pow(std::abs(w[m]), 2.0 * alpha) + 1.0) * std::norm(u.spectrum()[m]);
  }
  return acc / (2.0 * u.grid().half_width());
}

HAlphaNorm h_alpha_norm(const SpectralField& u, FracOrder alpha) {
  const Eigen::VectorXd& w = u.grid().frequencies();
  double semi_sq = 0.0;
  for (Eigen::Index m = 0; m < u.size(); ++m) {
    semi_sq += std::pow(std::abs(w[m]), 2.0 * alpha.value()) * std::norm(u.spectrum()[m]);
  }
  semi_sq /= 2.0 * u.grid().half_width();

  HAlphaNorm out;
  out.seminorm = std::sqrt(semi_sq);
  const double l2 = lp_norm(u, 2.0);
  out.norm = std::sqrt(l2 * l2 + semi_sq);
  out.time_domain_seminorm = lp_norm(fractional_derivative(u, alpha, Side::left), 2.0);
  return out;
}

double sobolev_embedding_probe(std::span<const SpectralField> samples, FracOrder alpha) {
  if (!(alpha.value() > 0.5)) {
    throw Error(ErrorCode::InvalidOrder, "embedding into C needs alpha > 1/2");
  }
  if (samples.empty()) throw Error(ErrorCode::InvalidInput, "no samples given");
  double best = 0.0;
  for (const SpectralField& u : samples) {
    const double norm = std::sqrt(h_alpha_norm_squared(u, alpha.value()));
    if (!(norm > 0.0)) throw Error(ErrorCode::InvalidInput, "embedding probe sample is zero");
    best = std::max(best, lp_norm_inf(u) / norm);
  }
  return best;
}

}  // namespace fracgs
