#include "fracgs/conformance.hpp"

#include <algorithm>
#include <cmath>

#include "fracgs/fracops.hpp"

namespace fracgs {
namespace {

IdentityCheck make(std::string name, double alpha, double residual, double tol) {
  return {std::move(name), alpha, residual, tol, residual <= tol};
}

double l2_distance(const SpectralField& a, const SpectralField& b) { return lp_norm(a - b, 2.0); }

}  // namespace

std::vector<IdentityCheck> operator_identity_checks(const Grid1D& grid, double alpha) {
  std::vector<IdentityCheck> out;
  const FracOrder order(alpha, OrderMode::validation);

  const SpectralField gauss = SpectralField::sample(grid, [](double t) { return std::exp(-t * t); });
  const SpectralField odd =
      SpectralField::sample(grid, [](double t) { return t * std::exp(-t * t); });

  {
    const SpectralField back = transform(transform(gauss, Direction::forward), Direction::inverse);
    const SpectralField round = SpectralField::from_spectrum(grid, gauss.spectrum());
    const double err = std::max(l2_distance(back, gauss), l2_distance(round, gauss));
    out.push_back(make("transform_roundtrip", alpha, err / lp_norm(gauss, 2.0), 1e-12));
  }
  {
    const double a = lp_norm(gauss, 2.0);
    out.push_back(make("plancherel", alpha, std::abs(a - spectral_l2_norm(gauss)) / a, 1e-12));
  }
  {
    const MultiplierSymbol left{SymbolKind::left_deriv, alpha};
    const MultiplierSymbol right{SymbolKind::right_deriv, alpha};
    double worst = 0.0;
    for (Eigen::Index m = 1; m < grid.nyquist_index(); ++m) {
      const double w = grid.frequency(m);
      const std::complex<double> prod = left(w) * right(w);
      const double expected = std::pow(w, 2.0 * alpha);
      worst = std::max({worst, std::abs(prod.imag()) / expected,
                        std::abs(prod.real() - expected) / expected});
    }
    out.push_back(make("symbol_branch", alpha, worst, 1e-14));
  }
  {
    const SpectralField composed = composed_operator(gauss, order);
    const SpectralField chained = fractional_derivative(
        fractional_derivative(gauss, order, Side::left), order, Side::right);
    out.push_back(make("composed_vs_right_left", alpha,
                       l2_distance(composed, chained) / std::max(1.0, lp_norm(composed, 2.0)),
                       1e-10));
  }
  for (Side side : {Side::left, Side::right}) {
    const SpectralField back =
        fractional_derivative(fractional_integral(odd, order, side), order, side);
    out.push_back(make(side == Side::left ? "left_inverse_left" : "left_inverse_right", alpha,
                       l2_distance(back, odd), 1e-10));
  }
  {
    const HAlphaNorm n = h_alpha_norm(gauss, order);
    out.push_back(make("seminorm_equivalence", alpha,
                       std::abs(n.seminorm - n.time_domain_seminorm) / (1.0 + n.seminorm), 1e-10));
  }
  {
    const SpectralField d = fractional_derivative(gauss, FracOrder(1.0, OrderMode::validation),
                                                  Side::left);
    double worst = 0.0;
    for (Eigen::Index j = 0; j < grid.size(); ++j) {
      const double t = grid.point(j);
      worst = std::max(worst, std::abs(d.values()[j] + 2.0 * t * std::exp(-t * t)));
    }
    out.push_back(make("classical_limit", 1.0, worst, 1e-8));
  }
  return out;
}

}  // namespace fracgs
