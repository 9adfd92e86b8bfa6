#pragma once

#include <Eigen/Dense>

#include <complex>
#include <span>

#include "fracgs/spectral_field.hpp"

namespace fracgs {

enum class OrderMode {
  solver,      // alpha in (1/2, 1)
  validation,  // alpha in (0, 1]; alpha = 1 is the classical limit
};

// Order of the Liouville-Weyl operators.
class FracOrder {
 public:
  explicit FracOrder(double alpha, OrderMode mode = OrderMode::solver);

  double value() const { return alpha_; }
  OrderMode mode() const { return mode_; }

 private:
  double alpha_;
  OrderMode mode_;
};

enum class Side { left, right };

enum class SymbolKind { left_deriv, right_deriv, left_int, right_int, composed, resolvent };

struct MultiplierSymbol {
  SymbolKind kind;
  double alpha;

  /// Symbol at angular frequency w, principal branch
  /// (iw)^a = |w|^a exp(i a pi sign(w) / 2). Derivative symbols vanish at
  /// w = 0; integral symbols are set to 0 there (the zero mode is excluded).
  std::complex<double> operator()(double w) const;

  /// Real and even symbols (composed, resolvent) keep the Nyquist mode.
  bool is_real_even() const {
    return kind == SymbolKind::composed || kind == SymbolKind::resolvent;
  }
};

/// Symbol sampled on the grid frequencies. The Nyquist entry of complex
/// symbols is zeroed so that real fields stay real.
Eigen::VectorXcd symbol_values(const Grid1D& grid, const MultiplierSymbol& symbol);

struct OpDiagnostics {
  double tail_mass = 0.0;     // share of spectral energy at |m| >= N/4
  double imag_residue = 0.0;  // L2 norm of the discarded imaginary part
  bool tail_warning = false;
};

struct OpOptions {
  bool strict = false;  // promote the spectral tail warning to an error
  OpDiagnostics* diagnostics = nullptr;
};

inline constexpr double kTailMassLimit = 1e-6;

/// Share of the spectral energy in the upper half of the resolved band.
double spectral_tail_mass(const SpectralField& u);

/// Multiplies the spectrum by the sampled symbol and returns the real result.
/// Throws if the imaginary residue exceeds 1e-10 * ||u||.
SpectralField apply_symbol(const SpectralField& u, const MultiplierSymbol& symbol,
                           const OpOptions& options = {});

/// Left (-inf D_t^a) or right (t D_inf^a) derivative, symbol (+-iw)^a.
SpectralField fractional_derivative(const SpectralField& u, FracOrder alpha, Side side,
                                    const OpOptions& options = {});

/// Left or right Liouville-Weyl integral, symbol (+-iw)^-a. The zero mode
/// is singular, so inputs must have zero mean (ZeroModeSingular otherwise).
SpectralField fractional_integral(const SpectralField& u, FracOrder alpha, Side side,
                                  const OpOptions& options = {});

/// t D_inf^a (-inf D_t^a u), symbol |w|^(2a).
SpectralField composed_operator(const SpectralField& u, FracOrder alpha,
                                const OpOptions& options = {});

/// Grunwald-Letnikov difference sum
///   h^-a sum_k (-1)^k binom(a, k) u(t -+ k h)
/// with u extended by zero outside [-L, L). Requires |u| <= 1e-14 max|u| on
/// |t| > 3L/4 (SupportMargin otherwise).
SpectralField gl_oracle(const SpectralField& u, FracOrder alpha, Side side);

struct HAlphaNorm {
  double seminorm = 0.0;              // || |w|^a u_hat ||
  double norm = 0.0;                  // (||u||^2 + seminorm^2)^(1/2)
  double time_domain_seminorm = 0.0;  // || -inf D^a u ||_{L^2}
};

HAlphaNorm h_alpha_norm(const SpectralField& u, FracOrder alpha);

/// ||u||_a^2 computed spectrally, without the time-domain pass.
double h_alpha_norm_squared(const SpectralField& u, double alpha);

/// Max over samples of sup|u| / ||u||_a: an empirical lower bound for the
/// embedding constant of H^a into C. Requires alpha > 1/2.
double sobolev_embedding_probe(std::span<const SpectralField> samples, FracOrder alpha);

}  // namespace fracgs
