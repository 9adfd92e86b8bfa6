#pragma once

#include <Eigen/Dense>

#include <complex>
#include <limits>

#include "fracgs/grid.hpp"

namespace fracgs {

// Transform convention (continuous Fourier transform sampled on the grid):
//
//   u_hat(w_m) = h * sum_j u(t_j) exp(-i w_m t_j)
//   u(t_j)     = 1/(2L) * sum_m u_hat(w_m) exp(i w_m t_j)
//
// so that h * sum |u|^2 == 1/(2L) * sum |u_hat|^2 (discrete Plancherel), the
// grid analogue of int |u|^2 dt = 1/(2 pi) int |u_hat|^2 dw.
Eigen::VectorXcd forward_dft(const Grid1D& grid, const Eigen::VectorXcd& values);
Eigen::VectorXcd inverse_dft(const Grid1D& grid, const Eigen::VectorXcd& spectrum);

enum class Direction { forward, inverse };

// A real sampled function together with its spectrum. Both representations
// are computed eagerly and kept consistent, so a field is immutable and can
// be shared across threads.
class SpectralField {
 public:
  /// Samples values and computes the spectrum. Throws NonFinite.
  static SpectralField from_values(Grid1D grid, Eigen::VectorXd values);

  /// Takes the Hermitian part of `spectrum` (the spectrum of the real part of
  /// its inverse) and computes the matching real values.
  static SpectralField from_spectrum(Grid1D grid, const Eigen::VectorXcd& spectrum);

  static SpectralField zero(Grid1D grid);

  template <typename Fn>
  static SpectralField sample(Grid1D grid, Fn&& fn) {
    Eigen::VectorXd values(grid.size());
    for (Eigen::Index j = 0; j < grid.size(); ++j) values[j] = fn(grid.point(j));
    return from_values(std::move(grid), std::move(values));
  }

  const Grid1D& grid() const { return grid_; }
  const Eigen::VectorXd& values() const { return values_; }
  const Eigen::VectorXcd& spectrum() const { return spectrum_; }
  Eigen::Index size() const { return values_.size(); }

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double scale);

 private:
  SpectralField(Grid1D grid, Eigen::VectorXd values, Eigen::VectorXcd spectrum)
      : grid_(std::move(grid)), values_(std::move(values)), spectrum_(std::move(spectrum)) {}

  Grid1D grid_;
  Eigen::VectorXd values_;
  Eigen::VectorXcd spectrum_;
};

inline SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
inline SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
inline SpectralField operator*(double s, SpectralField a) { return a *= s; }
inline SpectralField operator*(SpectralField a, double s) { return a *= s; }
inline SpectralField operator-(SpectralField a) { return a *= -1.0; }

/// Recomputes one representation from the other: forward refreshes the
/// spectrum from the values, inverse refreshes the values from the spectrum.
SpectralField transform(const SpectralField& field, Direction direction);

/// Rectangle-rule L^p norm (h * sum |u|^p)^(1/p) for p in [2, inf]; pass
/// infinity for the max norm.
double lp_norm(const SpectralField& field, double p);

inline double lp_norm_inf(const SpectralField& field) {
  return lp_norm(field, std::numeric_limits<double>::infinity());
}

/// h * sum u v
double l2_inner(const SpectralField& a, const SpectralField& b);

/// sqrt(1/(2L) * sum |u_hat|^2), equal to lp_norm(field, 2) by Plancherel.
double spectral_l2_norm(const SpectralField& field);

/// Integer cell translation: result(t_j) = field(t_{j - cells}) periodically.
SpectralField shift_cells(const SpectralField& field, Eigen::Index cells);

/// Positive part max(u, 0) is not identically zero.
bool has_positive_part(const SpectralField& field);

}  // namespace fracgs
