#include "fracgs/spectral_field.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <string>

#include "fracgs/error.hpp"

namespace fracgs {
namespace {

Eigen::FFT<double>& fft_engine() {
  // kissfft caches twiddles per size; one engine per thread keeps calls reentrant.
  thread_local Eigen::FFT<double> engine;
  return engine;
}

void require_same_grid(const Grid1D& a, const Grid1D& b) {
  if (!(a == b)) throw Error(ErrorCode::InvalidInput, "fields live on different grids");
}

// exp(i w_m L) = (-1)^m accounts for the grid starting at t_0 = -L.
void apply_origin_phase(Eigen::VectorXcd& v) {
  for (Eigen::Index m = 1; m < v.size(); m += 2) v[m] = -v[m];
}

}  // namespace

Eigen::VectorXcd forward_dft(const Grid1D& grid, const Eigen::VectorXcd& values) {
  Eigen::VectorXcd out;
  fft_engine().fwd(out, values);
  apply_origin_phase(out);
  out *= grid.spacing();
  return out;
}

Eigen::VectorXcd inverse_dft(const Grid1D& grid, const Eigen::VectorXcd& spectrum) {
  Eigen::VectorXcd shifted = spectrum;
  apply_origin_phase(shifted);
  Eigen::VectorXcd out;
  fft_engine().inv(out, shifted);  // includes the 1/N factor
  out /= grid.spacing();
  return out;
}

SpectralField SpectralField::from_values(Grid1D grid, Eigen::VectorXd values) {
  if (values.size() != grid.size()) {
    throw Error(ErrorCode::InvalidInput,
                "expected " + std::to_string(grid.size()) + " values, got " +
                    std::to_string(values.size()));
  }
  if (!values.allFinite()) throw Error(ErrorCode::NonFinite, "field values are not finite");
  Eigen::VectorXcd spectrum = forward_dft(grid, values.cast<std::complex<double>>());
  return SpectralField(std::move(grid), std::move(values), std::move(spectrum));
}

SpectralField SpectralField::from_spectrum(Grid1D grid, const Eigen::VectorXcd& spectrum) {
  const Eigen::Index n = grid.size();
  if (spectrum.size() != n) {
    throw Error(ErrorCode::InvalidInput, "spectrum size does not match grid");
  }
  if (!spectrum.allFinite()) throw Error(ErrorCode::NonFinite, "spectrum is not finite");
  Eigen::VectorXcd hermitian(n);
  hermitian[0] = spectrum[0].real();
  hermitian[n / 2] = spectrum[n / 2].real();
  for (Eigen::Index m = 1; m < n / 2; ++m) {
    const std::complex<double> s = 0.5 * (spectrum[m] + std::conj(spectrum[n - m]));
    hermitian[m] = s;
    hermitian[n - m] = std::conj(s);
  }
  Eigen::VectorXd values = inverse_dft(grid, hermitian).real();
  return SpectralField(std::move(grid), std::move(values), std::move(hermitian));
}

SpectralField SpectralField::zero(Grid1D grid) {
  const Eigen::Index n = grid.size();
  return SpectralField(std::move(grid), Eigen::VectorXd::Zero(n), Eigen::VectorXcd::Zero(n));
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_);
  values_ += other.values_;
  spectrum_ += other.spectrum_;
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_);
  values_ -= other.values_;
  spectrum_ -= other.spectrum_;
  return *this;
}

SpectralField& SpectralField::operator*=(double scale) {
  values_ *= scale;
  spectrum_ *= scale;
  return *this;
}

SpectralField transform(const SpectralField& field, Direction direction) {
  if (direction == Direction::forward) {
    return SpectralField::from_values(field.grid(), field.values());
  }
  return SpectralField::from_spectrum(field.grid(), field.spectrum());
}

double lp_norm(const SpectralField& field, double p) {
  const Eigen::VectorXd& u = field.values();
  if (std::isinf(p) && p > 0) return u.size() == 0 ? 0.0 : u.cwiseAbs().maxCoeff();
  if (!(p >= 2.0)) {
    throw Error(ErrorCode::InvalidInput,
                "L^p norm requires p in [2, inf], got p = " + std::to_string(p));
  }
  const double h = field.grid().spacing();
  if (p == 2.0) return std::sqrt(h * u.squaredNorm());
  return std::pow(h * u.cwiseAbs().array().pow(p).sum(), 1.0 / p);
}

double l2_inner(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a.grid(), b.grid());
  return a.grid().spacing() * a.values().dot(b.values());
}

double spectral_l2_norm(const SpectralField& field) {
  return std::sqrt(field.spectrum().squaredNorm() / (2.0 * field.grid().half_width()));
}

SpectralField shift_cells(const SpectralField& field, Eigen::Index cells) {
  const Eigen::Index n = field.size();
  const Eigen::Index k = ((cells % n) + n) % n;
  Eigen::VectorXd shifted(n);
  for (Eigen::Index j = 0; j < n; ++j) shifted[(j + k) % n] = field.values()[j];
  return SpectralField::from_values(field.grid(), std::move(shifted));
}

bool has_positive_part(const SpectralField& field) {
  return field.size() > 0 && field.values().maxCoeff() > 0.0;
}

}  // namespace fracgs
