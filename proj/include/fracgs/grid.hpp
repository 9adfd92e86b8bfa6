#pragma once

#include <Eigen/Dense>

#include <memory>

namespace fracgs {

// Periodic truncation [-L, L) of the real line sampled at N equispaced points.
//
// Sample j sits at t_j = -L + j*h with h = 2L/N. Angular frequencies are kept
// in FFT order: w_m = m*pi/L for m = 0..N/2-1, then m = -N/2..-1, so index
// N/2 holds the (negative) Nyquist frequency. Copies share the same immutable
// storage and are safe to read from several threads.
class Grid1D {
 public:
  double half_width() const { return data_->half_width; }
  Eigen::Index size() const { return data_->n_points; }
  double spacing() const { return data_->spacing; }
  double frequency_step() const { return data_->frequency_step; }
  Eigen::Index nyquist_index() const { return data_->n_points / 2; }

  const Eigen::VectorXd& points() const { return data_->points; }
  const Eigen::VectorXd& frequencies() const { return data_->frequencies; }

  double point(Eigen::Index j) const { return data_->points[j]; }
  double frequency(Eigen::Index m) const { return data_->frequencies[m]; }

  friend bool operator==(const Grid1D& a, const Grid1D& b) {
    return a.data_ == b.data_ ||
           (a.half_width() == b.half_width() && a.size() == b.size());
  }

 private:
  struct Data {
    double half_width;
    Eigen::Index n_points;
    double spacing;
    double frequency_step;
    Eigen::VectorXd points;
    Eigen::VectorXd frequencies;
  };

  explicit Grid1D(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  friend Grid1D make_grid(double half_width, Eigen::Index n_points);

  std::shared_ptr<const Data> data_;
};

/// Builds the grid on [-L, L) with N points. Throws OddN for odd or too small
/// N (N >= 16) and NonPositiveL for L <= 0.
Grid1D make_grid(double half_width, Eigen::Index n_points);

}  // namespace fracgs
