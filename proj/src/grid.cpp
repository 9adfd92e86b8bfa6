#include "fracgs/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fracgs/error.hpp"

namespace fracgs {

Grid1D make_grid(double half_width, Eigen::Index n_points) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw Error(ErrorCode::NonPositiveL,
                "half width L must be positive and finite, got " +
                    std::to_string(half_width));
  }
  if (n_points % 2 != 0) {
    throw Error(ErrorCode::OddN,
                "number of points N must be even, got " + std::to_string(n_points));
  }
  if (n_points < 16) {
    throw Error(ErrorCode::OddN,
                "number of points N must be at least 16, got " +
                    std::to_string(n_points));
  }

  Grid1D::Data data;
  data.half_width = half_width;
  data.n_points = n_points;
  data.spacing = 2.0 * half_width / static_cast<double>(n_points);
  data.frequency_step = std::numbers::pi / half_width;

  data.points.resize(n_points);
  data.frequencies.resize(n_points);
  const Eigen::Index half = n_points / 2;
  for (Eigen::Index j = 0; j < n_points; ++j) {
    data.points[j] = -half_width + static_cast<double>(j) * data.spacing;
    const Eigen::Index m = j < half ? j : j - n_points;
    data.frequencies[j] = static_cast<double>(m) * data.frequency_step;
  }
  return Grid1D(std::make_shared<const Grid1D::Data>(std::move(data)));
}

}  // namespace fracgs
