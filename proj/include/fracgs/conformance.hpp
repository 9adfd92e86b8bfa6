#pragma once

#include <string>
#include <vector>

#include "fracgs/grid.hpp"

namespace fracgs {

struct IdentityCheck {
  std::string name;
  double alpha = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Operator identities on `grid` for order `alpha` (plus the alpha = 1
/// classical limit): transform round trip, Plancherel, symbol branch,
/// composition vs right-after-left, derivative-after-integral on both
/// sides, spectral vs time-domain seminorm.
std::vector<IdentityCheck> operator_identity_checks(const Grid1D& grid, double alpha);

}  // namespace fracgs
