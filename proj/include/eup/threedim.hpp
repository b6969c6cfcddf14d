#pragma once

#include <optional>

#include "eup/core.hpp"

namespace eup {

struct Ball3DResult {
  double sigma_p_min = 0.0;
  double product = 0.0;  // sigma_p_min * R
  double lambda1 = 0.0;  // pi^2 / R^2 - K
  double curvature = 0.0;
  std::optional<double> floor;  // hbar sqrt(|K|), hyperbolic case only
  bool degenerate = false;      // R at R_max, bound collapses to zero
};

/// Geodesic ball of radius R in the constant-curvature space K = 4 alpha:
///
///   sigma_p R >= pi hbar sqrt(1 - K R^2 / pi^2),
///
/// which for K < 0 reads pi hbar sqrt(1 + |K| R^2 / pi^2) and approaches the
/// floor hbar sqrt(|K|) as R grows. For alpha > 0, R may not exceed
/// pi / (2 sqrt(alpha)).
Ball3DResult bound_3d(double radius, double alpha, double hbar = 1.0);
Ball3DResult bound_3d(const Confinement& c);

/// Geodesic form of the slit bound, sigma_p,min = pi hbar / (2 R).
double bound_1d_geodesic(double radius, double hbar = 1.0);

}  // namespace eup
