#include "eup/threedim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace eup {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

Ball3DResult bound_3d(double radius, double alpha, double hbar) {
  const DeformationParam space(alpha, hbar);
  if (!std::isfinite(radius) || !(radius > 0.0)) throw DomainError("ball radius must be finite and > 0");

  Ball3DResult r;
  r.curvature = space.curvature();
  double bracket = 1.0;
  if (alpha > 0.0) {
    const double r_max = max_geodesic_radius(alpha);
    if (radius > r_max * (1.0 + kMaxRadiusRelativeSlack)) {
      throw DomainError("ball radius exceeds R_max = pi/(2 sqrt(alpha)); the geodesic radius approaches its maximum there");
    }
    if (radius >= r_max) {
      radius = r_max;
      r.degenerate = true;
      bracket = 0.0;
    } else {
      // 1 - 4 alpha R^2 / pi^2 factored to keep precision near R_max.
      const double t = 2.0 * std::sqrt(alpha) * radius / kPi;
      bracket = (1.0 - t) * (1.0 + t);
    }
  } else if (alpha < 0.0) {
    bracket = 1.0 + std::abs(r.curvature) * radius * radius / (kPi * kPi);
    r.floor = hbar * std::sqrt(std::abs(r.curvature));
  }

  r.product = kPi * hbar * std::sqrt(std::max(0.0, bracket));
  r.sigma_p_min = r.product / radius;
  r.lambda1 = r.degenerate ? 0.0 : std::max(0.0, kPi * kPi / (radius * radius) - r.curvature);
  return r;
}

Ball3DResult bound_3d(const Confinement& c) {
  if (c.kind() != ConfinementKind::Ball3D) throw DomainError("operation requires a Ball3D confinement");
  return bound_3d(c.size(), c.alpha(), c.hbar());
}

double bound_1d_geodesic(double radius, double hbar) {
  if (!std::isfinite(radius) || !(radius > 0.0)) throw DomainError("geodesic radius must be finite and > 0");
  if (!std::isfinite(hbar) || !(hbar > 0.0)) throw DomainError("hbar must be finite and > 0");
  return kPi * hbar / (2.0 * radius);
}

}  // namespace eup
