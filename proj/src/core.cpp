#include "eup/core.hpp"

#include <algorithm>
#include <cmath>

namespace eup {

DeformationParam::DeformationParam(double alpha, double hbar) : alpha_(alpha), hbar_(hbar) {
  if (!std::isfinite(alpha)) throw DomainError("alpha must be finite");
  if (!std::isfinite(hbar) || !(hbar > 0.0)) throw DomainError("hbar must be finite and > 0");
}

std::optional<double> DeformationParam::sphere_radius() const {
  if (alpha_ > 0.0) return 1.0 / (2.0 * std::sqrt(alpha_));
  return std::nullopt;
}

std::string to_string(ConfinementKind kind) {
  switch (kind) {
    case ConfinementKind::Slit1D:
      return "slit1d";
    case ConfinementKind::Cap2D:
      return "cap2d";
    case ConfinementKind::Ball3D:
      return "ball3d";
  }
  return "unknown";
}

namespace {

void require_positive_size(double size, const char* what) {
  if (!std::isfinite(size) || !(size > 0.0)) {
    throw DomainError(std::string(what) + " must be finite and > 0");
  }
}

}  // namespace

Confinement Confinement::slit(double width, DeformationParam space) {
  require_positive_size(width, "slit width");
  return Confinement(ConfinementKind::Slit1D, width, space);
}

Confinement Confinement::cap(double geodesic_radius, DeformationParam space) {
  require_positive_size(geodesic_radius, "cap radius");
  const auto a = space.sphere_radius();
  if (!a) throw DomainError("spherical cap requires alpha > 0");
  const double theta = geodesic_radius / *a;
  if (!(theta < std::numbers::pi)) throw DomainError("cap angular radius must be < pi");
  return Confinement(ConfinementKind::Cap2D, geodesic_radius, space);
}

Confinement Confinement::ball(double geodesic_radius, DeformationParam space) {
  require_positive_size(geodesic_radius, "ball radius");
  if (space.alpha() > 0.0) {
    const double r_max = max_geodesic_radius(space.alpha());
    if (geodesic_radius > r_max * (1.0 + kMaxRadiusRelativeSlack)) {
      throw DomainError("ball radius exceeds R_max = pi/(2 sqrt(alpha)); the geodesic radius approaches its maximum there");
    }
    geodesic_radius = std::min(geodesic_radius, r_max);
  }
  return Confinement(ConfinementKind::Ball3D, geodesic_radius, space);
}

double Confinement::angular_radius() const {
  if (kind_ != ConfinementKind::Cap2D) throw DomainError("angular radius is defined for Cap2D only");
  return size_ / *space_.sphere_radius();
}

}  // namespace eup
