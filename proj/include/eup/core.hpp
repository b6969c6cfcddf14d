#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "eup/errors.hpp"

namespace eup {

/// Deformation strength of the extended commutator [x, p] = i hbar (1 + alpha x^2).
///
/// alpha carries units of 1/length^2. In three dimensions the deformation is
/// equivalent to a constant spatial curvature K = 4 alpha; for alpha > 0 the
/// corresponding sphere has radius a = 1 / (2 sqrt(alpha)).
class DeformationParam {
 public:
  explicit DeformationParam(double alpha = 0.0, double hbar = 1.0);

  double alpha() const noexcept { return alpha_; }
  double hbar() const noexcept { return hbar_; }

  double curvature() const noexcept { return 4.0 * alpha_; }
  std::optional<double> sphere_radius() const;

 private:
  double alpha_;
  double hbar_;
};

enum class ConfinementKind { Slit1D, Cap2D, Ball3D };

std::string to_string(ConfinementKind kind);

/// Apparatus-defined confinement region.
///
/// `size` is the slit width for Slit1D and the geodesic radius R for the
/// curved cases. Construct through the named factories, which enforce the
/// geometric constraints of each kind.
class Confinement {
 public:
  static Confinement slit(double width, DeformationParam space);
  static Confinement cap(double geodesic_radius, DeformationParam space);
  static Confinement ball(double geodesic_radius, DeformationParam space);

  ConfinementKind kind() const noexcept { return kind_; }
  double size() const noexcept { return size_; }
  const DeformationParam& space() const noexcept { return space_; }
  double alpha() const noexcept { return space_.alpha(); }
  double hbar() const noexcept { return space_.hbar(); }

  /// Angular radius R / a of a Cap2D region.
  double angular_radius() const;

 private:
  Confinement(ConfinementKind kind, double size, DeformationParam space)
      : kind_(kind), size_(size), space_(space) {}

  ConfinementKind kind_;
  double size_;
  DeformationParam space_;
};

/// Relative slack accepted above R_max = pi / (2 sqrt(alpha)) before a radius is
/// rejected. Radii in the slack are treated as exactly R_max.
inline constexpr double kMaxRadiusRelativeSlack = 1e-9;

/// Largest geodesic radius of a ball on the sphere of curvature 4 alpha.
template <typename Scalar>
Scalar max_geodesic_radius(Scalar alpha) {
  using std::sqrt;
  return std::numbers::pi_v<Scalar> / (Scalar(2) * sqrt(alpha));
}

/// rho = arctan(sqrt(alpha) r) / sqrt(alpha), the geodesic distance on the
/// equivalent sphere of a point at flat radial coordinate r.
template <typename Scalar>
Scalar geodesic_radius_from_coordinate(Scalar r, Scalar alpha) {
  using std::atan;
  using std::isfinite;
  using std::sqrt;
  if (!isfinite(r) || !isfinite(alpha)) throw DomainError("geodesic map: non-finite input");
  if (r < Scalar(0)) throw DomainError("geodesic map: r must be >= 0");
  if (!(alpha > Scalar(0))) throw DomainError("geodesic map: alpha must be > 0");
  const Scalar s = sqrt(alpha);
  return atan(s * r) / s;
}

/// Inverse of geodesic_radius_from_coordinate: r = tan(sqrt(alpha) rho) / sqrt(alpha).
template <typename Scalar>
Scalar coordinate_from_geodesic_radius(Scalar rho, Scalar alpha) {
  using std::isfinite;
  using std::sqrt;
  using std::tan;
  if (!isfinite(rho) || !isfinite(alpha)) throw DomainError("geodesic map: non-finite input");
  if (!(alpha > Scalar(0))) throw DomainError("geodesic map: alpha must be > 0");
  if (rho < Scalar(0)) throw DomainError("geodesic map: rho must be >= 0");
  const Scalar s = sqrt(alpha);
  // Past the chart: tan blows up at s * rho = pi / 2.
  if (s * rho >= std::numbers::pi_v<Scalar> / Scalar(2)) {
    throw DomainError("geodesic map: rho at or beyond pi/(2 sqrt(alpha))");
  }
  return tan(s * rho) / s;
}

}  // namespace eup
