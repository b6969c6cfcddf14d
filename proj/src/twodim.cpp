#include "eup/twodim.hpp"

#include <algorithm>
#include <cmath>

namespace eup {

double legendre_p(double nu, double x) {
  return static_cast<double>(legendre_p<long double>(nu, x));
}

namespace {

void require_theta(double theta) {
  if (!std::isfinite(theta) || !(theta > 0.0) || !(theta < CapProblem::max_theta())) {
    throw DomainError("cap angular radius must lie in (0, 0.95 pi)");
  }
}

}  // namespace

LegendreRoot legendre_first_root(double theta) {
  require_theta(theta);
  const double x = std::cos(theta);
  auto f = [x](double nu) { return legendre_p(nu, x); };

  // P_0 = 1, so the first sign change going up in nu brackets the first root.
  double lo = 0.0;
  double f_lo = f(lo);
  double hi = 0.0;
  double f_hi = f_lo;
  bool found = false;
  for (long i = 1;; ++i) {
    hi = static_cast<double>(i) * kNuScanStep;
    if (hi > kNuScanLimit) break;
    f_hi = f(hi);
    if (f_hi == 0.0 || (f_hi < 0.0) != (f_lo < 0.0)) {
      found = true;
      break;
    }
    lo = hi;
    f_lo = f_hi;
  }
  if (!found) {
    throw RootNotFoundError("no sign change of P_nu(cos theta) below nu = 1e4; theta too small for the scan, "
                            "re-seed from the flat-disk estimate j01/theta",
                            kNuScanLimit);
  }

  if (f_hi == 0.0) {
    lo = hi;
  } else {
    while (hi - lo >= 1e-12) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double f_mid = f(mid);
      if (f_mid == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((f_mid < 0.0) == (f_lo < 0.0)) {
        lo = mid;
        f_lo = f_mid;
      } else {
        hi = mid;
      }
    }
  }

  LegendreRoot root;
  root.nu = 0.5 * (lo + hi);
  root.bracket_lo = lo;
  root.bracket_hi = hi;
  const double h = 1e-6 * std::max(1.0, root.nu);
  const double slope = (f(root.nu + h) - f(std::max(0.0, root.nu - h))) / (root.nu + h - std::max(0.0, root.nu - h));
  const double value = f(root.nu);
  root.residual = slope != 0.0 ? std::abs(value / slope) : std::abs(value);
  return root;
}

double nu1_of_theta(double theta) { return legendre_first_root(theta).nu; }

CapProblem::CapProblem(double a, double theta, double hbar) : a_(a), theta_(theta), hbar_(hbar) {
  if (!std::isfinite(a) || !(a > 0.0)) throw DomainError("sphere radius a must be finite and > 0");
  require_theta(theta);
  if (!std::isfinite(hbar) || !(hbar > 0.0)) throw DomainError("hbar must be finite and > 0");
}

CapProblem CapProblem::from_alpha(double alpha, double theta, double hbar) {
  const DeformationParam space(alpha, hbar);
  const auto a = space.sphere_radius();
  if (!a) throw DomainError("spherical cap requires alpha > 0");
  return CapProblem(*a, theta, hbar);
}

CapProblem CapProblem::from_confinement(const Confinement& c) {
  if (c.kind() != ConfinementKind::Cap2D) throw DomainError("operation requires a Cap2D confinement");
  return CapProblem(*c.space().sphere_radius(), c.angular_radius(), c.hbar());
}

CapResult cap_bound(const CapProblem& p) {
  const LegendreRoot root = legendre_first_root(p.theta());
  CapResult r;
  r.nu1 = root.nu;
  r.lambda1 = root.nu * (root.nu + 1.0) / (p.a() * p.a());
  r.sigma_p_min = p.hbar() * std::sqrt(r.lambda1);
  r.product = r.sigma_p_min * p.geodesic_radius();
  r.bracket = {root.bracket_lo, root.bracket_hi};
  r.residual = root.residual;
  return r;
}

}  // namespace eup
