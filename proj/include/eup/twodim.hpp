#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "eup/core.hpp"

namespace eup {

/// Largest cap angular radius handled, as a fraction of pi.
inline constexpr double kMaxCapFraction = 0.95;

/// Smallest argument accepted by legendre_p, cos(0.95 pi). The hypergeometric
/// series in (1 - x)/2 converges ever more slowly as x approaches -1.
inline const double kLegendreMinArgument = std::cos(kMaxCapFraction * std::numbers::pi);

struct LegendreSeriesOptions {
  double rel_tol = 1e-13;
  long max_terms = 100000;
};

namespace detail {

// Partial sums of 2F1(-nu, nu + 1; 1; z); `magnitude` receives sum |term|.
template <typename Scalar>
Scalar legendre_series(Scalar nu, Scalar z, const LegendreSeriesOptions& opt, Scalar& magnitude) {
  using std::abs;
  Scalar term = 1;
  Scalar sum = 1;
  magnitude = 1;
  for (long k = 0; k < opt.max_terms; ++k) {
    const Scalar kk = Scalar(k);
    const Scalar next = term * ((kk - nu) * (kk + nu + Scalar(1)) / ((kk + Scalar(1)) * (kk + Scalar(1)))) * z;
    if (next == Scalar(0)) return sum;
    sum += next;
    magnitude += abs(next);
    term = next;
    // Past k = nu every term ratio is below z, so the tail is dominated by a
    // geometric series with ratio z.
    if (kk + Scalar(1) > nu) {
      const Scalar tail = abs(next) * z / (Scalar(1) - z);
      if (tail <= Scalar(opt.rel_tol) * magnitude) return sum;
    }
  }
  throw ConvergenceError("legendre_p: series term cap reached (partial sum " + std::to_string(double(sum)) +
                             ", last term " + std::to_string(double(term)) + ")",
                         double(sum), double(abs(term)));
}

}  // namespace detail

/// Legendre function of the first kind P_nu(x) for real degree nu >= 0,
///
///   P_nu(x) = 2F1(-nu, nu + 1; 1; (1 - x) / 2),
///
/// summed term by term in Scalar precision. The stopping rule compares the
/// estimated tail with the sum of term magnitudes, so accuracy is relative to
/// the conditioning of the series rather than to the (possibly vanishing) sum.
///
/// For large nu away from x = 1 the terms grow far beyond the result and the
/// sum cancels. When the magnitude says so, the value is rebuilt instead by the
/// degree recurrence (n + 1) P_{n+1} = (2n + 1) x P_n - n P_{n-1}, started from
/// the series at the fractional degrees mu and mu + 1, where it is benign.
template <typename Scalar>
Scalar legendre_p(Scalar nu, Scalar x, const LegendreSeriesOptions& opt = {}) {
  using std::floor;
  using std::isfinite;
  if (!isfinite(nu) || !isfinite(x)) throw DomainError("legendre_p: non-finite input");
  if (nu < Scalar(0)) throw DomainError("legendre_p: nu must be >= 0");
  if (x > Scalar(1) || x < Scalar(kLegendreMinArgument)) {
    throw DomainError("legendre_p: x outside [cos(0.95 pi), 1]");
  }
  const Scalar z = (Scalar(1) - x) / Scalar(2);
  if (z == Scalar(0)) return Scalar(1);

  Scalar magnitude = 1;
  const Scalar sum = detail::legendre_series(nu, z, opt, magnitude);
  const bool ill_conditioned =
      magnitude * std::numeric_limits<Scalar>::epsilon() > Scalar(1e-2) * Scalar(opt.rel_tol);
  if (!ill_conditioned || nu < Scalar(2)) return sum;

  const Scalar mu = nu - floor(nu);
  Scalar scratch = 0;
  Scalar prev = detail::legendre_series(mu, z, opt, scratch);
  Scalar cur = detail::legendre_series(mu + Scalar(1), z, opt, scratch);
  for (Scalar n = mu + Scalar(1); n + Scalar(0.5) < nu; n += Scalar(1)) {
    const Scalar next = ((Scalar(2) * n + Scalar(1)) * x * cur - n * prev) / (n + Scalar(1));
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Double-precision entry point; accumulates in long double.
double legendre_p(double nu, double x);

/// Smallest positive degree nu with P_nu(cos theta) = 0, with diagnostics.
struct LegendreRoot {
  double nu = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double residual = 0.0;  // |P_nu(cos theta)| divided by the bracket slope
};

inline constexpr double kNuScanStep = 0.25;
inline constexpr double kNuScanLimit = 1e4;

/// Scans nu upward from 0 in steps of kNuScanStep until P_nu(cos theta)
/// changes sign, then bisects the bracket to width < 1e-12.
///
/// Throws RootNotFoundError past kNuScanLimit; for very small theta the
/// flat-disk estimate j_{0,1} / theta is a better starting point.
LegendreRoot legendre_first_root(double theta);

double nu1_of_theta(double theta);

/// Dirichlet problem on a spherical cap of angular radius theta on the sphere
/// of radius a.
class CapProblem {
 public:
  CapProblem(double a, double theta, double hbar = 1.0);

  /// Maps alpha > 0 to a = 1 / (2 sqrt(alpha)), the three-dimensional
  /// curvature relation carried over to the sphere for consistency.
  static CapProblem from_alpha(double alpha, double theta, double hbar = 1.0);
  static CapProblem from_confinement(const Confinement& c);

  double a() const noexcept { return a_; }
  double theta() const noexcept { return theta_; }
  double hbar() const noexcept { return hbar_; }
  double geodesic_radius() const noexcept { return a_ * theta_; }

  static double max_theta() { return kMaxCapFraction * std::numbers::pi; }

 private:
  double a_;
  double theta_;
  double hbar_;
};

struct CapResult {
  double nu1 = 0.0;
  double lambda1 = 0.0;
  double sigma_p_min = 0.0;
  double product = 0.0;  // sigma_p_min * R, comparable with the slit and ball products
  std::pair<double, double> bracket{0.0, 0.0};
  double residual = 0.0;
};

/// sigma_p,min^2 = hbar^2 lambda_1 with lambda_1 = nu1 (nu1 + 1) / a^2.
CapResult cap_bound(const CapProblem& p);

}  // namespace eup
