#include <doctest.h>

#include <cmath>
#include <numbers>

#include "eup/quadrature.hpp"
#include "eup/sturm.hpp"
#include "eup/twodim.hpp"

using namespace eup;

namespace {

constexpr double kPi = std::numbers::pi;

// Bonnet recurrence for integer degree.
double legendre_recurrence(int n, double x) {
  double p0 = 1.0, p1 = x;
  if (n == 0) return p0;
  for (int k = 1; k < n; ++k) {
    const double p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

// Mehler-Dirichlet integral,
//   P_nu(cos t) = (sqrt(2)/pi) int_0^t cos((nu + 1/2) phi) / sqrt(cos phi - cos t) dphi,
// with phi = t (1 - s^2) removing the inverse square root at phi = t. The
// difference of cosines is written as a product of sines to avoid cancellation.
double legendre_mehler(double nu, double x) {
  const double t = std::acos(x);
  auto f = [&](double s) {
    const double phi = t * (1.0 - s * s);
    const double gap = 2.0 * std::sin((t + phi) / 2.0) * std::sin(t * s * s / 2.0);
    return 2.0 * t * s * std::cos((nu + 0.5) * phi) / std::sqrt(gap);
  };
  QuadratureOptions opt;
  opt.abs_tol = 1e-14;
  opt.rel_tol = 1e-13;
  return std::sqrt(2.0) / kPi * integrate(f, 0.0, 1.0, opt).value;
}

}  // namespace

TEST_CASE("legendre_p examples") {
  CHECK(legendre_p(0.0, 0.3) == 1.0);
  CHECK(legendre_p(1.0, 0.3) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(legendre_p(2.0, 0.5) == doctest::Approx(-0.125).epsilon(1e-14));
  CHECK(legendre_p(7.3, 1.0) == 1.0);
  CHECK(std::abs(legendre_p(1.0, 0.0)) < 1e-16);
}

TEST_CASE("legendre_p agrees with the recurrence at integer degree") {
  for (int n = 0; n <= 10; ++n) {
    for (double x : {-0.5, 0.0, 0.5, 0.9}) {
      const double ref = legendre_recurrence(n, x);
      CHECK(std::abs(legendre_p(double(n), x) - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST_CASE("legendre_p agrees with the Mehler-Dirichlet integral at non-integer degree") {
  for (double nu : {0.5, 1.7, 3.25, 9.9, 24.6}) {
    for (double x : {-0.95, -0.4, 0.1, 0.8, 0.99}) {
      const double ref = legendre_mehler(nu, x);
      CHECK(std::abs(legendre_p(nu, x) - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST_CASE("legendre_p domain and convergence errors") {
  CHECK_THROWS_AS(legendre_p(-0.1, 0.5), DomainError);
  CHECK_THROWS_AS(legendre_p(1.0, 1.01), DomainError);
  CHECK_THROWS_AS(legendre_p(1.0, -0.999), DomainError);
  CHECK_THROWS_AS(legendre_p(std::nan(""), 0.5), DomainError);
  LegendreSeriesOptions tight;
  tight.max_terms = 3;
  CHECK_THROWS_AS(legendre_p<double>(2.5, -0.5, tight), ConvergenceError);
  try {
    legendre_p<double>(2.5, -0.5, tight);
  } catch (const ConvergenceError& e) {
    CHECK(std::isfinite(e.partial()));
    CHECK(e.last_term() > 0.0);
  }
}

TEST_CASE("first root examples") {
  // P_1(cos pi/2) = 0 exactly.
  CHECK(std::abs(nu1_of_theta(kPi / 2) - 1.0) < 1e-10);
  const auto cap = cap_bound(CapProblem(1.0, kPi / 2));
  CHECK(cap.lambda1 == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(cap_bound(CapProblem(3.0, kPi / 2)).lambda1 == doctest::Approx(2.0 / 9.0).epsilon(1e-10));

  const auto root = legendre_first_root(1.1);
  CHECK(root.bracket_hi - root.bracket_lo < 1e-12);
  CHECK(root.bracket_lo <= root.nu);
  CHECK(root.nu <= root.bracket_hi);
  CHECK(root.residual < 1e-10);
}

TEST_CASE("small caps approach the flat disk") {
  const double j01 = std::sqrt(sturm::oracle_flat_disk(8000).eigenvalues(0));
  CHECK(j01 == doctest::Approx(2.404825557695773).epsilon(1e-6));
  const double theta = 0.01;
  const double nu = nu1_of_theta(theta);
  // Mehler-Heine: (nu + 1/2) theta -> j01, with nu theta off by -theta/2.
  CHECK(std::abs((nu + 0.5) * theta / j01 - 1.0) < 1e-3);
  CHECK(nu * theta / j01 - 1.0 == doctest::Approx(-theta / (2 * j01)).epsilon(2e-2));
  const auto cap = cap_bound(CapProblem(1.0, theta));
  CHECK(std::abs(cap.lambda1 * theta * theta / (j01 * j01) - 1.0) < 1e-3);
}

TEST_CASE("first root matches the cap oracle") {
  for (double theta : {0.3, kPi / 2, 2.0, 2.0 * kPi / 3, 2.5}) {
    const double lambda = cap_bound(CapProblem(1.0, theta)).lambda1;
    const double oracle = sturm::oracle_cap(theta, 8000).eigenvalues(0);
    CHECK(std::abs(oracle - lambda) / lambda < 1e-5);
  }
}

TEST_CASE("nu1 strictly decreasing in theta") {
  const double lo = 0.05, hi = 0.95 * kPi;
  double prev = INFINITY;
  for (int i = 0; i < 50; ++i) {
    const double theta = lo + (hi - lo) * (i + 0.5) / 50.0;
    const double nu = nu1_of_theta(theta);
    CHECK(nu < prev);
    CHECK(nu > 0.0);
    prev = nu;
  }
}

TEST_CASE("lambda1 scales as 1/a^2 at fixed theta") {
  for (double theta : {0.4, 1.9}) {
    const double base = cap_bound(CapProblem(1.0, theta)).lambda1;
    for (double a : {0.5, 1.0, 3.0}) {
      const auto r = cap_bound(CapProblem(a, theta, 2.0));
      CHECK(r.lambda1 * a * a == doctest::Approx(base).epsilon(1e-14));
      CHECK(r.sigma_p_min == doctest::Approx(2.0 * std::sqrt(r.lambda1)).epsilon(1e-15));
      CHECK(r.product == doctest::Approx(r.sigma_p_min * a * theta).epsilon(1e-15));
    }
  }
}

TEST_CASE("cap problem construction") {
  // alpha = 1/4 gives a = 1.
  const auto p = CapProblem::from_alpha(0.25, 1.0);
  CHECK(p.a() == doctest::Approx(1.0));
  const auto q = CapProblem::from_confinement(Confinement::cap(1.0, DeformationParam(1.0)));
  CHECK(q.a() == doctest::Approx(0.5));
  CHECK(q.theta() == doctest::Approx(2.0));
  CHECK_THROWS_AS(CapProblem(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(CapProblem(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(CapProblem(1.0, 0.96 * kPi), DomainError);
  CHECK_THROWS_AS(CapProblem::from_alpha(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(CapProblem::from_confinement(Confinement::slit(1.0, DeformationParam(1.0))), DomainError);
}

TEST_CASE("very small caps exceed the degree scan") {
  CHECK_THROWS_AS(nu1_of_theta(1e-4), RootNotFoundError);
  try {
    nu1_of_theta(1e-4);
  } catch (const RootNotFoundError& e) {
    CHECK(e.scanned_to() >= kNuScanLimit);
  }
}
