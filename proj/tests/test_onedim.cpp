#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "eup/onedim.hpp"

using namespace eup;

namespace {

constexpr double kPi = std::numbers::pi;

Confinement slit(double dx, double alpha, double hbar = 1.0) { return Confinement::slit(dx, DeformationParam(alpha, hbar)); }

// Closed form in extended precision, used as the reference for the series branch.
double phi_reference(double z, double alpha) {
  const long double t = std::sqrt(static_cast<long double>(alpha)) * z;
  if (t == 0.0L) return 1.0;
  return static_cast<double>(t / std::atan(t));
}

}  // namespace

TEST_CASE("phi_factor examples") {
  CHECK(phi_factor(0.7, 0.0) == 1.0);
  CHECK(phi_factor(123.0, 0.0) == 1.0);
  CHECK(phi_factor(0.0, 5.0) == 1.0);
  CHECK(phi_factor(0.5, 4.0) == doctest::Approx(4.0 / kPi).epsilon(1e-15));
  CHECK(4.0 / kPi == doctest::Approx(1.2732395447).epsilon(1e-10));
  // Small-slit expansion 1 + alpha dx^2 / 12 with dx = 2z.
  CHECK(phi_factor(0.01, 1.0) == doctest::Approx(1.0 + 1e-4 / 3.0).epsilon(1e-8));
}

TEST_CASE("phi_factor rejects negative input") {
  CHECK_THROWS_AS(phi_factor(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(phi_factor(1.0, -1e-9), DomainError);
  CHECK_THROWS_AS(phi_factor(std::nan(""), 1.0), DomainError);
}

TEST_CASE("phi_factor series and closed form join continuously") {
  double worst = 0.0;
  double worst_step = 0.0;
  double prev = phi_factor(kPhiSeriesThreshold * 0.99, 1.0);
  for (int i = 0; i <= 10000; ++i) {
    const double t = kPhiSeriesThreshold * (0.99 + 0.02 * i / 10000.0);
    const double v = phi_factor(t, 1.0);
    worst = std::max(worst, std::abs(v - phi_reference(t, 1.0)) / phi_reference(t, 1.0));
    // Expected step from the derivative 2t/3 is ~1.3e-13 of the grid spacing; anything
    // beyond that would be a jump.
    worst_step = std::max(worst_step, std::abs(v - prev) / v);
    prev = v;
  }
  CHECK(worst < 1e-14);
  CHECK(worst_step < 1e-13);
  const double below = phi_factor(std::nextafter(kPhiSeriesThreshold, 0.0), 1.0);
  const double above = phi_factor(kPhiSeriesThreshold, 1.0);
  CHECK(std::abs(above - below) / above < 1e-14);
}

TEST_CASE("phi_factor is >= 1 and strictly increasing") {
  for (double alpha : {1e-3, 1.0, 50.0}) {
    double prev = phi_factor(0.0, alpha);
    CHECK(prev == 1.0);
    for (int i = 1; i <= 2000; ++i) {
      const double z = 1e-6 * std::pow(1.01, i);
      const double v = phi_factor(z, alpha);
      CHECK(v >= 1.0);
      // Neighbours differ by about 2% of t^2/3; below an ulp they round to the same double.
      const double t = std::sqrt(alpha) * z;
      if (0.02 * t * t / 3.0 > 4.0 * std::numeric_limits<double>::epsilon()) {
        CHECK(v > prev);
      } else {
        CHECK(v >= prev);
      }
      prev = v;
    }
  }
}

TEST_CASE("bound_1d examples") {
  const auto flat = bound_1d(slit(1.0, 0.0));
  CHECK(flat.product == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(flat.phi == 1.0);
  CHECK(flat.regime == Regime::FlatLimit);

  const auto unit = bound_1d(slit(2.0, 1.0));
  CHECK(unit.product == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(unit.sigma_p_min == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(unit.regime == Regime::Moderate);

  // sqrt(alpha) dx / 2 = 1e3: phi ~ sqrt(alpha) dx / pi.
  const double alpha = 4e6;
  const auto big = bound_1d(slit(1.0, alpha));
  CHECK(big.regime == Regime::LargeDeformation);
  CHECK(big.phi / (std::sqrt(alpha) * 1.0 / kPi) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(big.product / (std::sqrt(alpha) * 1.0) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("bound_1d invariants") {
  for (double dx : {0.1, 1.0, 7.0}) {
    double prev = 0.0;
    for (double alpha : {0.0, 1e-6, 1e-3, 0.1, 1.0, 10.0, 1e3}) {
      const auto r = bound_1d(slit(dx, alpha, 2.5));
      CHECK(r.product == doctest::Approx(kPi * 2.5 * r.phi).epsilon(1e-15));
      CHECK(r.product >= prev);
      prev = r.product;
    }
  }
  CHECK_THROWS_AS(bound_1d(slit(1.0, -1.0)), DomainError);
  CHECK_THROWS_AS(bound_1d(Confinement::ball(1.0, DeformationParam(0.0))), DomainError);
}

TEST_CASE("spectrum_1d examples") {
  CHECK(spectrum_1d(slit(1.0, 0.0), 1).at(0).p_n == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(spectrum_1d(slit(1.0, 1e-300), 1).at(0).p_n == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(spectrum_1d(slit(2.0, 1.0), 1).at(0).p_n == doctest::Approx(2.0).epsilon(1e-15));
  const auto modes = spectrum_1d(slit(1.3, 0.7, 0.5), 12);
  REQUIRE(modes.size() == 12);
  for (std::size_t i = 0; i < modes.size(); ++i) {
    CHECK(modes[i].n == static_cast<int>(i) + 1);
    CHECK(modes[i].p_n / modes[0].p_n == doctest::Approx(static_cast<double>(i + 1)).epsilon(1e-15));
    CHECK(modes[i].parity == ((i + 1) % 2 == 1 ? Parity::Even : Parity::Odd));
  }
  CHECK_THROWS_AS(spectrum_1d(slit(1.0, 1.0), 0), EmptyRequestError);
}

TEST_CASE("spectrum_1d scale covariance") {
  // p carries units 1/length: spectrum(dx, alpha) = s * spectrum(s dx, alpha / s^2).
  for (double s : {0.1, 0.5, 3.0, 17.0}) {
    for (double alpha : {0.0, 0.3, 5.0}) {
      const auto base = spectrum_1d(slit(1.7, alpha), 6);
      const auto scaled = spectrum_1d(slit(s * 1.7, alpha / (s * s)), 6);
      for (std::size_t i = 0; i < base.size(); ++i) {
        CHECK(base[i].p_n == doctest::Approx(s * scaled[i].p_n).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("eval_mode_1d examples") {
  const auto c = slit(2.0, 1.0);
  const auto modes = spectrum_1d(c, 2);
  CHECK(eval_mode_1d(modes[0], c, 1.0) == 0.0);
  CHECK(eval_mode_1d(modes[0], c, -1.0) == 0.0);
  CHECK(eval_mode_1d(modes[1], c, 0.0) == 0.0);
  // C = (sqrt(alpha) / arctan(sqrt(alpha) dx / 2))^(1/2) = (4/pi)^(1/2).
  CHECK(eval_mode_1d(modes[0], c, 0.0) == doctest::Approx(std::sqrt(4.0 / kPi)).epsilon(1e-15));
  CHECK(eval_mode_1d(modes[0], c, 0.0) == doctest::Approx(1.1283791671).epsilon(1e-10));
  CHECK_THROWS_AS(eval_mode_1d(modes[0], c, 1.0000001), DomainError);

  // Flat limit is the familiar box.
  const auto box = slit(1.0, 0.0);
  const auto m3 = mode_1d(box, 3);
  CHECK(eval_mode_1d(m3, box, 0.1) == doctest::Approx(std::sqrt(2.0) * std::cos(3 * kPi * 0.1)).epsilon(1e-14));
}

TEST_CASE("momentum action matches a central difference") {
  // Sanity check of the analytic derivative; the difference quotient is only
  // used here, never in the moments.
  for (double alpha : {0.0, 1.0, 10.0}) {
    const auto c = slit(2.0, alpha);
    for (int n : {1, 2, 5}) {
      const auto m = mode_1d(c, n);
      for (double x : {-0.7, -0.1, 0.0, 0.4, 0.9}) {
        const double h = 1e-5;
        const double dpsi = (eval_mode_1d(m, c, x + h) - eval_mode_1d(m, c, x - h)) / (2 * h);
        const double expected = (1 + alpha * x * x) * dpsi + alpha * x * eval_mode_1d(m, c, x);
        CHECK(momentum_action_1d(m, c, x) == doctest::Approx(expected).epsilon(1e-7));
      }
    }
  }
}

TEST_CASE("ground-state moments") {
  for (double alpha : {0.0, 0.1, 1.0, 10.0}) {
    for (double dx : {0.5, 2.0}) {
      const auto c = slit(dx, alpha);
      const auto m = mode_1d(c, 1);
      const auto mo = moments_1d(m, c);
      const double p1 = m.p_n;
      CHECK(std::abs(mo.mean_p) < 1e-10 * p1);
      CHECK(std::abs(mo.mean_p2 - p1 * p1) < 1e-8 * p1 * p1);
      CHECK(std::abs(mo.mean_x) < 1e-12);
      CHECK(mo.sigma_x <= dx / 2);
    }
  }
}

TEST_CASE("sigma_x <= dx/2 for every mode") {
  for (double alpha : {0.0, 1.0, 10.0}) {
    const auto c = slit(2.0, alpha);
    for (const auto& m : spectrum_1d(c, 8)) {
      const auto mo = moments_1d(m, c);
      CHECK(mo.sigma_x <= 1.0);
      CHECK(mo.mean_p2 == doctest::Approx(m.p_n * m.p_n).epsilon(1e-8));
    }
  }
}

TEST_CASE("orthonormality of the first eight modes") {
  for (double alpha : {0.0, 1.0, 10.0}) {
    const auto c = slit(2.0, alpha);
    const auto gram = gram_matrix_1d(spectrum_1d(c, 8), c);
    const double dev = (gram - Eigen::MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff();
    CHECK(dev < 1e-8);
  }
}

TEST_CASE("Robertson-Schrodinger inequality") {
  const auto flat = robertson_schrodinger_check(mode_1d(slit(1.0, 0.0), 1), slit(1.0, 0.0));
  CHECK(flat.satisfied);
  // Box ground state: sigma_x sigma_p = sqrt(pi^2/12 - 1/2).
  CHECK(flat.lhs == doctest::Approx(std::sqrt(kPi * kPi / 12.0 - 0.5)).epsilon(1e-9));
  CHECK(flat.rhs == doctest::Approx(0.5));

  const auto c = slit(2.0, 1.0);
  // Reference values from a 30-digit mpmath quadrature of <x^2> for these modes.
  const auto n1 = robertson_schrodinger_check(mode_1d(c, 1), c);
  CHECK(n1.satisfied);
  CHECK(n1.lhs == doctest::Approx(0.6097808752023984).epsilon(1e-9));
  CHECK(n1.rhs == doctest::Approx(0.5464790894703254).epsilon(1e-9));
  const auto n5 = robertson_schrodinger_check(mode_1d(c, 5), c);
  CHECK(n5.satisfied);
  CHECK(n5.lhs == doctest::Approx(5.10959276192187).epsilon(1e-9));
  CHECK(n5.rhs == doctest::Approx(0.6305396909634218).epsilon(1e-9));
}

TEST_CASE("quadrature failure is reported") {
  QuadratureOptions opt;
  opt.abs_tol = 1e-300;
  opt.rel_tol = 0.0;
  opt.max_depth = 2;
  const auto c = slit(2.0, 1.0);
  CHECK_THROWS_AS(moments_1d(mode_1d(c, 30), c, opt), QuadratureError);
}
