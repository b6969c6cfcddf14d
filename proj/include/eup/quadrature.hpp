#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "eup/errors.hpp"

namespace eup {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int initial_panels = 8;
  int max_depth = 30;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int panels = 0;
};

namespace detail {

template <typename Scalar, int Order>
struct GaussLegendreRule {
  std::array<Scalar, Order> nodes{};
  std::array<Scalar, Order> weights{};

  GaussLegendreRule() {
    // Newton iteration on P_Order from the Chebyshev-like initial guesses.
    for (int i = 0; i < Order; ++i) {
      Scalar x = std::cos(std::numbers::pi_v<Scalar> * (Scalar(i) + Scalar(0.75)) / (Scalar(Order) + Scalar(0.5)));
      Scalar dp = 0;
      for (int it = 0; it < 100; ++it) {
        Scalar p0 = 1, p1 = x;
        for (int k = 2; k <= Order; ++k) {
          const Scalar pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = pk;
        }
        dp = Order * (x * p1 - p0) / (x * x - 1);
        const Scalar dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) <= Scalar(4) * std::numeric_limits<Scalar>::epsilon()) break;
      }
      nodes[i] = x;
      weights[i] = Scalar(2) / ((1 - x * x) * dp * dp);
    }
  }
};

template <typename Scalar, int Order>
const GaussLegendreRule<Scalar, Order>& gauss_legendre_rule() {
  static const GaussLegendreRule<Scalar, Order> rule;
  return rule;
}

template <typename Scalar, typename F>
Scalar gauss_panel(const F& f, Scalar lo, Scalar hi) {
  const auto& rule = gauss_legendre_rule<Scalar, 15>();
  const Scalar mid = (lo + hi) / 2;
  const Scalar half = (hi - lo) / 2;
  Scalar sum = 0;
  for (int i = 0; i < 15; ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return sum * half;
}

template <typename Scalar, typename F>
void adapt(const F& f, Scalar lo, Scalar hi, Scalar whole, Scalar tol, int depth, const QuadratureOptions& opt,
           QuadratureResult& acc, bool& failed) {
  const Scalar mid = (lo + hi) / 2;
  const Scalar left = gauss_panel<Scalar>(f, lo, mid);
  const Scalar right = gauss_panel<Scalar>(f, mid, hi);
  const Scalar refined = left + right;
  const Scalar err = std::abs(refined - whole);
  // Below this the difference is rounding noise and bisection cannot help.
  const Scalar noise = Scalar(64) * std::numeric_limits<Scalar>::epsilon() * (std::abs(left) + std::abs(right));
  if (err <= tol || err <= noise || depth >= opt.max_depth || mid <= lo || mid >= hi) {
    if (err > tol && err > noise) failed = true;
    acc.value += static_cast<double>(refined);
    acc.error_estimate += static_cast<double>(err);
    acc.panels += 2;
    return;
  }
  adapt<Scalar>(f, lo, mid, left, tol / 2, depth + 1, opt, acc, failed);
  adapt<Scalar>(f, mid, hi, right, tol / 2, depth + 1, opt, acc, failed);
}

}  // namespace detail

/// Adaptive composite 15-point Gauss-Legendre quadrature of f over [lo, hi].
///
/// Each panel is compared with its two halves and bisected until the
/// difference falls below the panel's share of max(abs_tol, rel_tol * |I|).
/// Throws QuadratureError when max_depth is hit without convergence.
template <typename F>
QuadratureResult integrate(const F& f, double lo, double hi, const QuadratureOptions& opt = {}) {
  QuadratureResult acc;
  if (lo == hi) return acc;
  const int panels = opt.initial_panels > 0 ? opt.initial_panels : 1;
  const double width = (hi - lo) / panels;

  // Coarse pass fixes the relative part of the tolerance.
  double coarse_total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double a = lo + i * width;
    const double b = (i + 1 == panels) ? hi : lo + (i + 1) * width;
    coarse_total += detail::gauss_panel<double>(f, a, b);
  }
  const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(coarse_total));

  bool failed = false;
  for (int i = 0; i < panels; ++i) {
    const double a = lo + i * width;
    const double b = (i + 1 == panels) ? hi : lo + (i + 1) * width;
    const double whole = detail::gauss_panel<double>(f, a, b);
    detail::adapt<double>(f, a, b, whole, target / panels, 0, opt, acc, failed);
  }
  if (failed) {
    throw QuadratureError("quadrature did not converge; achieved error estimate " +
                              std::to_string(acc.error_estimate) + " against target " + std::to_string(target),
                          acc.value, acc.error_estimate);
  }
  return acc;
}

}  // namespace eup
