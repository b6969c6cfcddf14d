#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "eup/errors.hpp"

namespace eup::sturm {

enum class BoundaryCondition { Dirichlet, Regularity };

/// -(p(x) u')' = lambda w(x) u on (x_lo, x_hi).
///
/// `n_points` is the number of unknowns. Dirichlet ends are eliminated;
/// a Regularity end is closed with zero flux on a grid whose first node sits
/// half a spacing in from the endpoint, so p and w are never sampled there.
struct SturmLiouvilleProblem {
  double x_lo = 0.0;
  double x_hi = 1.0;
  std::function<double(double)> p_coef;
  std::function<double(double)> w_coef;
  BoundaryCondition bc_lo = BoundaryCondition::Dirichlet;
  BoundaryCondition bc_hi = BoundaryCondition::Dirichlet;
  int n_points = 1000;
};

/// Symmetric tridiagonal pencil T u = lambda W u with W = diag(weights) > 0.
template <typename Scalar>
struct TridiagonalPencil {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  Vector diag;
  Vector offdiag;  // offdiag(i) couples unknowns i and i + 1
  Vector weights;

  Eigen::Index size() const { return diag.size(); }
};

template <typename Scalar>
struct Discretization {
  TridiagonalPencil<Scalar> pencil;
  Eigen::VectorXd grid;
  double spacing = 0.0;
};

struct EigenResult {
  Eigen::VectorXd eigenvalues;
  Eigen::VectorXd grid;
  /// One column per eigenvalue, normalised so that sum_i w_i u_i^2 h = 1 and
  /// the first clearly nonzero entry is positive.
  std::optional<Eigen::MatrixXd> eigenvectors;
  /// ||(T - lambda W) u|| / (||T||_inf ||u||) per eigenvector.
  Eigen::VectorXd residuals;
  double grid_spacing = 0.0;
};

/// Second-order three-point scheme: p at half-nodes, w at nodes.
template <typename Scalar = double>
Discretization<Scalar> discretize(const SturmLiouvilleProblem& prob) {
  if (!(prob.x_lo < prob.x_hi)) throw DomainError("Sturm-Liouville interval requires x_lo < x_hi");
  if (prob.n_points < 16) throw DomainError("Sturm-Liouville grid needs at least 16 points");
  if (!prob.p_coef || !prob.w_coef) throw DomainError("Sturm-Liouville coefficients are not set");
  if (prob.bc_hi != BoundaryCondition::Dirichlet) throw DomainError("upper boundary must be Dirichlet");

  const int n = prob.n_points;
  const bool regular_lo = prob.bc_lo == BoundaryCondition::Regularity;
  const double length = prob.x_hi - prob.x_lo;
  // Dirichlet: x_i = lo + (i + 1) h with N + 1 intervals.
  // Regularity: x_i = lo + (i + 1/2) h, boundary node x_N = hi.
  const double h = regular_lo ? length / (n + 0.5) : length / (n + 1.0);
  const double offset = regular_lo ? 0.5 : 1.0;

  auto sample = [](const std::function<double(double)>& fn, double x, const char* name) {
    const double v = fn(x);
    if (!std::isfinite(v) || !(v > 0.0)) {
      throw CoefficientError(std::string("non-positive coefficient ") + name + " at x = " + std::to_string(x), x);
    }
    return v;
  };

  Discretization<Scalar> out;
  out.spacing = h;
  out.grid.resize(n);
  out.pencil.diag.setZero(n);
  out.pencil.offdiag.setZero(n - 1);
  out.pencil.weights.resize(n);
  const Scalar inv_h2 = Scalar(1) / (Scalar(h) * Scalar(h));

  for (int i = 0; i < n; ++i) {
    const double x = prob.x_lo + (i + offset) * h;
    out.grid(i) = x;
    out.pencil.weights(i) = Scalar(sample(prob.w_coef, x, "w"));
  }
  // Fluxes through the half-nodes between unknowns and at the ends.
  for (int i = 0; i <= n; ++i) {
    const double x_half = prob.x_lo + (i + offset - 0.5) * h;
    if (i == 0 && regular_lo) continue;  // zero flux through the singular end
    const Scalar p = Scalar(sample(prob.p_coef, x_half, "p")) * inv_h2;
    if (i > 0) out.pencil.diag(i - 1) += p;
    if (i < n) out.pencil.diag(i) += p;
    if (i > 0 && i < n) out.pencil.offdiag(i - 1) = -p;
  }
  return out;
}

/// Number of eigenvalues of the pencil strictly below `shift`, from the
/// signs of the LDL^T pivots of the weight-normalised matrix.
template <typename Scalar>
Eigen::Index sturm_count(const TridiagonalPencil<Scalar>& t, Scalar shift) {
  using std::abs;
  const Eigen::Index n = t.size();
  const Scalar tiny = std::numeric_limits<Scalar>::min() / std::numeric_limits<Scalar>::epsilon();
  Eigen::Index count = 0;
  Scalar q = 1;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar d = t.diag(i) / t.weights(i);
    Scalar v = d - shift;
    if (i > 0) {
      const Scalar e = t.offdiag(i - 1);
      v -= e * e / (t.weights(i - 1) * t.weights(i)) / q;
    }
    if (v == Scalar(0)) v = -tiny;
    if (v < Scalar(0)) ++count;
    q = v;
  }
  return count;
}

namespace detail {

template <typename Scalar>
struct Standardised {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> d;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> e;
  Scalar norm_inf = 0;
};

template <typename Scalar>
Standardised<Scalar> standardise(const TridiagonalPencil<Scalar>& t) {
  using std::abs;
  using std::sqrt;
  const Eigen::Index n = t.size();
  Standardised<Scalar> s;
  s.d.resize(n);
  s.e.resize(std::max<Eigen::Index>(0, n - 1));
  for (Eigen::Index i = 0; i < n; ++i) s.d(i) = t.diag(i) / t.weights(i);
  for (Eigen::Index i = 0; i + 1 < n; ++i) s.e(i) = t.offdiag(i) / sqrt(t.weights(i) * t.weights(i + 1));
  for (Eigen::Index i = 0; i < n; ++i) {
    Scalar row = abs(s.d(i));
    if (i > 0) row += abs(s.e(i - 1));
    if (i + 1 < n) row += abs(s.e(i));
    s.norm_inf = std::max(s.norm_inf, row);
  }
  return s;
}

// Solves (B - shift I) y = rhs for symmetric tridiagonal B by Gaussian
// elimination with partial pivoting. Exactly singular pivots are nudged.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> shifted_solve(const Standardised<Scalar>& b, Scalar shift,
                                                       Eigen::Matrix<Scalar, Eigen::Dynamic, 1> rhs) {
  using std::abs;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index n = b.d.size();
  Vector dl(n), d(n), du(n), du2(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    d(i) = b.d(i) - shift;
    dl(i) = i + 1 < n ? b.e(i) : Scalar(0);
    du(i) = i + 1 < n ? b.e(i) : Scalar(0);
    du2(i) = 0;
  }
  const Scalar nudge = std::numeric_limits<Scalar>::epsilon() * std::max(b.norm_inf, Scalar(1));
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    if (abs(d(i)) >= abs(dl(i))) {
      if (d(i) == Scalar(0)) d(i) = nudge;
      const Scalar f = dl(i) / d(i);
      dl(i) = f;
      d(i + 1) -= f * du(i);
      rhs(i + 1) -= f * rhs(i);
    } else {
      const Scalar f = d(i) / dl(i);
      d(i) = dl(i);
      dl(i) = f;
      const Scalar tmp = du(i);
      du(i) = d(i + 1);
      d(i + 1) = tmp - f * d(i + 1);
      if (i + 2 < n) {
        du2(i) = du(i + 1);
        du(i + 1) = -f * du2(i);
      }
      std::swap(rhs(i), rhs(i + 1));
      rhs(i + 1) -= f * rhs(i);
    }
  }
  if (d(n - 1) == Scalar(0)) d(n - 1) = nudge;
  // Back substitution with the upper factor (d, du, du2).
  Vector y(n);
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    Scalar v = rhs(i);
    if (i + 1 < n) v -= du(i) * y(i + 1);
    if (i + 2 < n) v -= du2(i) * y(i + 2);
    y(i) = v / d(i);
  }
  return y;
}

}  // namespace detail

/// The k smallest eigenvalues of the pencil by Sturm-sequence bisection, and
/// optionally eigenvectors by inverse iteration from each converged value.
///
/// Bisection runs until the bracket is below rel_tol relative to the
/// eigenvalue or stops shrinking in Scalar arithmetic.
template <typename Scalar>
EigenResult smallest_eigenvalues(const TridiagonalPencil<Scalar>& t, int k, bool with_vectors = true,
                                 double rel_tol = 1e-14) {
  using std::abs;
  using std::sqrt;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index n = t.size();
  if (k < 1 || k > 10) throw DomainError("smallest_eigenvalues: k must be in [1, 10]");
  if (n < k) throw DomainError("smallest_eigenvalues: pencil smaller than k");
  if (t.offdiag.size() != n - 1 || t.weights.size() != n) throw DomainError("smallest_eigenvalues: inconsistent pencil");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(t.weights(i) > Scalar(0))) throw DomainError("smallest_eigenvalues: weights must be positive");
  }

  const auto b = detail::standardise(t);
  // Gershgorin interval of the standardised matrix.
  Scalar lo_all = std::numeric_limits<Scalar>::max();
  Scalar hi_all = std::numeric_limits<Scalar>::lowest();
  for (Eigen::Index i = 0; i < n; ++i) {
    Scalar r = 0;
    if (i > 0) r += abs(b.e(i - 1));
    if (i + 1 < n) r += abs(b.e(i));
    lo_all = std::min(lo_all, b.d(i) - r);
    hi_all = std::max(hi_all, b.d(i) + r);
  }
  const Scalar pad = std::numeric_limits<Scalar>::epsilon() * std::max(b.norm_inf, Scalar(1)) * Scalar(4);
  lo_all -= pad;
  hi_all += pad;

  EigenResult out;
  out.eigenvalues.resize(k);
  Scalar floor = lo_all;
  for (int j = 0; j < k; ++j) {
    Scalar lo = floor;
    Scalar hi = hi_all;
    if (sturm_count(t, lo) > j || sturm_count(t, hi) <= j) {
      throw InternalError("Sturm bisection lost its bracket for eigenvalue " + std::to_string(j) + " (lo " +
                          std::to_string(double(lo)) + ", hi " + std::to_string(double(hi)) + ")");
    }
    for (int it = 0; it < 4096; ++it) {
      const Scalar mid = (lo + hi) / 2;
      if (mid <= lo || mid >= hi) break;
      if (hi - lo <= Scalar(rel_tol) * std::max(abs(lo), abs(hi))) break;
      if (sturm_count(t, mid) > j) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    const Scalar lambda = (lo + hi) / 2;
    out.eigenvalues(j) = static_cast<double>(lambda);
    floor = lo;
  }
  for (int j = 1; j < k; ++j) {
    if (!(out.eigenvalues(j) > out.eigenvalues(j - 1))) {
      throw InternalError("eigenvalues not strictly ascending; pencil has a (near-)degenerate pair");
    }
  }
  if (!with_vectors) return out;

  Eigen::MatrixXd vectors(n, k);
  out.residuals.resize(k);
  std::mt19937 gen(20240917u);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector start(n);
  for (Eigen::Index i = 0; i < n; ++i) start(i) = Scalar(1) + Scalar(dist(gen)) / Scalar(2);

  for (int j = 0; j < k; ++j) {
    const Scalar lambda = Scalar(out.eigenvalues(j));
    Vector y = start;
    Scalar residual = std::numeric_limits<Scalar>::max();
    for (int pass = 0; pass < 3; ++pass) {
      y = detail::shifted_solve(b, lambda, y);
      y /= sqrt(y.squaredNorm());
      Vector r(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        Scalar v = (b.d(i) - lambda) * y(i);
        if (i > 0) v += b.e(i - 1) * y(i - 1);
        if (i + 1 < n) v += b.e(i) * y(i + 1);
        r(i) = v;
      }
      residual = sqrt(r.squaredNorm()) / b.norm_inf;
      if (residual < Scalar(1e-12)) break;
    }
    out.residuals(j) = static_cast<double>(residual);
    // Back to the pencil variable u = W^{-1/2} y.
    Vector u(n);
    for (Eigen::Index i = 0; i < n; ++i) u(i) = y(i) / sqrt(t.weights(i));
    Eigen::VectorXd col = u.template cast<double>();
    const double peak = col.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(col(i)) > 1e-3 * peak) {
        if (col(i) < 0.0) col = -col;
        break;
      }
    }
    vectors.col(j) = col;
  }
  out.eigenvectors = std::move(vectors);
  return out;
}

/// Discretise, solve, and attach the grid. Eigenvectors are normalised in the
/// discrete weighted norm sum_i w_i u_i^2 h = 1.
template <typename Scalar = long double>
EigenResult solve(const SturmLiouvilleProblem& prob, int k, bool with_vectors = false) {
  const auto disc = discretize<Scalar>(prob);
  EigenResult out = smallest_eigenvalues(disc.pencil, k, with_vectors);
  out.grid = disc.grid;
  out.grid_spacing = disc.spacing;
  if (out.eigenvectors) {
    for (Eigen::Index j = 0; j < out.eigenvectors->cols(); ++j) {
      double norm2 = 0.0;
      for (Eigen::Index i = 0; i < disc.grid.size(); ++i) {
        const double u = (*out.eigenvectors)(i, j);
        norm2 += static_cast<double>(disc.pencil.weights(i)) * u * u;
      }
      out.eigenvectors->col(j) /= std::sqrt(norm2 * disc.spacing);
    }
  }
  return out;
}

/// p-hat^2 / hbar^2 on the slit (-dx/2, dx/2) in the original coordinate.
///
/// With f = 1 + alpha x^2 and phi = sqrt(f) psi the eigenproblem becomes
/// -(f phi')' = (p/hbar)^2 phi / f. Eigenvalues are (p_k / hbar)^2 and the
/// eigenvectors are samples of phi, not psi.
EigenResult oracle_1d_p2(double dx, double alpha, int n_points, int k = 5, bool with_vectors = false);

/// Radial Bessel problem -(r u')' = lambda r u on the unit disk; eigenvalues
/// are the squared zeros j_{0,k}^2.
EigenResult oracle_flat_disk(int n_points, int k = 1);

/// Azimuthally symmetric Dirichlet problem on a cap of angular radius theta,
/// -(sin t u')' = mu sin t u. Returns mu = lambda_1 a^2.
EigenResult oracle_cap(double theta, int n_points, int k = 1);

/// Radial Dirichlet problem on a geodesic ball of radius R in the space of
/// constant curvature K, -(s^2 u')' = lambda s^2 u.
EigenResult oracle_ball(double radius, double curvature, int n_points, int k = 1);

/// Convergence order from errors at two grid spacings.
double observed_order(double err_coarse, double h_coarse, double err_fine, double h_fine);

}  // namespace eup::sturm
