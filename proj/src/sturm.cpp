#include "eup/sturm.hpp"

#include <cmath>
#include <numbers>

namespace eup::sturm {

EigenResult oracle_1d_p2(double dx, double alpha, int n_points, int k, bool with_vectors) {
  if (!std::isfinite(dx) || !(dx > 0.0)) throw DomainError("oracle_1d_p2: dx must be > 0");
  if (!std::isfinite(alpha) || alpha < 0.0) throw DomainError("oracle_1d_p2: alpha must be >= 0");
  SturmLiouvilleProblem prob;
  prob.x_lo = -dx / 2.0;
  prob.x_hi = dx / 2.0;
  prob.p_coef = [alpha](double x) { return 1.0 + alpha * x * x; };
  prob.w_coef = [alpha](double x) { return 1.0 / (1.0 + alpha * x * x); };
  prob.n_points = n_points;
  return solve(prob, k, with_vectors);
}

EigenResult oracle_flat_disk(int n_points, int k) {
  SturmLiouvilleProblem prob;
  prob.x_lo = 0.0;
  prob.x_hi = 1.0;
  prob.p_coef = [](double r) { return r; };
  prob.w_coef = [](double r) { return r; };
  prob.bc_lo = BoundaryCondition::Regularity;
  prob.n_points = n_points;
  return solve(prob, k);
}

EigenResult oracle_cap(double theta, int n_points, int k) {
  if (!std::isfinite(theta) || !(theta > 0.0) || !(theta < std::numbers::pi)) {
    throw DomainError("oracle_cap: theta must lie in (0, pi)");
  }
  SturmLiouvilleProblem prob;
  prob.x_lo = 0.0;
  prob.x_hi = theta;
  prob.p_coef = [](double t) { return std::sin(t); };
  prob.w_coef = [](double t) { return std::sin(t); };
  prob.bc_lo = BoundaryCondition::Regularity;
  prob.n_points = n_points;
  return solve(prob, k);
}

EigenResult oracle_ball(double radius, double curvature, int n_points, int k) {
  if (!std::isfinite(radius) || !(radius > 0.0)) throw DomainError("oracle_ball: radius must be > 0");
  if (!std::isfinite(curvature)) throw DomainError("oracle_ball: curvature must be finite");
  std::function<double(double)> s;
  if (curvature > 0.0) {
    const double a = 1.0 / std::sqrt(curvature);
    if (!(radius < std::numbers::pi * a)) throw DomainError("oracle_ball: radius must stay below pi a on the sphere");
    s = [a](double rho) { return a * std::sin(rho / a); };
  } else if (curvature < 0.0) {
    const double k_abs = std::sqrt(-curvature);
    s = [k_abs](double rho) { return std::sinh(k_abs * rho) / k_abs; };
  } else {
    s = [](double rho) { return rho; };
  }
  SturmLiouvilleProblem prob;
  prob.x_lo = 0.0;
  prob.x_hi = radius;
  prob.p_coef = [s](double rho) {
    const double v = s(rho);
    return v * v;
  };
  prob.w_coef = prob.p_coef;
  prob.bc_lo = BoundaryCondition::Regularity;
  prob.n_points = n_points;
  return solve(prob, k);
}

double observed_order(double err_coarse, double h_coarse, double err_fine, double h_fine) {
  return std::log(std::abs(err_coarse) / std::abs(err_fine)) / std::log(h_coarse / h_fine);
}

}  // namespace eup::sturm
