#include "eup/onedim.hpp"

#include <cmath>
#include <numbers>

namespace eup {

std::string to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

std::string to_string(Regime r) {
  switch (r) {
    case Regime::FlatLimit:
      return "flat_limit";
    case Regime::Moderate:
      return "moderate";
    case Regime::LargeDeformation:
      return "large_deformation";
  }
  return "unknown";
}

namespace {

constexpr double kPi = std::numbers::pi;

void require_slit(const Confinement& c) {
  if (c.kind() != ConfinementKind::Slit1D) throw DomainError("operation requires a Slit1D confinement");
  if (c.alpha() < 0.0) throw DomainError("slit bounds are defined for alpha >= 0 only");
}

// Map x in [-dx/2, dx/2] to the stretched coordinate u in [-1, 1] and return
// du/dx alongside. The flat limit is a separate branch since the arctan ratio
// is 0/0 there.
struct Stretch {
  double u;
  double du_dx;
  double f;  // 1 + alpha x^2
};

Stretch stretch(const Confinement& c, double x) {
  const double half = c.size() / 2.0;
  const double alpha = c.alpha();
  if (alpha == 0.0) return {x / half, 1.0 / half, 1.0};
  const double s = std::sqrt(alpha);
  const double big_u = std::atan(s * half);
  const double f = 1.0 + alpha * x * x;
  return {std::atan(s * x) / big_u, s / (big_u * f), f};
}

void require_inside(const Confinement& c, double x) {
  if (!std::isfinite(x) || std::abs(x) > c.size() / 2.0) {
    throw DomainError("mode evaluation: |x| must be <= dx/2");
  }
}

}  // namespace

Bound1DResult bound_1d(const Confinement& c) {
  require_slit(c);
  const double half = c.size() / 2.0;
  Bound1DResult r;
  r.phi = phi_factor(half, c.alpha());
  r.product = kPi * c.hbar() * r.phi;
  r.sigma_p_min = r.product / c.size();
  const double t = std::sqrt(c.alpha()) * half;
  if (t < 1e-4) {
    r.regime = Regime::FlatLimit;
  } else if (t > 1e2) {
    r.regime = Regime::LargeDeformation;
  } else {
    r.regime = Regime::Moderate;
  }
  return r;
}

Mode1D mode_1d(const Confinement& c, int n) {
  require_slit(c);
  if (n == 0) throw DomainError("mode index must be nonzero");
  const double phi = phi_factor(c.size() / 2.0, c.alpha());
  // p_1 = pi hbar sqrt(alpha) / (2 arctan(sqrt(alpha) dx/2)) = (pi hbar / dx) phi
  const double p1 = kPi * c.hbar() * phi / c.size();
  Mode1D m;
  m.n = n;
  m.parity = (n % 2 != 0) ? Parity::Even : Parity::Odd;
  m.p_n = n * p1;
  // C^2 = sqrt(alpha) / arctan(sqrt(alpha) dx/2) = 2 phi / dx
  m.norm_const = std::sqrt(2.0 * phi / c.size());
  return m;
}

std::vector<Mode1D> spectrum_1d(const Confinement& c, int n_max) {
  require_slit(c);
  if (n_max <= 0) throw EmptyRequestError("spectrum_1d: n_max must be >= 1");
  const Mode1D first = mode_1d(c, 1);
  std::vector<Mode1D> modes;
  modes.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    Mode1D m = first;
    m.n = n;
    m.parity = (n % 2 != 0) ? Parity::Even : Parity::Odd;
    m.p_n = n * first.p_n;
    modes.push_back(m);
  }
  return modes;
}

double eval_mode_1d(const Mode1D& m, const Confinement& c, double x) {
  require_slit(c);
  require_inside(c, x);
  if (std::abs(x) == c.size() / 2.0) return 0.0;
  const Stretch st = stretch(c, x);
  const double phase = m.n * kPi / 2.0 * st.u;
  const double g = (m.parity == Parity::Even) ? std::cos(phase) : std::sin(phase);
  return m.norm_const * g / std::sqrt(st.f);
}

double momentum_action_1d(const Mode1D& m, const Confinement& c, double x) {
  require_slit(c);
  require_inside(c, x);
  // f psi' + alpha x psi = sqrt(f) d/dx (sqrt(f) psi) and sqrt(f) psi = C g(n pi u / 2).
  const Stretch st = stretch(c, x);
  const double k = m.n * kPi / 2.0;
  const double phase = k * st.u;
  const double dg = (m.parity == Parity::Even) ? -std::sin(phase) : std::cos(phase);
  return m.norm_const * k * dg * st.du_dx * std::sqrt(st.f);
}

Moments1D moments_1d(const Mode1D& m, const Confinement& c, const QuadratureOptions& opt) {
  require_slit(c);
  const double half = c.size() / 2.0;
  const double hbar = c.hbar();
  auto density = [&](double x) {
    const double psi = eval_mode_1d(m, c, x);
    return psi * psi;
  };
  const double norm = integrate(density, -half, half, opt).value;
  const double mean_x = integrate([&](double x) { return x * density(x); }, -half, half, opt).value / norm;
  const double mean_x2 = integrate([&](double x) { return x * x * density(x); }, -half, half, opt).value / norm;
  const double mean_p =
      hbar * integrate([&](double x) { return eval_mode_1d(m, c, x) * momentum_action_1d(m, c, x); }, -half, half, opt)
                 .value /
      norm;
  const double mean_p2 = hbar * hbar *
                         integrate(
                             [&](double x) {
                               const double a = momentum_action_1d(m, c, x);
                               return a * a;
                             },
                             -half, half, opt)
                             .value /
                         norm;
  Moments1D out;
  out.mean_x = mean_x;
  out.sigma_x = std::sqrt(std::max(0.0, mean_x2 - mean_x * mean_x));
  out.mean_p = mean_p;
  out.mean_p2 = mean_p2;
  return out;
}

RobertsonSchrodinger robertson_schrodinger_check(const Mode1D& m, const Confinement& c, const QuadratureOptions& opt) {
  const Moments1D mo = moments_1d(m, c, opt);
  RobertsonSchrodinger rs;
  rs.lhs = mo.sigma_p() * mo.sigma_x;
  rs.rhs = c.hbar() / 2.0 * (1.0 + c.alpha() * (mo.sigma_x * mo.sigma_x + mo.mean_x * mo.mean_x));
  rs.satisfied = rs.lhs >= rs.rhs - 1e-10;
  return rs;
}

Eigen::MatrixXd gram_matrix_1d(const std::vector<Mode1D>& modes, const Confinement& c, const QuadratureOptions& opt) {
  require_slit(c);
  const double half = c.size() / 2.0;
  const auto count = static_cast<Eigen::Index>(modes.size());
  Eigen::MatrixXd gram(count, count);
  for (Eigen::Index i = 0; i < count; ++i) {
    for (Eigen::Index j = i; j < count; ++j) {
      const auto& a = modes[static_cast<std::size_t>(i)];
      const auto& b = modes[static_cast<std::size_t>(j)];
      const double v =
          integrate([&](double x) { return eval_mode_1d(a, c, x) * eval_mode_1d(b, c, x); }, -half, half, opt).value;
      gram(i, j) = v;
      gram(j, i) = v;
    }
  }
  return gram;
}

}  // namespace eup
