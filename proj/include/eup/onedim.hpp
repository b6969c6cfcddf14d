#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "eup/core.hpp"
#include "eup/quadrature.hpp"

namespace eup {

/// Below this value of sqrt(alpha) z the correction factor is evaluated from
/// its even Maclaurin series instead of the closed form.
inline constexpr double kPhiSeriesThreshold = 1e-4;

/// Correction factor t / arctan(t) with t = sqrt(alpha) z.
///
/// Multiplies the flat-space slit bound pi hbar. Equals 1 in the flat limit,
/// grows like 1 + t^2/3 for small t and like 2t/pi for large t.
template <typename Scalar>
Scalar phi_factor(Scalar z, Scalar alpha) {
  using std::atan;
  using std::isfinite;
  using std::sqrt;
  if (!isfinite(z) || !isfinite(alpha)) throw DomainError("phi_factor: non-finite input");
  if (z < Scalar(0)) throw DomainError("phi_factor: z must be >= 0");
  if (alpha < Scalar(0)) throw DomainError("phi_factor: alpha must be >= 0");
  const Scalar t = sqrt(alpha) * z;
  if (t < Scalar(kPhiSeriesThreshold)) {
    // 1/(arctan(t)/t) = 1 + t^2/3 - 4 t^4/45 + 44 t^6/945 - ...
    const Scalar t2 = t * t;
    return Scalar(1) + t2 * (Scalar(1) / Scalar(3) - t2 * (Scalar(4) / Scalar(45)));
  }
  return t / atan(t);
}

enum class Parity { Even, Odd };
enum class Regime { FlatLimit, Moderate, LargeDeformation };

std::string to_string(Parity p);
std::string to_string(Regime r);

/// One discrete momentum eigenstate of the slit.
///
/// Odd n uses the cosine branch (even function of x), even n the sine branch.
struct Mode1D {
  int n = 1;
  Parity parity = Parity::Even;
  double p_n = 0.0;
  double norm_const = 0.0;
};

struct Bound1DResult {
  double sigma_p_min = 0.0;
  double product = 0.0;
  double phi = 1.0;
  Regime regime = Regime::FlatLimit;
};

struct Moments1D {
  double mean_p = 0.0;
  double mean_p2 = 0.0;
  double sigma_x = 0.0;
  double mean_x = 0.0;

  double sigma_p() const { return std::sqrt(std::max(0.0, mean_p2 - mean_p * mean_p)); }
};

struct RobertsonSchrodinger {
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
};

/// Minimal momentum spread for a particle prepared inside a slit of width dx:
/// sigma_p dx >= pi hbar phi_factor(dx/2, alpha).
Bound1DResult bound_1d(const Confinement& c);

/// Modes n = 1..n_max with p_n = n p_1, sorted by n.
std::vector<Mode1D> spectrum_1d(const Confinement& c, int n_max);

/// The n-th mode as it would appear in spectrum_1d.
Mode1D mode_1d(const Confinement& c, int n);

/// Wavefunction value at x in [-dx/2, dx/2]. Exactly zero at the walls.
double eval_mode_1d(const Mode1D& m, const Confinement& c, double x);

/// (1 + alpha x^2) psi'(x) + alpha x psi(x), i.e. the momentum operator
/// applied to the mode with the factor -i hbar removed. Computed from the
/// closed form, no numerical differentiation.
double momentum_action_1d(const Mode1D& m, const Confinement& c, double x);

/// Expectation values by adaptive quadrature.
///
/// For a real mode <p> is -i hbar times a real integral that must vanish; the
/// returned mean_p is hbar times that integral.
Moments1D moments_1d(const Mode1D& m, const Confinement& c, const QuadratureOptions& opt = {});

/// Checks sigma_p sigma_x >= hbar/2 [1 + alpha (sigma_x^2 + <x>^2)].
RobertsonSchrodinger robertson_schrodinger_check(const Mode1D& m, const Confinement& c,
                                                 const QuadratureOptions& opt = {});

/// L2 inner products <psi_i, psi_j> over the slit.
Eigen::MatrixXd gram_matrix_1d(const std::vector<Mode1D>& modes, const Confinement& c,
                               const QuadratureOptions& opt = {});

}  // namespace eup
