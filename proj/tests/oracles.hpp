#pragma once

// Test-only reference computations, independent of the library's solvers.

#include <Eigen/Core>
#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

/// Number of eigenvalues below x of the symmetric tridiagonal matrix
/// (diag, off), by the sign count of the LDL^T pivots.
inline int sturm_count(const Eigen::VectorXd& diag, const Eigen::VectorXd& off, double x) {
  int count = 0;
  double q = 1.0;
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    const double e2 = i > 0 ? off(i - 1) * off(i - 1) : 0.0;
    q = (diag(i) - x) - (i > 0 ? e2 / q : 0.0);
    if (q == 0.0) q = -1e-300;
    if (q < 0.0) ++count;
  }
  return count;
}

/// Sturm oscillation count for -c^2 y'' + (b^2 + V) y = E y with E < b^2:
/// the decaying solution from the left is integrated by RK4 and its sign
/// changes counted. Equals the number of eigenvalues below E.
inline int shooting_count(const std::function<double(double)>& v, double b, double c, double energy,
                          double half_width = 20.0, double step = 1e-3) {
  const double kappa = std::sqrt(b * b - energy) / c;
  auto rhs = [&](double x, double y, double yp, double& dy, double& dyp) {
    dy = yp;
    dyp = (b * b + v(x) - energy) / (c * c) * y;
  };
  double x = -half_width, y = 1e-30, yp = kappa * 1e-30;
  int zeros = 0;
  const int steps = static_cast<int>(std::round(2.0 * half_width / step));
  for (int i = 0; i < steps; ++i) {
    double k1, l1, k2, l2, k3, l3, k4, l4;
    rhs(x, y, yp, k1, l1);
    rhs(x + step / 2, y + step / 2 * k1, yp + step / 2 * l1, k2, l2);
    rhs(x + step / 2, y + step / 2 * k2, yp + step / 2 * l2, k3, l3);
    rhs(x + step, y + step * k3, yp + step * l3, k4, l4);
    const double yn = y + step / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    yp += step / 6 * (l1 + 2 * l2 + 2 * l3 + l4);
    if ((yn < 0.0) != (y < 0.0)) ++zeros;
    y = yn;
    x += step;
    // keep the magnitude bounded; only signs matter
    if (std::abs(y) > 1e200) {
      y *= 1e-200;
      yp *= 1e-200;
    }
  }
  return zeros;
}

/// Bound states b^2 - c^2 (nu - k)^2, k = 0..ceil(nu)-1, of -c^2 d^2 + b^2 - c^2 nu(nu+1) sech^2.
inline std::vector<double> poschl_teller_levels(double nu, double b, double c) {
  std::vector<double> out;
  for (int k = 0; k < nu; ++k) out.push_back(b * b - c * c * (nu - k) * (nu - k));
  return out;
}

/// int_a^b sech^2 = tanh b - tanh a.
inline double sech2_integral(double a, double b) { return std::tanh(b) - std::tanh(a); }

/// sech(x) tanh(x) sampled at the nodes and normalized in l2.
inline Eigen::VectorXd sech_tanh(const Eigen::VectorXd& x) {
  Eigen::VectorXd v(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) v(i) = std::tanh(x(i)) / std::cosh(x(i));
  return v / v.norm();
}

}  // namespace oracle
