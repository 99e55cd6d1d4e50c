#pragma once

#include <optional>

#include "krein/potentials.hpp"

namespace krein {

struct BoundsReport {
  std::optional<double> bargmann;  // absent when V >= -b^2 on the quadrature grid
  double birman_schwinger = 0.0;
  int kappa_minus_observed = 0;
  int kernel_dim_observed = 0;

  bool bargmann_holds() const { return !bargmann || *bargmann >= kappa_minus_observed; }
  bool birman_schwinger_holds() const {
    return birman_schwinger >= kappa_minus_observed + kernel_dim_observed;
  }
};

/// 1 + c^{-2} int |x| |min(V + b^2, 0)| dx over [-X, X], or nothing when the
/// integrand vanishes (then there is no negative spectrum at all).
std::optional<double> bargmann_bound(const Potential& p, const ProblemParams& params, double half_width,
                                     int quad_points = 20000);

/// (2bc)^{-1} int |V_-| dx over [-X, X]; bounds the count of nonpositive eigenvalues.
double birman_schwinger_bound(const Potential& p, const ProblemParams& params, double half_width,
                              int quad_points = 20000);

BoundsReport compute_bounds(const Potential& p, const ProblemParams& params, double half_width, int kappa_minus,
                            int kernel_dim);

}  // namespace krein
