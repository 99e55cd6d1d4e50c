#include "krein/bounds.hpp"

namespace krein {

std::optional<double> bargmann_bound(const Potential& p, const ProblemParams& params, double half_width,
                                     int quad_points) {
  const double moment = negative_part_moments(p, params, half_width, quad_points).first;
  if (moment == 0.0) return std::nullopt;
  return 1.0 + moment / (params.c * params.c);
}

double birman_schwinger_bound(const Potential& p, const ProblemParams& params, double half_width, int quad_points) {
  return negative_part_moments(p, params, half_width, quad_points).second / params.threshold();
}

BoundsReport compute_bounds(const Potential& p, const ProblemParams& params, double half_width, int kappa_minus,
                            int kernel_dim) {
  BoundsReport r;
  const auto [first, second] = negative_part_moments(p, params, half_width);
  if (first != 0.0) r.bargmann = 1.0 + first / (params.c * params.c);
  r.birman_schwinger = second / params.threshold();
  r.kappa_minus_observed = kappa_minus;
  r.kernel_dim_observed = kernel_dim;
  return r;
}

}  // namespace krein
