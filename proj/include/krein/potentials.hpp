#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace krein {

/// Constants b, c > 0 of  -c^2 y'' + b^2 y + V y = -i z y'.
struct ProblemParams {
  double b = 1.0;
  double c = 1.0;

  ProblemParams() = default;
  ProblemParams(double b_, double c_);

  /// Bottom of the essential spectrum of the Krein-space operator, 2bc.
  double threshold() const { return 2.0 * b * c; }
};

/// Real-valued potential V(x). Immutable value type; copies share the
/// underlying node.
class Potential {
 public:
  /// V(x) = scale * sech^2(x). With scale = -c^2 nu (nu + 1) the bound
  /// states of H_V sit at b^2 - c^2 (nu - k)^2, k < nu.
  struct PoschlTeller {
    double nu;
    double scale;
  };
  /// V(x) = depth * exp(-((x - center) / width)^2).
  struct GaussianWell {
    double depth;
    double width;
    double center;
  };
  /// V(x) = depth on |x| <= half_width, 0 elsewhere.
  struct SquareWell {
    double depth;
    double half_width;
  };
  /// Piecewise linear through (xs, vs), zero outside [xs.front(), xs.back()].
  struct Sampled {
    std::vector<double> xs;
    std::vector<double> vs;
  };
  struct Sum {
    std::vector<Potential> parts;
  };
  struct Scaled {
    std::vector<Potential> base;  // exactly one element
    double s;
  };
  using Kind = std::variant<PoschlTeller, GaussianWell, SquareWell, Sampled, Sum, Scaled>;

  /// The zero potential (an empty Sum).
  Potential();

  static Potential zero();
  static Potential poschl_teller(double nu, double scale);
  static Potential gaussian_well(double depth, double width, double center = 0.0);
  static Potential square_well(double depth, double half_width);
  static Potential sampled(std::vector<double> xs, std::vector<double> vs);
  static Potential sum(std::vector<Potential> parts);
  static Potential scaled(Potential base, double s);

  double operator()(double x) const;

  const Kind& kind() const { return *node_; }

  /// Points where V or V' may jump (square-well edges, sample nodes).
  std::vector<double> breakpoints() const;

  /// True when V is identically zero by construction.
  bool is_trivially_zero() const;

  /// True if any Sampled node occurs in the expression tree.
  bool contains_sampled() const;

 private:
  explicit Potential(Kind k);
  std::shared_ptr<const Kind> node_;
};

/// Loads a two-column "x,value" CSV with a header row.
Potential load_sampled_csv(const std::string& path);

double eval(const Potential& p, double x);

/// Composite Simpson approximation of the integral of |V| over [x, x + 1].
/// Nodes are aligned with breakpoints of V.
double window_integral(const Potential& p, double x, int quad_points = 2000);

/// sup over integer n, |n| <= search_half_width, of window_integral(p, n).
double m_v(const Potential& p, double search_half_width, int quad_points = 2000);

/// max of window_integral over the windows [n, n + 1] and [-n - 1, -n] for
/// integer n with tail_start <= n <= tail_end.
double decay_defect(const Potential& p, double tail_start, double tail_end, int quad_points = 2000);

/// (int |x| |min(V + b^2, 0)| dx, int |V_-| dx) over [-X, X].
std::pair<double, double> negative_part_moments(const Potential& p, const ProblemParams& params,
                                                double half_width, int quad_points = 20000);

/// Composite Simpson of f over [a, b] with nodes aligned to `breaks`.
/// `intervals` is the total subinterval budget, split proportionally.
template <class F>
double simpson(F&& f, double a, double b, const std::vector<double>& breaks, int intervals);

}  // namespace krein

#include "krein/detail/simpson.hpp"
