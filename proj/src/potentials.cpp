#include "krein/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "krein/errors.hpp"

namespace krein {

ProblemParams::ProblemParams(double b_, double c_) : b(b_), c(c_) {
  if (!(b > 0.0) || !(c > 0.0)) throw std::invalid_argument("ProblemParams: b and c must be positive");
}

Potential::Potential() : Potential(Kind{Sum{}}) {}

Potential::Potential(Kind k) : node_(std::make_shared<const Kind>(std::move(k))) {}

Potential Potential::zero() { return Potential(); }

Potential Potential::poschl_teller(double nu, double scale) {
  if (!(nu > 0.0)) throw std::invalid_argument("PoschlTeller: nu must be positive");
  return Potential(Kind{PoschlTeller{nu, scale}});
}

Potential Potential::gaussian_well(double depth, double width, double center) {
  if (!(width > 0.0)) throw std::invalid_argument("GaussianWell: width must be positive");
  return Potential(Kind{GaussianWell{depth, width, center}});
}

Potential Potential::square_well(double depth, double half_width) {
  if (!(half_width > 0.0)) throw std::invalid_argument("SquareWell: half_width must be positive");
  return Potential(Kind{SquareWell{depth, half_width}});
}

Potential Potential::sampled(std::vector<double> xs, std::vector<double> vs) {
  if (xs.size() != vs.size()) throw std::invalid_argument("Sampled: xs and vs differ in length");
  if (xs.size() < 2) throw std::invalid_argument("Sampled: need at least two nodes");
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i] > xs[i - 1])) throw std::invalid_argument("Sampled: grid must be strictly ascending");
  for (double v : vs)
    if (!std::isfinite(v)) throw std::invalid_argument("Sampled: non-finite value");
  return Potential(Kind{Sampled{std::move(xs), std::move(vs)}});
}

Potential Potential::sum(std::vector<Potential> parts) { return Potential(Kind{Sum{std::move(parts)}}); }

Potential Potential::scaled(Potential base, double s) {
  return Potential(Kind{Scaled{{std::move(base)}, s}});
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double sampled_value(const Potential::Sampled& s, double x) {
  if (x < s.xs.front() || x > s.xs.back()) return 0.0;
  auto it = std::upper_bound(s.xs.begin(), s.xs.end(), x);
  if (it == s.xs.end()) return s.vs.back();
  const auto j = static_cast<std::size_t>(it - s.xs.begin());
  const double t = (x - s.xs[j - 1]) / (s.xs[j] - s.xs[j - 1]);
  return (1.0 - t) * s.vs[j - 1] + t * s.vs[j];
}

}  // namespace

double Potential::operator()(double x) const {
  return std::visit(
      overloaded{
          [x](const PoschlTeller& p) {
            const double sech = 1.0 / std::cosh(x);
            return p.scale * sech * sech;
          },
          [x](const GaussianWell& g) {
            const double u = (x - g.center) / g.width;
            return g.depth * std::exp(-u * u);
          },
          [x](const SquareWell& w) { return std::abs(x) <= w.half_width ? w.depth : 0.0; },
          [x](const Sampled& s) { return sampled_value(s, x); },
          [x](const Sum& s) {
            double acc = 0.0;
            for (const auto& p : s.parts) acc += p(x);
            return acc;
          },
          [x](const Scaled& s) { return s.s == 0.0 ? 0.0 : s.s * s.base.front()(x); },
      },
      *node_);
}

std::vector<double> Potential::breakpoints() const {
  return std::visit(overloaded{
                        [](const SquareWell& w) { return std::vector<double>{-w.half_width, w.half_width}; },
                        [](const Sampled& s) { return s.xs; },
                        [](const Sum& s) {
                          std::vector<double> out;
                          for (const auto& p : s.parts) {
                            auto b = p.breakpoints();
                            out.insert(out.end(), b.begin(), b.end());
                          }
                          std::sort(out.begin(), out.end());
                          out.erase(std::unique(out.begin(), out.end()), out.end());
                          return out;
                        },
                        [](const Scaled& s) { return s.base.front().breakpoints(); },
                        [](const auto&) { return std::vector<double>{}; },
                    },
                    *node_);
}

bool Potential::is_trivially_zero() const {
  return std::visit(overloaded{
                        [](const PoschlTeller& p) { return p.scale == 0.0; },
                        [](const GaussianWell& g) { return g.depth == 0.0; },
                        [](const SquareWell& w) { return w.depth == 0.0; },
                        [](const Sampled& s) {
                          return std::all_of(s.vs.begin(), s.vs.end(), [](double v) { return v == 0.0; });
                        },
                        [](const Sum& s) {
                          return std::all_of(s.parts.begin(), s.parts.end(),
                                             [](const Potential& p) { return p.is_trivially_zero(); });
                        },
                        [](const Scaled& s) { return s.s == 0.0 || s.base.front().is_trivially_zero(); },
                    },
                    *node_);
}

bool Potential::contains_sampled() const {
  return std::visit(overloaded{
                        [](const Sampled&) { return true; },
                        [](const Sum& s) {
                          return std::any_of(s.parts.begin(), s.parts.end(),
                                             [](const Potential& p) { return p.contains_sampled(); });
                        },
                        [](const Scaled& s) { return s.base.front().contains_sampled(); },
                        [](const auto&) { return false; },
                    },
                    *node_);
}

Potential load_sampled_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open potential CSV: " + path);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty potential CSV: " + path);
  std::vector<double> xs, vs;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double x = 0.0, v = 0.0;
    if (!(row >> x >> v))
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected two numeric columns");
    xs.push_back(x);
    vs.push_back(v);
  }
  try {
    return Potential::sampled(std::move(xs), std::move(vs));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

double eval(const Potential& p, double x) { return p(x); }

double window_integral(const Potential& p, double x, int quad_points) {
  if (quad_points < 2) throw std::invalid_argument("window_integral: quad_points must be >= 2");
  return simpson([&p](double s) { return std::abs(p(s)); }, x, x + 1.0, p.breakpoints(), quad_points);
}

double m_v(const Potential& p, double search_half_width, int quad_points) {
  const auto w = static_cast<long>(std::floor(search_half_width));
  double best = 0.0;
  for (long n = -w; n <= w; ++n)
    best = std::max(best, window_integral(p, static_cast<double>(n), quad_points));
  return best;
}

double decay_defect(const Potential& p, double tail_start, double tail_end, int quad_points) {
  if (!(tail_end > tail_start)) throw std::invalid_argument("decay_defect: tail_end must exceed tail_start");
  double worst = 0.0;
  const auto lo = static_cast<long>(std::ceil(std::max(tail_start, 0.0)));
  const auto hi = static_cast<long>(std::floor(tail_end));
  for (long n = lo; n <= hi; ++n) {
    worst = std::max(worst, window_integral(p, static_cast<double>(n), quad_points));
    // mirrored window [-n - 1, -n], so both sides stay at distance >= n from the origin
    worst = std::max(worst, window_integral(p, static_cast<double>(-n - 1), quad_points));
  }
  return worst;
}

std::pair<double, double> negative_part_moments(const Potential& p, const ProblemParams& params,
                                                double half_width, int quad_points) {
  if (quad_points < 2) throw std::invalid_argument("negative_part_moments: quad_points must be >= 2");
  auto breaks = p.breakpoints();
  breaks.push_back(0.0);
  const double b2 = params.b * params.b;
  const double first = simpson(
      [&](double x) { return std::abs(x) * std::max(-(p(x) + b2), 0.0); }, -half_width, half_width, breaks,
      quad_points);
  const double second =
      simpson([&](double x) { return std::max(-p(x), 0.0); }, -half_width, half_width, breaks, quad_points);
  return {first, second};
}

}  // namespace krein
