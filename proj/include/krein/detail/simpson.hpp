#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace krein {

template <class F>
double simpson(F&& f, double a, double b, const std::vector<double>& breaks, int intervals) {
  if (!(b > a)) return 0.0;
  std::vector<double> cuts{a};
  for (double t : breaks)
    if (t > a && t < b) cuts.push_back(t);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const double len = b - a;
  double total = 0.0;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double lo = cuts[s], hi = cuts[s + 1];
    int n = static_cast<int>(std::ceil(intervals * (hi - lo) / len));
    n = std::max(n, 2);
    if (n % 2) ++n;
    const double h = (hi - lo) / n;
    // one-sided limits at the cut points
    const double eps = 1e-12 * std::max(1.0, std::abs(hi - lo));
    double acc = f(lo + eps) + f(hi - eps);
    for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
    total += acc * h / 3.0;
  }
  return total;
}

}  // namespace krein
