#include "entropic_ghz/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace eghz {

namespace {

using Point = std::vector<double>;

Point affine(const Point& from, const Point& to, double t) {
  // from + t * (to - from)
  Point out(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) out[i] = from[i] + t * (to[i] - from[i]);
  return out;
}

double distance(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, const NelderMeadOptions& options) {
  const std::size_t n = x0.size();
  if (n == 0) throw std::invalid_argument("nelder_mead needs at least one dimension");

  NelderMeadResult result;
  auto eval = [&](const Point& p) {
    ++result.evaluations;
    const double v = f(p);
    return std::isnan(v) ? INFINITY : v;
  };

  std::vector<Point> simplex{x0};
  for (std::size_t i = 0; i < n; ++i) {
    Point p = x0;
    p[i] += options.initial_step;
    simplex.push_back(std::move(p));
  }
  std::vector<double> values;
  for (const auto& p : simplex) values.push_back(eval(p));

  std::vector<std::size_t> order(n + 1);
  while (true) {
    std::iota(order.begin(), order.end(), 0);
    // Stable on ties so the run is deterministic.
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[n - 1];

    double diameter = 0.0;
    for (const auto& p : simplex) diameter = std::max(diameter, distance(p, simplex[best]));
    if (diameter < options.diameter_tol) {
      result.converged = true;
      break;
    }
    if (result.evaluations >= options.max_evaluations) break;

    Point centroid(n, 0.0);
    for (std::size_t v = 0; v <= n; ++v) {
      if (v == worst) continue;
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[v][i] / static_cast<double>(n);
    }

    const Point reflected = affine(centroid, simplex[worst], -1.0);
    const double f_reflected = eval(reflected);
    if (f_reflected < values[best]) {
      const Point expanded = affine(centroid, simplex[worst], -2.0);
      const double f_expanded = eval(expanded);
      if (f_expanded < f_reflected) {
        simplex[worst] = expanded;
        values[worst] = f_expanded;
      } else {
        simplex[worst] = reflected;
        values[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < values[second_worst]) {
      simplex[worst] = reflected;
      values[worst] = f_reflected;
      continue;
    }

    const bool outside = f_reflected < values[worst];
    const Point contracted =
        outside ? affine(centroid, reflected, 0.5) : affine(centroid, simplex[worst], 0.5);
    const double f_contracted = eval(contracted);
    if (f_contracted < std::min(f_reflected, values[worst])) {
      simplex[worst] = contracted;
      values[worst] = f_contracted;
      continue;
    }

    for (std::size_t v = 0; v <= n; ++v) {
      if (v == best) continue;
      simplex[v] = affine(simplex[best], simplex[v], 0.5);
      values[v] = eval(simplex[v]);
    }
  }

  const auto best_it = std::min_element(values.begin(), values.end());
  result.x = simplex[static_cast<std::size_t>(best_it - values.begin())];
  result.value = *best_it;
  return result;
}

}  // namespace eghz
