#pragma once

#include <span>
#include <vector>

namespace bsci {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendre(int n);
  int size() const { return static_cast<int>(nodes.size()); }

  // Integrate f over [a, b].
  template <class F>
  double integrate(F&& f, double a, double b) const {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      sum += weights[i] * f(mid + half * nodes[i]);
    return half * sum;
  }
};

/// Composite Gauss-Legendre grid: p points on each breakpoint interval.
struct QuadratureGrid {
  int points_per_interval = 0;
  std::vector<double> breakpoints;  // J+1 distinct knots
  std::vector<double> x;            // J*p abscissae, ascending
  std::vector<double> w;            // matching weights

  int n_intervals() const { return static_cast<int>(breakpoints.size()) - 1; }
  int size() const { return static_cast<int>(x.size()); }
  int interval_of(int q) const { return q / points_per_interval; }
};

QuadratureGrid make_quadrature(std::span<const double> breakpoints, int p);

}  // namespace bsci
