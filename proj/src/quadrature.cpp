#include "bsci/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <memory>
#include <utility>

#include "bsci/error.hpp"

namespace bsci {

GaussLegendre::GaussLegendre(int n) {
  if (n < 1) throw Error(ErrorKind::invalid_parameter, "Gauss-Legendre order must be >= 1");
  std::unique_ptr<gsl_integration_glfixed_table,
                  decltype(&gsl_integration_glfixed_table_free)>
      table(gsl_integration_glfixed_table_alloc(static_cast<size_t>(n)),
            &gsl_integration_glfixed_table_free);
  if (!table) throw Error(ErrorKind::invalid_parameter, "cannot allocate Gauss-Legendre table");
  nodes.resize(n);
  weights.resize(n);
  std::vector<std::pair<double, double>> pts(n);
  for (int i = 0; i < n; ++i)
    gsl_integration_glfixed_point(-1.0, 1.0, static_cast<size_t>(i), &pts[i].first,
                                  &pts[i].second, table.get());
  std::sort(pts.begin(), pts.end());
  for (int i = 0; i < n; ++i) {
    nodes[i] = pts[i].first;
    weights[i] = pts[i].second;
  }
}

QuadratureGrid make_quadrature(std::span<const double> breakpoints, int p) {
  if (breakpoints.size() < 2)
    throw Error(ErrorKind::invalid_parameter, "quadrature needs at least one interval");
  const GaussLegendre rule(p);
  QuadratureGrid grid;
  grid.points_per_interval = p;
  grid.breakpoints.assign(breakpoints.begin(), breakpoints.end());
  const int n_int = grid.n_intervals();
  grid.x.reserve(static_cast<std::size_t>(n_int) * p);
  grid.w.reserve(static_cast<std::size_t>(n_int) * p);
  for (int j = 0; j < n_int; ++j) {
    const double a = breakpoints[j];
    const double b = breakpoints[j + 1];
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    for (int s = 0; s < p; ++s) {
      grid.x.push_back(mid + half * rule.nodes[s]);
      grid.w.push_back(half * rule.weights[s]);
    }
  }
  return grid;
}

}  // namespace bsci
