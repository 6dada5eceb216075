#include "bsci/bspline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bsci/error.hpp"

namespace bsci {

KnotSequence::KnotSequence(std::vector<double> points, int order)
    : points_(std::move(points)), order_(order) {
  if (order_ < 1) throw Error(ErrorKind::invalid_parameter, "spline order must be >= 1");
  const int n = n_splines();
  if (n <= order_)
    throw Error(ErrorKind::invalid_parameter,
                "need more splines than the order (N=" + std::to_string(n) +
                    ", k=" + std::to_string(order_) + ")");
  const double r0 = points_.front();
  const double rmax = points_.back();
  if (!(rmax > r0)) throw Error(ErrorKind::invalid_parameter, "knot span must be positive");
  for (int i = 0; i < order_; ++i) {
    if (points_[i] != r0 || points_[points_.size() - 1 - i] != rmax)
      throw Error(ErrorKind::invalid_parameter, "end knots need multiplicity equal to the order");
  }
  for (std::size_t i = order_ - 1; i + order_ < points_.size(); ++i) {
    if (!(points_[i + 1] > points_[i]))
      throw Error(ErrorKind::invalid_parameter, "interior knots must be strictly increasing");
  }
}

KnotSequence make_knots(double r_max, int n_splines, int order, GridSpec grid) {
  if (!(r_max > 0.0)) throw Error(ErrorKind::invalid_parameter, "r_max must be positive");
  if (order < 1) throw Error(ErrorKind::invalid_parameter, "spline order must be >= 1");
  if (n_splines <= order)
    throw Error(ErrorKind::invalid_parameter, "n_splines must exceed the order");
  if (grid.kind == GridKind::exponential && !(grid.gamma > 0.0))
    throw Error(ErrorKind::invalid_parameter, "exponential grid needs gamma > 0");

  const int n_interior = n_splines - order;
  std::vector<double> t(static_cast<std::size_t>(n_splines + order), 0.0);
  const double denom = std::expm1(grid.gamma);
  for (int j = 1; j <= n_interior; ++j) {
    const double x = static_cast<double>(j) / (n_interior + 1);
    const double r = grid.kind == GridKind::linear ? r_max * x
                                                   : r_max * std::expm1(grid.gamma * x) / denom;
    t[static_cast<std::size_t>(order - 1 + j)] = r;
  }
  for (int i = 0; i < order; ++i) t[t.size() - 1 - i] = r_max;
  return KnotSequence(std::move(t), order);
}

BSplineBasis::BSplineBasis(KnotSequence knots, int quad_points) : knots_(std::move(knots)) {
  const auto pts = knots_.points();
  breakpoints_.push_back(pts.front());
  for (double t : pts)
    if (t > breakpoints_.back()) breakpoints_.push_back(t);
  const int p = quad_points > 0 ? quad_points : order() + 1;
  quad_ = make_quadrature(breakpoints_, p);
}

void BSplineBasis::check_index(int i) const {
  if (i < 0 || i >= size())
    throw Error(ErrorKind::index_out_of_range,
                "spline index " + std::to_string(i) + " not in [0, " + std::to_string(size()) + ")");
}

int BSplineBasis::knot_interval(double r) const {
  const int k = order();
  const int n = size();
  if (r >= r_max()) return n - 1;
  const auto pts = knots_.points();
  const auto it = std::upper_bound(pts.begin() + k - 1, pts.begin() + n + 1, r);
  const int mu = static_cast<int>(it - pts.begin()) - 1;
  return std::clamp(mu, k - 1, n - 1);
}

double BSplineBasis::cox_de_boor(int i, int ord, double r) const {
  const auto& t = knots_;
  const int mu = knot_interval(r);
  std::vector<double> b(static_cast<std::size_t>(ord));
  for (int j = 0; j < ord; ++j) b[j] = (i + j == mu) ? 1.0 : 0.0;
  for (int m = 2; m <= ord; ++m) {
    for (int j = 0; j + m <= ord; ++j) {
      const int a = i + j;
      // Terms with a vanishing denominator are dropped.
      const double d1 = t[a + m - 1] - t[a];
      const double d2 = t[a + m] - t[a + 1];
      const double w1 = d1 > 0.0 ? (r - t[a]) / d1 : 0.0;
      const double w2 = d2 > 0.0 ? (t[a + m] - r) / d2 : 0.0;
      b[j] = w1 * b[j] + w2 * b[j + 1];
    }
  }
  return b[0];
}

double BSplineBasis::value(int i, double r) const {
  check_index(i);
  const int k = order();
  if (r < knots_[i] || r > knots_[i + k]) return 0.0;
  return cox_de_boor(i, k, r);
}

double BSplineBasis::derivative(int i, double r) const {
  check_index(i);
  const int k = order();
  if (k == 1 || r < knots_[i] || r > knots_[i + k]) return 0.0;
  const double d1 = knots_[i + k - 1] - knots_[i];
  const double d2 = knots_[i + k] - knots_[i + 1];
  double out = 0.0;
  if (d1 > 0.0) out += cox_de_boor(i, k - 1, r) / d1;
  if (d2 > 0.0)
    out -= cox_de_boor(i + 1, k - 1, r) / d2;
  return (k - 1) * out;
}

int BSplineBasis::nonzero(double r, std::span<double> values, std::span<double> derivs) const {
  const int k = order();
  const int p = k - 1;
  const int mu = knot_interval(r);
  const auto& t = knots_;

  std::vector<double> left(static_cast<std::size_t>(k)), right(static_cast<std::size_t>(k));
  std::vector<double> n(static_cast<std::size_t>(k), 0.0), lower;
  n[0] = 1.0;
  for (int j = 1; j <= p; ++j) {
    if (j == p) lower.assign(n.begin(), n.begin() + p);
    left[j] = r - t[mu + 1 - j];
    right[j] = t[mu + j] - r;
    double saved = 0.0;
    for (int rr = 0; rr < j; ++rr) {
      const double temp = n[rr] / (right[rr + 1] + left[j - rr]);
      n[rr] = saved + right[rr + 1] * temp;
      saved = left[j - rr] * temp;
    }
    n[j] = saved;
  }
  std::copy(n.begin(), n.end(), values.begin());

  if (!derivs.empty()) {
    if (p == 0) {
      derivs[0] = 0.0;
    } else {
      // lower[j] holds B_{mu-p+1+j, k-1}.
      for (int j = 0; j <= p; ++j) {
        const int i = mu - p + j;
        const double b_lo = j >= 1 ? lower[j - 1] : 0.0;
        const double b_hi = j < p ? lower[j] : 0.0;
        const double d1 = t[i + k - 1] - t[i];
        const double d2 = t[i + k] - t[i + 1];
        double d = 0.0;
        if (d1 > 0.0) d += b_lo / d1;
        if (d2 > 0.0) d -= b_hi / d2;
        derivs[j] = p * d;
      }
    }
  }
  return mu - p;
}

SplineTable tabulate(const BSplineBasis& basis, const QuadratureGrid& grid) {
  const int k = basis.order();
  SplineTable table;
  table.order = k;
  const auto n_pts = static_cast<std::size_t>(grid.size());
  table.first.resize(n_pts);
  table.values.resize(n_pts * k);
  table.derivs.resize(n_pts * k);
  for (std::size_t q = 0; q < n_pts; ++q) {
    table.first[q] = basis.nonzero(grid.x[q], std::span(table.values).subspan(q * k, k),
                                   std::span(table.derivs).subspan(q * k, k));
  }
  return table;
}

Eigen::MatrixXd overlap_matrix(const BSplineBasis& basis) {
  const int n = basis.size();
  const int k = basis.order();
  const auto& grid = basis.quadrature();
  const SplineTable tab = tabulate(basis, grid);
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  for (int q = 0; q < grid.size(); ++q) {
    const int f = tab.first[q];
    for (int a = 0; a < k; ++a)
      for (int b = a; b < k; ++b) s(f + a, f + b) += grid.w[q] * tab.value(q, a) * tab.value(q, b);
  }
  s.triangularView<Eigen::StrictlyLower>() = s.transpose();
  return s;
}

}  // namespace bsci
