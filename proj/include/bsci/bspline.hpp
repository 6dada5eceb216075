#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

#include "bsci/quadrature.hpp"

namespace bsci {

enum class GridKind { linear, exponential };

/// Interior-knot distribution. Exponential grids cluster knots near r = 0:
/// t_j = R (exp(gamma x_j) - 1) / (exp(gamma) - 1), x_j uniform in (0, 1).
struct GridSpec {
  GridKind kind = GridKind::exponential;
  double gamma = 6.0;
};

/// Knots t_0..t_{N+k-1} with k-fold multiplicity at 0 and R.
class KnotSequence {
 public:
  KnotSequence(std::vector<double> points, int order);

  std::span<const double> points() const { return points_; }
  double operator[](int i) const { return points_[static_cast<std::size_t>(i)]; }
  int order() const { return order_; }
  int n_splines() const { return static_cast<int>(points_.size()) - order_; }
  double r_max() const { return points_.back(); }

 private:
  std::vector<double> points_;
  int order_;
};

KnotSequence make_knots(double r_max, int n_splines, int order, GridSpec grid = {});

/// B-spline basis B_0..B_{N-1} of order k (degree k-1). Indices are 0-based.
class BSplineBasis {
 public:
  /// `quad_points` <= 0 selects k+1 Gauss points per interval.
  explicit BSplineBasis(KnotSequence knots, int quad_points = 0);

  const KnotSequence& knots() const { return knots_; }
  int size() const { return knots_.n_splines(); }
  int order() const { return knots_.order(); }
  double r_max() const { return knots_.r_max(); }
  std::span<const double> breakpoints() const { return breakpoints_; }
  const QuadratureGrid& quadrature() const { return quad_; }

  /// Cox-de Boor recurrence for a single spline.
  double value(int i, double r) const;
  double derivative(int i, double r) const;

  /// Knot index mu with t_mu <= r < t_{mu+1}; r = R maps to the last
  /// non-degenerate interval.
  int knot_interval(double r) const;

  /// All k splines that may be nonzero at r: fills values (and derivs when
  /// non-empty) for indices first..first+k-1 and returns first.
  int nonzero(double r, std::span<double> values, std::span<double> derivs = {}) const;

 private:
  void check_index(int i) const;
  double cox_de_boor(int i, int order, double r) const;

  KnotSequence knots_;
  std::vector<double> breakpoints_;
  QuadratureGrid quad_;
};

/// Splines evaluated on a quadrature grid: for point q the k nonzero
/// splines start at first[q].
struct SplineTable {
  int order = 0;
  std::vector<int> first;
  std::vector<double> values;  // size * order, row-major by point
  std::vector<double> derivs;

  double value(int q, int j) const { return values[static_cast<std::size_t>(q) * order + j]; }
  double deriv(int q, int j) const { return derivs[static_cast<std::size_t>(q) * order + j]; }
};

SplineTable tabulate(const BSplineBasis& basis, const QuadratureGrid& grid);

/// S_ij = int B_i B_j dr over all N splines.
Eigen::MatrixXd overlap_matrix(const BSplineBasis& basis);

}  // namespace bsci
