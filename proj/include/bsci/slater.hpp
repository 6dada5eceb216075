#pragma once

#include <Eigen/Dense>

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <vector>

#include "bsci/orbitals.hpp"

namespace bsci {

/// Discretized multipole kernel r_<^k / r_>^(k+1) on a composite Gauss grid.
///
/// For a density rho(r) that is a polynomial of degree < p on each
/// breakpoint interval (true for products of two splines when p >= 2k-1),
///   Y_k(r_q) = int rho(r') r_<^k / r_>^(k+1) dr' = sum_q' K(q, q') rho(r_q')
/// holds to rounding error. Off-diagonal interval blocks are the plain Gauss
/// product rule; the diagonal blocks integrate the Lagrange interpolants of
/// rho exactly on both sides of the kink at r' = r_q.
class MultipoleKernel {
 public:
  MultipoleKernel(std::span<const double> breakpoints, int points_per_interval);

  const QuadratureGrid& grid() const { return grid_; }

  /// Kernel for rank k, built on first use. Thread-safe.
  const Eigen::MatrixXd& matrix(int k) const;

 private:
  Eigen::MatrixXd build(int k) const;

  QuadratureGrid grid_;
  mutable std::mutex mutex_;
  mutable std::map<int, std::unique_ptr<Eigen::MatrixXd>> kernels_;
};

/// Slater radial integrals
///   R^k(ab, cd) = int int chi_a(r1) chi_b(r2) r_<^k / r_>^(k+1) chi_c(r1) chi_d(r2)
/// for one orbital set.
class SlaterEngine {
 public:
  /// `points_per_interval` <= 0 selects 2k Gauss points per interval.
  explicit SlaterEngine(const RadialOrbitalSet& orbitals, int points_per_interval = 0);

  const RadialOrbitalSet& orbitals() const { return *orbitals_; }
  const MultipoleKernel& kernel() const { return kernel_; }

  double slater(int k, OrbitalLabel a, OrbitalLabel b, OrbitalLabel c, OrbitalLabel d) const;

  /// All R^k(ab, cd) with a, b of angular momentum l1 and c, d of l2, as a
  /// symmetric matrix T[(a,c), (b,d)] with pair index ia * n2 + ic (orbital
  /// positions within their l).
  Eigen::MatrixXd pair_table(int k, int l1, int l2) const;

  /// Orbital values on the kernel grid, one column per orbital of l.
  const Eigen::MatrixXd& values(int l) const { return values_[static_cast<std::size_t>(l)]; }

 private:
  const RadialOrbitalSet* orbitals_;
  MultipoleKernel kernel_;
  std::vector<Eigen::MatrixXd> values_;
};

/// Memoized R^k keyed on the canonical orbital quadruple: the integral is
/// invariant under a<->c, b<->d and (a,c)<->(b,d), so all eight equivalent
/// index orders share one entry. Safe for concurrent use.
class SlaterIntegralTable {
 public:
  explicit SlaterIntegralTable(const SlaterEngine& engine) : engine_(&engine) {}

  double get(int k, OrbitalLabel a, OrbitalLabel b, OrbitalLabel c, OrbitalLabel d) const;
  std::size_t size() const;

  using Key = std::array<int, 9>;
  static Key canonical_key(int k, OrbitalLabel a, OrbitalLabel b, OrbitalLabel c,
                           OrbitalLabel d);

 private:
  const SlaterEngine* engine_;
  mutable std::shared_mutex mutex_;
  mutable std::map<Key, double> cache_;
};

}  // namespace bsci
