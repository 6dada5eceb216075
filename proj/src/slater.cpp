#include "bsci/slater.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "bsci/error.hpp"

namespace bsci {

namespace {

// Sub-rule for the in-cell integrals; exact for r^k times a degree < p
// polynomial when 2m > k + p.
int sub_rule_order(int p) { return p + 12; }

double lagrange(std::span<const double> nodes, int s, double r) {
  double v = 1.0;
  for (int t = 0; t < static_cast<int>(nodes.size()); ++t)
    if (t != s) v *= (r - nodes[t]) / (nodes[s] - nodes[t]);
  return v;
}

// Integrates f over [lo, hi] with sub-intervals whose endpoint ratio is at
// most 2, so weights like r^-(k+1) stay well resolved near the origin.
template <class F>
double graded_integral(const GaussLegendre& rule, F&& f, double lo, double hi) {
  double sum = 0.0;
  double a = lo;
  while (a < hi) {
    const double b = (a > 0.0) ? std::min(hi, 2.0 * a) : hi;
    sum += rule.integrate(f, a, b);
    a = b;
  }
  return sum;
}

}  // namespace

MultipoleKernel::MultipoleKernel(std::span<const double> breakpoints, int points_per_interval)
    : grid_(make_quadrature(breakpoints, points_per_interval)) {}

const Eigen::MatrixXd& MultipoleKernel::matrix(int k) const {
  if (k < 0) throw Error(ErrorKind::invalid_parameter, "multipole rank must be >= 0");
  std::lock_guard lock(mutex_);
  auto& slot = kernels_[k];
  if (!slot) slot = std::make_unique<Eigen::MatrixXd>(build(k));
  return *slot;
}

Eigen::MatrixXd MultipoleKernel::build(int k) const {
  const int nq = grid_.size();
  const int p = grid_.points_per_interval;
  const GaussLegendre sub(sub_rule_order(p));
  Eigen::MatrixXd kmat(nq, nq);

  // Separable parts: r^k and r^-(k+1) at every node.
  std::vector<double> rk(static_cast<std::size_t>(nq)), rkm1(static_cast<std::size_t>(nq));
  for (int q = 0; q < nq; ++q) {
    rk[q] = std::pow(grid_.x[q], k);
    rkm1[q] = 1.0 / (rk[q] * grid_.x[q]);
  }

  for (int q = 0; q < nq; ++q) {
    const int j = grid_.interval_of(q);
    for (int qp = 0; qp < nq; ++qp) {
      const int jp = grid_.interval_of(qp);
      if (jp < j)
        kmat(q, qp) = grid_.w[qp] * rk[qp] * rkm1[q];
      else if (jp > j)
        kmat(q, qp) = grid_.w[qp] * rk[q] * rkm1[qp];
    }
    // Diagonal cell: exact integrals of the Lagrange basis on [a, r] and [r, b].
    const double a = grid_.breakpoints[j];
    const double b = grid_.breakpoints[j + 1];
    const double r = grid_.x[q];
    const std::span<const double> nodes(grid_.x.data() + static_cast<std::ptrdiff_t>(j) * p,
                                        static_cast<std::size_t>(p));
    for (int s = 0; s < p; ++s) {
      const auto inner = [&](double x) { return std::pow(x, k) * lagrange(nodes, s, x); };
      const auto outer = [&](double x) { return lagrange(nodes, s, x) / std::pow(x, k + 1); };
      const double below = sub.integrate(inner, a, r);
      const double above = graded_integral(sub, outer, r, b);
      kmat(q, j * p + s) = rkm1[q] * below + rk[q] * above;
    }
  }
  return kmat;
}

SlaterEngine::SlaterEngine(const RadialOrbitalSet& orbitals, int points_per_interval)
    : orbitals_(&orbitals),
      kernel_(orbitals.basis().breakpoints(),
              points_per_interval > 0 ? points_per_interval : 2 * orbitals.basis().order()) {
  const auto& basis = orbitals.basis();
  const auto& grid = kernel_.grid();
  const SplineTable tab = tabulate(basis, grid);
  const int k = basis.order();
  values_.resize(static_cast<std::size_t>(orbitals.l_max() + 1));
  for (int l = 0; l <= orbitals.l_max(); ++l) {
    const auto& orbs = orbitals.of_l(l);
    Eigen::MatrixXd v(grid.size(), static_cast<Eigen::Index>(orbs.size()));
    for (int q = 0; q < grid.size(); ++q) {
      const int f = tab.first[q];
      for (std::size_t o = 0; o < orbs.size(); ++o) {
        double sum = 0.0;
        for (int j = 0; j < k; ++j) sum += orbs[o].coefficients(f + j) * tab.value(q, j);
        v(q, static_cast<Eigen::Index>(o)) = sum;
      }
    }
    values_[static_cast<std::size_t>(l)] = std::move(v);
  }
}

double SlaterEngine::slater(int k, OrbitalLabel a, OrbitalLabel b, OrbitalLabel c,
                            OrbitalLabel d) const {
  auto column = [&](OrbitalLabel o) {
    orbitals_->get(o);  // validates the label
    return values(o.l).col(o.n - o.l - 1);
  };
  const auto& grid = kernel_.grid();
  const Eigen::Map<const Eigen::VectorXd> w(grid.w.data(), grid.size());
  const Eigen::VectorXd rho_bd = column(b).cwiseProduct(column(d));
  const Eigen::VectorXd rho_ac = column(a).cwiseProduct(column(c));
  const Eigen::VectorXd y = kernel_.matrix(k) * rho_bd;
  return rho_ac.cwiseProduct(w).dot(y);
}

Eigen::MatrixXd SlaterEngine::pair_table(int k, int l1, int l2) const {
  const Eigen::MatrixXd& v1 = values(l1);
  const Eigen::MatrixXd& v2 = values(l2);
  const auto n1 = v1.cols();
  const auto n2 = v2.cols();
  const auto nq = v1.rows();
  const auto& grid = kernel_.grid();
  const Eigen::Map<const Eigen::VectorXd> w(grid.w.data(), nq);

  Eigen::MatrixXd rho(nq, n1 * n2);
  for (Eigen::Index ia = 0; ia < n1; ++ia)
    for (Eigen::Index ic = 0; ic < n2; ++ic) rho.col(ia * n2 + ic) = v1.col(ia).cwiseProduct(v2.col(ic));

  Eigen::MatrixXd y = kernel_.matrix(k) * rho;
  y = w.asDiagonal() * y;
  Eigen::MatrixXd t = rho.transpose() * y;
  t = (0.5 * (t + t.transpose())).eval();
  return t;
}

SlaterIntegralTable::Key SlaterIntegralTable::canonical_key(int k, OrbitalLabel a, OrbitalLabel b,
                                                            OrbitalLabel c, OrbitalLabel d) {
  using P = std::pair<OrbitalLabel, OrbitalLabel>;
  P p1 = std::minmax(a, c);
  P p2 = std::minmax(b, d);
  if (p2 < p1) std::swap(p1, p2);
  return {k, p1.first.n, p1.first.l, p1.second.n, p1.second.l,
          p2.first.n, p2.first.l, p2.second.n, p2.second.l};
}

double SlaterIntegralTable::get(int k, OrbitalLabel a, OrbitalLabel b, OrbitalLabel c,
                                OrbitalLabel d) const {
  const Key key = canonical_key(k, a, b, c, d);
  {
    std::shared_lock lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  // Evaluate in canonical order so every equivalent request sees one value.
  const double v = engine_->slater(k, {key[1], key[2]}, {key[5], key[6]}, {key[3], key[4]},
                                   {key[7], key[8]});
  std::unique_lock lock(mutex_);
  return cache_.emplace(key, v).first->second;
}

std::size_t SlaterIntegralTable::size() const {
  std::shared_lock lock(mutex_);
  return cache_.size();
}

}  // namespace bsci
