#include "bsci/orbitals.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>

#include "bsci/error.hpp"

namespace bsci {

Eigen::MatrixXd radial_hamiltonian(const BSplineBasis& basis, double Z, int l) {
  if (l < 0) throw Error(ErrorKind::invalid_parameter, "l must be non-negative");
  const int n = basis.size();
  const int k = basis.order();
  const auto& grid = basis.quadrature();
  const SplineTable tab = tabulate(basis, grid);
  const double centrifugal = 0.5 * l * (l + 1);

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int q = 0; q < grid.size(); ++q) {
    const double r = grid.x[q];
    const double w = grid.w[q];
    const double v = centrifugal / (r * r) - Z / r;
    const int f = tab.first[q];
    for (int a = 0; a < k; ++a) {
      for (int b = a; b < k; ++b) {
        h(f + a, f + b) += w * (0.5 * tab.deriv(q, a) * tab.deriv(q, b) +
                                v * tab.value(q, a) * tab.value(q, b));
      }
    }
  }
  h.triangularView<Eigen::StrictlyLower>() = h.transpose();
  return h.block(1, 1, n - 2, n - 2);
}

Eigen::MatrixXd interior_overlap(const BSplineBasis& basis) {
  const int n = basis.size();
  return overlap_matrix(basis).block(1, 1, n - 2, n - 2);
}

OrbitalSolution solve_orbitals(const Eigen::MatrixXd& H, const Eigen::MatrixXd& S, int n_max,
                               int l) {
  const int dim = static_cast<int>(H.rows());
  if (H.cols() != dim || S.rows() != dim || S.cols() != dim)
    throw Error(ErrorKind::invalid_parameter, "H and S must be square and of equal size");
  const int count = n_max - l;
  if (l < 0 || count <= 0)
    throw Error(ErrorKind::invalid_parameter, "need n_max > l");
  if (count > dim)
    throw Error(ErrorKind::invalid_parameter,
                "basis has " + std::to_string(dim) + " interior splines, " + std::to_string(count) +
                    " orbitals requested for l=" + std::to_string(l));

  const Eigen::LLT<Eigen::MatrixXd> llt(S);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorKind::factorization_failure, "overlap matrix is not positive definite");

  // L^-1 H L^-T y = eps y, c = L^-T y.
  const Eigen::MatrixXd lower = llt.matrixL();
  Eigen::MatrixXd reduced = lower.triangularView<Eigen::Lower>().solve(H);
  reduced = lower.triangularView<Eigen::Lower>().solve(reduced.transpose()).eval();
  reduced = (0.5 * (reduced + reduced.transpose())).eval();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(reduced);
  if (eig.info() != Eigen::Success)
    throw Error(ErrorKind::convergence_failure, "orbital eigensolver failed");

  OrbitalSolution out;
  out.energies = eig.eigenvalues().head(count);
  out.vectors = lower.transpose().triangularView<Eigen::Upper>().solve(
      eig.eigenvectors().leftCols(count));
  for (int j = 0; j < count; ++j) {
    auto col = out.vectors.col(j);
    // chi ~ r^(l+1) near 0, first carried by interior spline l; the ones
    // below it only hold round-off.
    const double tol = 1e-10 * col.cwiseAbs().maxCoeff();
    for (int i = std::min(l, dim - 1); i < dim; ++i) {
      if (std::abs(col(i)) > tol) {
        if (col(i) < 0.0) col = -col;
        break;
      }
    }
  }
  return out;
}

RadialOrbitalSet::RadialOrbitalSet(std::shared_ptr<const BSplineBasis> basis, double Z,
                                   std::vector<std::vector<RadialOrbital>> by_l)
    : basis_(std::move(basis)), z_(Z), by_l_(std::move(by_l)) {
  if (!basis_) throw Error(ErrorKind::invalid_parameter, "orbital set needs a basis");
  for (const auto& orbs : by_l_)
    for (const auto& o : orbs) n_max_ = std::max(n_max_, o.label.n);
}

const std::vector<RadialOrbital>& RadialOrbitalSet::of_l(int l) const {
  if (l < 0 || l > l_max())
    throw Error(ErrorKind::index_out_of_range, "no orbitals with l=" + std::to_string(l));
  return by_l_[static_cast<std::size_t>(l)];
}

const RadialOrbital& RadialOrbitalSet::get(OrbitalLabel o) const {
  const auto& orbs = of_l(o.l);
  const int idx = o.n - o.l - 1;
  if (idx < 0 || idx >= static_cast<int>(orbs.size()))
    throw Error(ErrorKind::index_out_of_range, "orbital " + to_string(o) + " not in set");
  return orbs[static_cast<std::size_t>(idx)];
}

double RadialOrbitalSet::value(OrbitalLabel o, double r) const {
  const auto& c = get(o).coefficients;
  if (r < 0.0 || r > basis_->r_max()) return 0.0;
  const int k = basis_->order();
  std::vector<double> vals(static_cast<std::size_t>(k));
  const int first = basis_->nonzero(r, vals);
  double sum = 0.0;
  for (int j = 0; j < k; ++j) sum += c(first + j) * vals[j];
  return sum;
}

RadialOrbitalSet build_orbitals(std::shared_ptr<const BSplineBasis> basis, double Z, int l_max,
                                int n_max) {
  if (!(Z > 0.0)) throw Error(ErrorKind::invalid_parameter, "nuclear charge must be positive");
  if (l_max < 0 || n_max <= l_max)
    throw Error(ErrorKind::invalid_parameter, "need 0 <= l_max < n_max");
  const Eigen::MatrixXd s = interior_overlap(*basis);
  const int n = basis->size();
  std::vector<std::vector<RadialOrbital>> by_l(static_cast<std::size_t>(l_max + 1));
  for (int l = 0; l <= l_max; ++l) {
    const auto sol = solve_orbitals(radial_hamiltonian(*basis, Z, l), s, n_max, l);
    auto& orbs = by_l[static_cast<std::size_t>(l)];
    for (int j = 0; j < sol.energies.size(); ++j) {
      RadialOrbital o;
      o.label = {l + 1 + j, l};
      o.energy = sol.energies(j);
      o.coefficients = Eigen::VectorXd::Zero(n);
      o.coefficients.segment(1, n - 2) = sol.vectors.col(j);
      orbs.push_back(std::move(o));
    }
  }
  return RadialOrbitalSet(std::move(basis), Z, std::move(by_l));
}

void write_orbitals_csv(std::ostream& os, const RadialOrbitalSet& set) {
  const int n = set.basis().size();
  os << "Z,n,l,energy";
  for (int i = 0; i < n; ++i) os << ",c" << i;
  os << '\n';
  os << std::setprecision(17);
  for (int l = 0; l <= set.l_max(); ++l) {
    for (const auto& o : set.of_l(l)) {
      os << set.charge() << ',' << o.label.n << ',' << o.label.l << ',' << o.energy;
      for (int i = 0; i < n; ++i) os << ',' << o.coefficients(i);
      os << '\n';
    }
  }
}

}  // namespace bsci
