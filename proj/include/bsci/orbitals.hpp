#pragma once

#include <Eigen/Dense>

#include <iosfwd>
#include <memory>
#include <vector>

#include "bsci/bspline.hpp"
#include "bsci/labels.hpp"

namespace bsci {

/// chi_nl(r) = sum_i c_i B_i(r), stored in the reduced convention r*R_nl(r).
struct RadialOrbital {
  OrbitalLabel label;
  double energy = 0.0;
  Eigen::VectorXd coefficients;  // over all N splines; first and last are zero
};

/// Generalized eigenpairs of one l, labelled n = l+1, l+2, ...
struct OrbitalSolution {
  Eigen::VectorXd energies;
  Eigen::MatrixXd vectors;  // interior coefficients, S-orthonormal columns
};

/// One-electron radial Hamiltonian on the interior splines 1..N-2:
/// H_ij = int [B'_i B'_j / 2 + (l(l+1)/(2r^2) - Z/r) B_i B_j] dr.
Eigen::MatrixXd radial_hamiltonian(const BSplineBasis& basis, double Z, int l);

/// Overlap restricted to the interior splines.
Eigen::MatrixXd interior_overlap(const BSplineBasis& basis);

/// Lowest n_max - l solutions of H c = eps S c. Each vector is scaled so its
/// first significant coefficient is positive.
OrbitalSolution solve_orbitals(const Eigen::MatrixXd& H, const Eigen::MatrixXd& S, int n_max,
                               int l);

class RadialOrbitalSet {
 public:
  RadialOrbitalSet(std::shared_ptr<const BSplineBasis> basis, double Z,
                   std::vector<std::vector<RadialOrbital>> by_l);

  const BSplineBasis& basis() const { return *basis_; }
  std::shared_ptr<const BSplineBasis> basis_ptr() const { return basis_; }
  double charge() const { return z_; }
  int l_max() const { return static_cast<int>(by_l_.size()) - 1; }
  int n_max() const { return n_max_; }

  const std::vector<RadialOrbital>& of_l(int l) const;
  const RadialOrbital& get(OrbitalLabel o) const;
  double energy(OrbitalLabel o) const { return get(o).energy; }

  /// chi_nl(r).
  double value(OrbitalLabel o, double r) const;

 private:
  std::shared_ptr<const BSplineBasis> basis_;
  double z_;
  int n_max_ = 0;
  std::vector<std::vector<RadialOrbital>> by_l_;
};

/// Orbitals for l = 0..l_max with n = l+1..n_max in a shared basis.
RadialOrbitalSet build_orbitals(std::shared_ptr<const BSplineBasis> basis, double Z, int l_max,
                                int n_max);

/// CSV dump: header "Z,n,l,energy,c0,c1,...", one row per orbital.
void write_orbitals_csv(std::ostream& os, const RadialOrbitalSet& set);

}  // namespace bsci
