#pragma once

// Reference implementations used to check the library. They share no code
// paths with the quantities they check: coupling symbols come from GSL,
// angular integrals from quadrature of spherical harmonics, and two-electron
// states are handled in an explicit m-resolved product basis.

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "bsci/ci.hpp"
#include "bsci/orbitals.hpp"
#include "bsci/slater.hpp"

namespace bsci::oracle {

/// GSL 3-j and 6-j (doubled arguments).
double threej_gsl(int two_j1, int two_j2, int two_j3, int two_m1, int two_m2, int two_m3);
double sixj_gsl(int two_j1, int two_j2, int two_j3, int two_j4, int two_j5, int two_j6);

/// <j1 m1 j2 m2 | J M> (doubled arguments).
double clebsch_gordan(int two_j1, int two_m1, int two_j2, int two_m2, int two_J, int two_M);

/// <l m | C^k_q | l' m'> by Gauss-Legendre quadrature over cos(theta).
double gaunt(int l, int m, int k, int q, int lp, int mp);

/// <(l1 l2) L M | C^k(1).C^k(2) | (l3 l4) L M> by explicit m summation.
double coupling_bruteforce(int l1, int l2, int l3, int l4, int L, int k, int M = 0);

/// Two-electron Hamiltonian between LS-coupled configurations, built in the
/// ordered spin-orbital product basis: each CSF is assembled from
/// Clebsch-Gordan coefficients, antisymmetrized and normalized numerically,
/// and H = h(1) + h(2) + sum_k r_<^k/r_>^(k+1) C^k(1).C^k(2).
Eigen::MatrixXd hamiltonian_bruteforce(const std::vector<Configuration>& configs,
                                       const RadialOrbitalSet& orbitals, const SlaterEngine& engine,
                                       int L, int S);

/// Every eigenvalue (with multiplicity, descending) of the one-electron
/// spatial density matrix of an L = 0 state, built over all (n, l, m).
std::vector<double> explicit_rdm_eigenvalues(const Eigen::VectorXd& coefficients,
                                             const ConfigList& configs);

/// Analytic hydrogenic Slater integrals.
inline double r0_1s1s(double Z) { return 5.0 * Z / 8.0; }
inline double f0_1s2s(double Z) { return 17.0 * Z / 81.0; }
inline double g0_1s2s(double Z) { return 16.0 * Z / 729.0; }

/// One named check of the self-test suite.
struct Check {
  std::string name;
  bool pass = false;
  double worst = 0.0;      // largest deviation seen
  double tolerance = 0.0;
  std::string detail;
};

/// Oracle suites shared by `bsci selftest` and the acceptance test.
std::vector<Check> run_selftest();

}  // namespace bsci::oracle
