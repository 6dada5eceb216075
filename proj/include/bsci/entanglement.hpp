#pragma once

#include <Eigen/Dense>

#include <iosfwd>
#include <vector>

#include "bsci/ci.hpp"

namespace bsci {

/// Two-particle radial amplitudes per l: for an L = 0 state
///   Psi(1,2) = sum_l sum_{n n'} C^l_{n n'} chi_nl(1) chi_n'l(2) A_l(1,2)
/// where A_l is the normalized (l l)0 angular pair function. Singlet blocks
/// are symmetric, triplet blocks antisymmetric, and sum_l |C^l|_F^2 = 1.
struct CoefficientBlocks {
  int S = 0;
  int n_max = 0;
  std::vector<Eigen::MatrixXd> blocks;  // blocks[l] is (n_max - l) square
};

CoefficientBlocks coefficient_blocks(const Eigen::VectorXd& coefficients, const ConfigList& configs);
inline CoefficientBlocks coefficient_blocks(const CIState& state, const ConfigList& configs) {
  return coefficient_blocks(state.coefficients, configs);
}

/// Inverse of coefficient_blocks.
Eigen::VectorXd configuration_coefficients(const CoefficientBlocks& blocks, const ConfigList& configs);

/// One-particle reduced density matrix, block-diagonal in (l, m) with
/// m-independent blocks: rho^l = M M^T / (2l+1), M = C^l +- (C^l)^T, scaled
/// so that sum_l (2l+1) Tr rho^l = 1.
struct ReducedDensityMatrix {
  std::vector<Eigen::MatrixXd> blocks;
  double raw_trace = 0.0;  // sum_l (2l+1) Tr before scaling; 4 for a normalized state
};

ReducedDensityMatrix reduced_density_matrix(const CoefficientBlocks& blocks);

struct Occupation {
  double lambda = 0.0;
  int degeneracy = 1;  // 2l+1
  int l = 0;
};

/// Occupation numbers, sorted by decreasing lambda.
struct RdmSpectrum {
  std::vector<Occupation> entries;

  double trace() const;   // sum g lambda
  double purity() const;  // sum g lambda^2
};

RdmSpectrum rdm_spectrum(const ReducedDensityMatrix& rdm);

/// -sum g lambda log2 lambda; lambda <= 1e-14 contributes nothing.
double von_neumann_entropy(const RdmSpectrum& spec);
/// Same in nats.
double von_neumann_entropy_nat(const RdmSpectrum& spec);
/// 1 - sum g lambda^2.
double linear_entropy(const RdmSpectrum& spec);

enum class SpinCase { singlet, triplet_sz0, triplet_sz_pm1 };

/// xi = 1 - 2 Tr(rho_coord^2) Tr(rho_spin^2) with the spin purity fixed by
/// the spin case: 1 for triplet S_z = +-1, 1/2 otherwise.
double spin_weighted_entanglement(double purity, SpinCase spin);

/// CSV: header "l,lambda,degeneracy".
void write_spectrum_csv(std::ostream& os, const RdmSpectrum& spec);

}  // namespace bsci
