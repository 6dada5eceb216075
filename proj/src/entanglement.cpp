#include "bsci/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <string>

#include "bsci/error.hpp"

namespace bsci {

CoefficientBlocks coefficient_blocks(const Eigen::VectorXd& coefficients, const ConfigList& configs) {
  if (static_cast<std::size_t>(coefficients.size()) != configs.size())
    throw Error(ErrorKind::inconsistent_inputs, "coefficient vector does not match configuration list");
  if (configs.L != 0)
    throw Error(ErrorKind::inconsistent_inputs, "coefficient blocks need an L = 0 state");

  CoefficientBlocks out;
  out.S = configs.S;
  out.n_max = configs.n_max;
  for (int l = 0; l <= configs.l_max; ++l) {
    const int dim = configs.n_max - l;
    out.blocks.push_back(Eigen::MatrixXd::Zero(dim, dim));
  }
  const double sign = (configs.S == 0) ? 1.0 : -1.0;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const auto& cfg = configs[i];
    if (cfg.first.l != cfg.second.l)
      throw Error(ErrorKind::inconsistent_inputs, "L = 0 blocks need l1 = l2");
    const int l = cfg.first.l;
    const int a = cfg.first.n - l - 1;
    const int b = cfg.second.n - l - 1;
    auto& blk = out.blocks[static_cast<std::size_t>(l)];
    const double c = coefficients(static_cast<Eigen::Index>(i));
    if (a == b) {
      if (configs.S != 0) throw Error(ErrorKind::inconsistent_inputs, "equivalent-orbital triplet");
      blk(a, a) = c;
    } else {
      blk(a, b) = c * inv_sqrt2;
      blk(b, a) = sign * c * inv_sqrt2;
    }
  }
  return out;
}

Eigen::VectorXd configuration_coefficients(const CoefficientBlocks& blocks, const ConfigList& configs) {
  Eigen::VectorXd c(static_cast<Eigen::Index>(configs.size()));
  const double sqrt2 = std::sqrt(2.0);
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const auto& cfg = configs[i];
    const int l = cfg.first.l;
    const auto& blk = blocks.blocks.at(static_cast<std::size_t>(l));
    const int a = cfg.first.n - l - 1;
    const int b = cfg.second.n - l - 1;
    c(static_cast<Eigen::Index>(i)) = (a == b) ? blk(a, a) : sqrt2 * blk(a, b);
  }
  return c;
}

ReducedDensityMatrix reduced_density_matrix(const CoefficientBlocks& blocks) {
  ReducedDensityMatrix rdm;
  const double sign = (blocks.S == 0) ? 1.0 : -1.0;
  double norm2 = 0.0;
  for (std::size_t l = 0; l < blocks.blocks.size(); ++l) {
    const Eigen::MatrixXd& c = blocks.blocks[l];
    norm2 += c.squaredNorm();
    const Eigen::MatrixXd m = c + sign * c.transpose();
    const double g = static_cast<double>(2 * l + 1);
    Eigen::MatrixXd rho = (m * m.transpose()) / g;
    rho = (0.5 * (rho + rho.transpose())).eval();
    rdm.raw_trace += g * rho.trace();
    rdm.blocks.push_back(std::move(rho));
  }
  // M = 2C for (anti)symmetric C, so the raw trace is 4 |C|^2.
  if (std::abs(rdm.raw_trace - 4.0 * norm2) > 1e-10 * std::max(1.0, rdm.raw_trace))
    throw Error(ErrorKind::inconsistent_inputs,
                "coefficient blocks lack the exchange symmetry of their spin state");
  if (!(rdm.raw_trace > 0.0)) throw Error(ErrorKind::inconsistent_inputs, "zero state vector");
  for (auto& b : rdm.blocks) b /= rdm.raw_trace;
  return rdm;
}

double RdmSpectrum::trace() const {
  double s = 0.0;
  for (const auto& e : entries) s += e.degeneracy * e.lambda;
  return s;
}

double RdmSpectrum::purity() const {
  double s = 0.0;
  for (const auto& e : entries) s += e.degeneracy * e.lambda * e.lambda;
  return s;
}

RdmSpectrum rdm_spectrum(const ReducedDensityMatrix& rdm) {
  constexpr double kNegativeTolerance = 1e-10;
  RdmSpectrum spec;
  for (std::size_t l = 0; l < rdm.blocks.size(); ++l) {
    const auto& blk = rdm.blocks[l];
    if (blk.size() == 0) continue;
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(blk, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success)
      throw Error(ErrorKind::convergence_failure, "RDM block eigensolver failed");
    for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
      const double v = eig.eigenvalues()(i);
      if (v < -kNegativeTolerance)
        throw Error(ErrorKind::negative_eigenvalue,
                    "RDM eigenvalue " + std::to_string(v) + " in l=" + std::to_string(l));
      spec.entries.push_back({std::clamp(v, 0.0, 1.0), static_cast<int>(2 * l + 1),
                              static_cast<int>(l)});
    }
  }
  std::stable_sort(spec.entries.begin(), spec.entries.end(),
                   [](const Occupation& x, const Occupation& y) { return x.lambda > y.lambda; });
  return spec;
}

double von_neumann_entropy_nat(const RdmSpectrum& spec) {
  double s = 0.0;
  for (const auto& e : spec.entries)
    if (e.lambda > 1e-14) s -= e.degeneracy * e.lambda * std::log(e.lambda);
  return s;
}

double von_neumann_entropy(const RdmSpectrum& spec) {
  double s = 0.0;
  for (const auto& e : spec.entries)
    if (e.lambda > 1e-14) s -= e.degeneracy * e.lambda * std::log2(e.lambda);
  return s;
}

double linear_entropy(const RdmSpectrum& spec) { return 1.0 - spec.purity(); }

double spin_weighted_entanglement(double purity, SpinCase spin) {
  if (!(purity > 0.0) || purity > 1.0)
    throw Error(ErrorKind::invalid_purity, "purity must lie in (0, 1]");
  const double spin_purity = (spin == SpinCase::triplet_sz_pm1) ? 1.0 : 0.5;
  return 1.0 - 2.0 * purity * spin_purity;
}

void write_spectrum_csv(std::ostream& os, const RdmSpectrum& spec) {
  os << "l,lambda,degeneracy\n" << std::setprecision(17);
  for (const auto& e : spec.entries) os << e.l << ',' << e.lambda << ',' << e.degeneracy << '\n';
}

}  // namespace bsci
