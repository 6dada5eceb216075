#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bsci/labels.hpp"
#include "bsci/orbitals.hpp"
#include "bsci/slater.hpp"

namespace bsci {

/// Two-electron configuration (n1 l1, n2 l2), canonical order first <= second.
struct Configuration {
  OrbitalLabel first;
  OrbitalLabel second;

  bool equivalent() const { return first == second; }
  bool operator==(const Configuration&) const = default;
};

std::string to_string(const Configuration& c);

struct ConfigList {
  std::vector<Configuration> configs;
  int l_max = 0;
  int n_max = 0;
  int L = 0;
  int S = 0;

  std::size_t size() const { return configs.size(); }
  const Configuration& operator[](std::size_t i) const { return configs[i]; }
  std::optional<std::size_t> find(const Configuration& c) const;
};

/// Closed-form count for L = 0: singlets sum_l T(n_max - l), triplets
/// sum_l C(n_max - l, 2).
std::size_t config_count(int l_max, int n_max, int S);

/// All Pauli-allowed L = 0 configurations with l1 = l2 <= l_max and
/// l+1 <= n1 <= n2 <= n_max (n1 < n2 for triplets), ordered by l, n1, n2.
ConfigList build_config_list(int l_max, int n_max, int L, int S);

/// <cfg_i|H|cfg_j> for LS-coupled configurations. Direct and exchange
/// multipole sums use coupling_coefficient; the exchange carries
/// (-1)^(L+S+l3+l4) and each equivalent-orbital configuration a 1/sqrt(2).
double hamiltonian_element(const Configuration& ci, const Configuration& cj,
                           const RadialOrbitalSet& orbitals, const SlaterIntegralTable& integrals,
                           int L, int S);

struct AssemblyOptions {
  int threads = 1;
  std::size_t memory_budget_bytes = std::size_t{3} << 30;
};

/// Dense CI Hamiltonian. Element values do not depend on `threads`.
Eigen::MatrixXd assemble_hamiltonian(const ConfigList& configs, const RadialOrbitalSet& orbitals,
                                     const SlaterEngine& engine, const AssemblyOptions& opts = {});

struct Spectrum {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns; largest-magnitude component positive
};

/// Full symmetric eigendecomposition.
Spectrum diagonalize(const Eigen::MatrixXd& H);
/// Lowest `count` eigenpairs only.
Spectrum diagonalize_lowest(const Eigen::MatrixXd& H, int count);

enum class TargetState { ground_1s2, s1s2s, s1s3s };

/// Label such as "1s2s 3S".
std::string state_label(TargetState t, int S);
TargetState parse_target(const std::string& name);
/// Configuration defining the target, e.g. (1s, 2s).
Configuration target_configuration(TargetState t);

enum class SelectionRule {
  energy_rank,  // k-th root of the symmetry block (1s^2 -> 0, 1s2s -> 1 for singlets ...)
  max_overlap,  // root with the largest weight on the target configuration
};

struct CIState {
  double energy = 0.0;
  Eigen::VectorXd coefficients;
  std::string label;
  int root = 0;
  double target_weight = 0.0;  // squared coefficient on the target configuration
  Configuration dominant;      // largest-weight configuration
  double dominant_weight = 0.0;
  bool ambiguous = false;      // target_weight < 0.5
};

CIState select_state(const Spectrum& spectrum, const ConfigList& configs, TargetState target,
                     SelectionRule rule = SelectionRule::energy_rank);

}  // namespace bsci
