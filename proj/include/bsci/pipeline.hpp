#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "bsci/entanglement.hpp"
#include "bsci/run_config.hpp"

namespace bsci {

struct StateResult {
  StateSpec state;
  double energy = 0.0;
  double S_L = 0.0;
  double S_vN = 0.0;
  double S_vN_nat = 0.0;
  double xi = 0.0;      // S_z = 0
  double trace = 0.0;   // sum g lambda after normalization
  int root = 0;
  double target_weight = 0.0;
  std::string dominant;
  double dominant_weight = 0.0;
  bool ambiguous = false;
  RdmSpectrum spectrum;
};

/// One box radius tried during escalation.
struct BoxStep {
  double r_max = 0.0;
  double gamma = 0.0;
  std::vector<double> energies;  // same order as the requested states
};

struct SolveDiagnostics {
  int n_splines = 0;
  double r_max = 0.0;
  double gamma = 0.0;
  double eps_1s = 0.0;        // computed 1s orbital energy
  double eps_1s_exact = 0.0;  // -Z^2/2
  double r0_1s = 0.0;         // R^0(1s1s,1s1s)
  double r0_1s_exact = 0.0;   // 5Z/8
  std::size_t singlet_configs = 0;
  std::size_t triplet_configs = 0;
  std::vector<double> singlet_roots;  // lowest few CI energies
  std::vector<double> triplet_roots;
  std::vector<BoxStep> box_steps;
  bool box_converged = true;
};

struct SolveReport {
  RunConfig config;  // resolved
  std::vector<StateResult> states;
  SolveDiagnostics diagnostics;
  std::vector<std::string> warnings;
  double seconds = 0.0;
};

/// basis -> orbitals -> CI -> RDM -> entropies for every requested state.
/// Below config.box_below_z the box grows until the energies settle.
SolveReport run_solve(const RunConfig& config);

struct ConvergenceCell {
  StateSpec state;
  int l_max = 0;
  int n_max = 0;
  double energy = 0.0;
  double S_L = 0.0;
  double S_vN = 0.0;
  double target_weight = 0.0;
  bool ambiguous = false;
};

struct ConvergenceTable {
  RunConfig config;  // resolved
  std::vector<ConvergenceCell> cells;  // per state, l_max outer, n_max inner
  std::vector<std::string> warnings;
  double seconds = 0.0;

  const ConvergenceCell* find(const StateSpec& s, int l_max, int n_max) const;
};

/// Grid over (l_values x n_values). One basis, one orbital set and one
/// Hamiltonian per spin serve every cell: each cell is a principal submatrix.
ConvergenceTable run_convergence(const RunConfig& config);

struct ZScanRow {
  double Z = 0.0;
  double inv_Z = 0.0;
  StateSpec state;
  bool ok = true;
  std::string message;  // failure reason or warnings
  double energy = 0.0;
  double S_L = 0.0;
  double S_vN = 0.0;
  double target_weight = 0.0;
  std::string dominant;
  double dominant_weight = 0.0;
  bool ambiguous = false;
  double r_max = 0.0;
  double gamma = 0.0;
  int n_splines = 0;
  bool box_converged = true;
};

struct ZScanResult {
  RunConfig config;  // resolved
  std::vector<ZScanRow> rows;  // ascending Z, states in config order
  double seconds = 0.0;

  std::size_t failures() const;
  /// Successful rows of one state, ascending Z.
  std::vector<ZScanRow> curve(const StateSpec& s) const;
};

/// Independent solve per Z; a failing row is recorded and the scan goes on.
ZScanResult run_zscan(const RunConfig& config,
                      const std::function<void(const ZScanRow&)>& progress = {});

}  // namespace bsci
