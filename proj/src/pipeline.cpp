#include "bsci/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <memory>
#include <optional>

#include "bsci/error.hpp"
#include "bsci/slater.hpp"

namespace bsci {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

int roots_needed(const std::vector<StateSpec>& states, int S, SelectionRule rule) {
  int need = 4;
  for (const auto& s : states)
    if (s.S == S) need = std::max(need, static_cast<int>(s.target) - S + 1);
  if (rule == SelectionRule::max_overlap) need = std::max(need, 10);
  return need;
}

StateResult analyse(const Spectrum& spectrum, const ConfigList& configs, const StateSpec& s,
                    SelectionRule rule) {
  const CIState st = select_state(spectrum, configs, s.target, rule);
  StateResult r;
  r.state = s;
  r.energy = st.energy;
  r.root = st.root;
  r.target_weight = st.target_weight;
  r.dominant = to_string(st.dominant);
  r.dominant_weight = st.dominant_weight;
  r.ambiguous = st.ambiguous;
  r.spectrum = rdm_spectrum(reduced_density_matrix(coefficient_blocks(st, configs)));
  r.S_L = linear_entropy(r.spectrum);
  r.S_vN = von_neumann_entropy(r.spectrum);
  r.S_vN_nat = von_neumann_entropy_nat(r.spectrum);
  r.trace = r.spectrum.trace();
  r.xi = spin_weighted_entanglement(r.spectrum.purity(),
                                    s.S == 0 ? SpinCase::singlet : SpinCase::triplet_sz0);
  return r;
}

struct Basis {
  std::shared_ptr<const BSplineBasis> splines;
  std::unique_ptr<RadialOrbitalSet> orbitals;
  std::unique_ptr<SlaterEngine> engine;
};

Basis make_basis(const RunConfig& cfg, double r_max, double gamma) {
  Basis b;
  b.splines = std::make_shared<BSplineBasis>(
      make_knots(r_max, cfg.n_splines, cfg.order, GridSpec{cfg.grid, gamma}), cfg.quad_points);
  b.orbitals = std::make_unique<RadialOrbitalSet>(build_orbitals(b.splines, cfg.Z, cfg.l_max, cfg.n_max));
  b.engine = std::make_unique<SlaterEngine>(*b.orbitals, cfg.slater_points);
  return b;
}

struct Attempt {
  std::vector<StateResult> states;
  SolveDiagnostics diag;
};

Attempt solve_at(const RunConfig& cfg, double r_max, double gamma) {
  const Basis b = make_basis(cfg, r_max, gamma);
  Attempt a;
  a.diag.n_splines = cfg.n_splines;
  a.diag.r_max = r_max;
  a.diag.gamma = gamma;
  a.diag.eps_1s = b.orbitals->energy({1, 0});
  a.diag.eps_1s_exact = -0.5 * cfg.Z * cfg.Z;
  a.diag.r0_1s = b.engine->slater(0, {1, 0}, {1, 0}, {1, 0}, {1, 0});
  a.diag.r0_1s_exact = 0.625 * cfg.Z;

  AssemblyOptions opts;
  opts.threads = cfg.threads;
  a.states.resize(cfg.states.size());
  for (int S = 0; S <= 1; ++S) {
    if (std::none_of(cfg.states.begin(), cfg.states.end(), [S](const StateSpec& s) { return s.S == S; }))
      continue;
    const ConfigList configs = build_config_list(cfg.l_max, cfg.n_max, 0, S);
    const Spectrum spectrum = diagonalize_lowest(
        assemble_hamiltonian(configs, *b.orbitals, *b.engine, opts),
        roots_needed(cfg.states, S, cfg.selection));
    auto& roots = (S == 0) ? a.diag.singlet_roots : a.diag.triplet_roots;
    roots.assign(spectrum.values.data(), spectrum.values.data() + spectrum.values.size());
    (S == 0 ? a.diag.singlet_configs : a.diag.triplet_configs) = configs.size();
    for (std::size_t i = 0; i < cfg.states.size(); ++i)
      if (cfg.states[i].S == S) a.states[i] = analyse(spectrum, configs, cfg.states[i], cfg.selection);
  }
  return a;
}

BoxStep step_of(const Attempt& a) {
  BoxStep s{a.diag.r_max, a.diag.gamma, {}};
  for (const auto& st : a.states) s.energies.push_back(st.energy);
  return s;
}

double max_change(const BoxStep& x, const BoxStep& y) {
  double d = 0.0;
  for (std::size_t i = 0; i < x.energies.size(); ++i)
    d = std::max(d, std::abs(x.energies[i] - y.energies[i]));
  return d;
}

std::vector<std::string> state_warnings(const std::vector<StateResult>& states) {
  std::vector<std::string> w;
  for (const auto& s : states)
    if (s.ambiguous)
      w.push_back(to_string(s.state) + ": target configuration weight " + fmt("%.3f", s.target_weight) +
                  " < 0.5, dominant " + s.dominant);
  return w;
}

}  // namespace

SolveReport run_solve(const RunConfig& config) {
  const auto t0 = Clock::now();
  SolveReport rep;
  rep.config = resolve(config, Verb::solve);
  const RunConfig& cfg = rep.config;

  Attempt cur = solve_at(cfg, cfg.r_max, cfg.gamma);
  std::vector<BoxStep> steps{step_of(cur)};
  bool converged = true;
  if (cfg.Z < cfg.box_below_z) {
    converged = false;
    for (;;) {
      const double r_next = std::min(2.0 * cur.diag.r_max, cfg.box_r_limit);
      if (!(r_next > cur.diag.r_max)) break;
      // Shifting gamma by ln(ratio) keeps the inner knots roughly in place.
      const double g_next = (cfg.grid == GridKind::exponential)
                                ? cur.diag.gamma + std::log(r_next / cur.diag.r_max)
                                : cur.diag.gamma;
      Attempt next = solve_at(cfg, r_next, g_next);
      steps.push_back(step_of(next));
      const double change = max_change(steps[steps.size() - 2], steps.back());
      cur = std::move(next);
      if (change < cfg.box_tolerance) {
        converged = true;
        break;
      }
    }
  }
  rep.states = std::move(cur.states);
  rep.diagnostics = std::move(cur.diag);
  rep.diagnostics.box_steps = std::move(steps);
  rep.diagnostics.box_converged = converged;
  rep.warnings = state_warnings(rep.states);
  if (!converged) {
    const auto& s = rep.diagnostics.box_steps;
    rep.warnings.push_back("box radius not converged: last energy change " +
                           fmt("%.3g", s.size() > 1 ? max_change(s[s.size() - 2], s.back()) : 0.0) +
                           " at r_max " + fmt("%g", rep.diagnostics.r_max));
  }
  rep.seconds = seconds_since(t0);
  return rep;
}

const ConvergenceCell* ConvergenceTable::find(const StateSpec& s, int l_max, int n_max) const {
  for (const auto& c : cells)
    if (c.state == s && c.l_max == l_max && c.n_max == n_max) return &c;
  return nullptr;
}

ConvergenceTable run_convergence(const RunConfig& config) {
  const auto t0 = Clock::now();
  ConvergenceTable table;
  table.config = resolve(config, Verb::converge);
  RunConfig cfg = table.config;
  cfg.l_max = cfg.l_values.back();
  cfg.n_max = cfg.n_values.back();
  const Basis b = make_basis(cfg, cfg.r_max, cfg.gamma);

  AssemblyOptions opts;
  opts.threads = cfg.threads;
  for (int S = 0; S <= 1; ++S) {
    std::vector<StateSpec> wanted;
    for (const auto& s : cfg.states)
      if (s.S == S) wanted.push_back(s);
    if (wanted.empty()) continue;
    const ConfigList full = build_config_list(cfg.l_max, cfg.n_max, 0, S);
    const Eigen::MatrixXd H = assemble_hamiltonian(full, *b.orbitals, *b.engine, opts);
    // Position of (l, n1, n2) in the full list.
    std::vector<Eigen::Index> where((cfg.l_max + 1) * (cfg.n_max + 1) * (cfg.n_max + 1), -1);
    auto slot = [&](const Configuration& c) {
      return (static_cast<std::size_t>(c.first.l) * (cfg.n_max + 1) + c.first.n) * (cfg.n_max + 1) +
             c.second.n;
    };
    for (std::size_t i = 0; i < full.size(); ++i) where[slot(full[i])] = static_cast<Eigen::Index>(i);

    for (const auto& s : wanted) {
      for (int l : cfg.l_values) {
        for (int n : cfg.n_values) {
          if (n <= l) continue;
          const ConfigList sub = build_config_list(l, n, 0, S);
          if (sub.size() == 0) continue;
          std::vector<Eigen::Index> idx;
          idx.reserve(sub.size());
          for (const auto& c : sub.configs) idx.push_back(where[slot(c)]);
          const Eigen::MatrixXd Hs = H(idx, idx);
          const Spectrum sp = diagonalize_lowest(Hs, roots_needed(cfg.states, S, cfg.selection));
          ConvergenceCell cell;
          cell.state = s;
          cell.l_max = l;
          cell.n_max = n;
          try {
            const StateResult r = analyse(sp, sub, s, cfg.selection);
            cell.energy = r.energy;
            cell.S_L = r.S_L;
            cell.S_vN = r.S_vN;
            cell.target_weight = r.target_weight;
            cell.ambiguous = r.ambiguous;
          } catch (const Error& e) {
            table.warnings.push_back(to_string(s) + " l_max=" + std::to_string(l) +
                                     " n_max=" + std::to_string(n) + ": " + e.what());
            continue;
          }
          table.cells.push_back(cell);
        }
      }
    }
  }
  // Cells are built per spin; restore the requested state order.
  std::stable_sort(table.cells.begin(), table.cells.end(), [&](const auto& x, const auto& y) {
    auto pos = [&](const StateSpec& s) {
      return std::find(cfg.states.begin(), cfg.states.end(), s) - cfg.states.begin();
    };
    return pos(x.state) < pos(y.state);
  });
  table.seconds = seconds_since(t0);
  return table;
}

std::size_t ZScanResult::failures() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const ZScanRow& r) { return !r.ok; }));
}

std::vector<ZScanRow> ZScanResult::curve(const StateSpec& s) const {
  std::vector<ZScanRow> out;
  for (const auto& r : rows)
    if (r.ok && r.state == s) out.push_back(r);
  return out;
}

ZScanResult run_zscan(const RunConfig& config, const std::function<void(const ZScanRow&)>& progress) {
  const auto t0 = Clock::now();
  ZScanResult result;
  result.config = resolve(config, Verb::zscan);
  const RunConfig& base = result.config;

  for (double Z : base.z_values) {
    RunConfig row_cfg = base;
    row_cfg.Z = Z;
    std::vector<ZScanRow> rows;
    try {
      const SolveReport rep = run_solve(row_cfg);
      std::string note;
      for (const auto& w : rep.warnings) note += (note.empty() ? "" : "; ") + w;
      for (const auto& st : rep.states) {
        ZScanRow r;
        r.Z = Z;
        r.inv_Z = 1.0 / Z;
        r.state = st.state;
        r.message = note;
        r.energy = st.energy;
        r.S_L = st.S_L;
        r.S_vN = st.S_vN;
        r.target_weight = st.target_weight;
        r.dominant = st.dominant;
        r.dominant_weight = st.dominant_weight;
        r.ambiguous = st.ambiguous;
        r.r_max = rep.diagnostics.r_max;
        r.gamma = rep.diagnostics.gamma;
        r.n_splines = rep.config.n_splines;
        r.box_converged = rep.diagnostics.box_converged;
        rows.push_back(std::move(r));
      }
    } catch (const std::exception& e) {
      rows.clear();
      for (const auto& s : base.states) {
        ZScanRow r;
        r.Z = Z;
        r.inv_Z = 1.0 / Z;
        r.state = s;
        r.ok = false;
        r.message = e.what();
        rows.push_back(std::move(r));
      }
    }
    for (auto& r : rows) {
      if (progress) progress(r);
      result.rows.push_back(std::move(r));
    }
  }
  result.seconds = seconds_since(t0);
  return result;
}

}  // namespace bsci
