// bsci: two-electron CI entanglement runs from the command line.
//
//   bsci solve    --z 2 --state 1s2s-3S --lmax 3 --nmax 25
//   bsci converge --config he.cfg --out tables/
//   bsci zscan    --format csv --format svg --out scan/
//   bsci selftest

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "bsci/error.hpp"
#include "bsci/pipeline.hpp"
#include "bsci/report_io.hpp"
#include "oracles.hpp"

namespace {

enum Exit { kOk = 0, kConfig = 1, kNumeric = 2, kPartial = 3 };

struct Flags {
  std::string config;
  std::optional<double> z;
  std::vector<std::string> states;
  std::optional<int> lmax, nmax, order, threads;
  std::optional<double> rmax;
  std::optional<std::string> out;
  std::vector<std::string> formats;
  std::vector<std::string> settings;
};

bsci::RunConfig build_config(const Flags& f) {
  bsci::RunConfig cfg;
  if (!f.config.empty()) bsci::load_config_file(f.config, cfg);
  if (f.z) cfg.Z = *f.z;
  if (!f.states.empty()) {
    cfg.states.clear();
    for (const auto& s : f.states) cfg.states.push_back(bsci::parse_state(s));
  }
  if (f.lmax) cfg.l_max = *f.lmax;
  if (f.nmax) cfg.n_max = *f.nmax;
  if (f.order) cfg.order = *f.order;
  if (f.threads) cfg.threads = *f.threads;
  if (f.rmax) cfg.r_max = *f.rmax;
  if (f.out) cfg.out_dir = *f.out;
  if (!f.formats.empty()) {
    cfg.formats.clear();
    for (const auto& s : f.formats) cfg.formats.push_back(bsci::parse_format(s));
  }
  for (const auto& kv : f.settings) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw bsci::Error(bsci::ErrorKind::config_error, "--set expects key=value, got '" + kv + "'");
    bsci::apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  return cfg;
}

void print_written(const std::vector<std::string>& paths) {
  for (const auto& p : paths) std::cout << "wrote " << p << '\n';
}

int do_solve(const bsci::RunConfig& cfg) {
  const auto rep = bsci::run_solve(cfg);
  std::printf("%-10s %16s %12s %12s %12s %8s\n", "state", "energy", "S_L", "S_vN", "xi", "weight");
  for (const auto& s : rep.states)
    std::printf("%-10s %16.9f %12.7f %12.7f %12.7f %8.3f\n", bsci::to_string(s.state).c_str(), s.energy,
                s.S_L, s.S_vN, s.xi, s.target_weight);
  std::printf("r_max %g  n_splines %d  eps_1s %.10f  R0(1s,1s) %.10f  (%.1f s)\n", rep.diagnostics.r_max,
              rep.diagnostics.n_splines, rep.diagnostics.eps_1s, rep.diagnostics.r0_1s, rep.seconds);
  for (const auto& w : rep.warnings) std::cerr << "warning: " << w << '\n';
  print_written(bsci::emit_outputs(rep));
  return kOk;
}

int do_converge(const bsci::RunConfig& cfg) {
  const auto table = bsci::run_convergence(cfg);
  for (const auto& s : table.config.states) {
    std::printf("%s  S_L (rows n_max, columns l_max)\n", bsci::to_string(s).c_str());
    std::printf("%6s", "n\\l");
    for (int l : table.config.l_values) std::printf(" %11d", l);
    std::printf("\n");
    for (int n : table.config.n_values) {
      std::printf("%6d", n);
      for (int l : table.config.l_values) {
        const auto* c = table.find(s, l, n);
        if (c) std::printf(" %11.7f", c->S_L);
        else std::printf(" %11s", "-");
      }
      std::printf("\n");
    }
  }
  for (const auto& w : table.warnings) std::cerr << "warning: " << w << '\n';
  print_written(bsci::emit_outputs(table));
  return kOk;
}

int do_zscan(const bsci::RunConfig& cfg) {
  const auto result = bsci::run_zscan(cfg, [](const bsci::ZScanRow& r) {
    if (r.ok)
      std::fprintf(stderr, "Z=%-6g %-8s E=%.8f S_L=%.7f S_vN=%.7f R=%g\n", r.Z,
                   bsci::to_string(r.state).c_str(), r.energy, r.S_L, r.S_vN, r.r_max);
    else
      std::fprintf(stderr, "Z=%-6g %-8s failed: %s\n", r.Z, bsci::to_string(r.state).c_str(),
                   r.message.c_str());
  });
  print_written(bsci::emit_outputs(result));
  if (result.failures() > 0) {
    std::cerr << result.failures() << " scan rows failed\n";
    return kPartial;
  }
  return kOk;
}

int do_selftest() {
  const auto checks = bsci::oracle::run_selftest();
  bool ok = true;
  for (const auto& c : checks) {
    std::printf("%s  %-62s worst %.3e (tol %.0e) %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.worst,
                c.tolerance, c.detail.c_str());
    ok = ok && c.pass;
  }
  return ok ? kOk : kNumeric;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"B-spline CI solver for two-electron atoms with entanglement entropies"};
  app.require_subcommand(1);
  Flags f;
  app.add_option("--config", f.config, "key = value config file")->check(CLI::ExistingFile);
  app.add_option("--z", f.z, "nuclear charge (>= 1)");
  app.add_option("--state", f.states, "state such as 1s2-1S, 1s2s-1S, 1s2s-3S (repeatable)");
  app.add_option("--lmax", f.lmax, "largest orbital l");
  app.add_option("--nmax", f.nmax, "largest principal quantum number");
  app.add_option("--rmax", f.rmax, "box radius in a.u.");
  app.add_option("--order", f.order, "B-spline order");
  app.add_option("--out", f.out, "output directory");
  app.add_option("--format", f.formats, "csv, json or svg (repeatable)");
  app.add_option("--threads", f.threads, "worker threads for Hamiltonian assembly");
  app.add_option("--set", f.settings, "any config key as key=value (repeatable)");

  auto* solve = app.add_subcommand("solve", "energies and entropies of the requested states");
  auto* converge = app.add_subcommand("converge", "table over l_max and n_max");
  auto* zscan = app.add_subcommand("zscan", "entropies against nuclear charge");
  auto* selftest = app.add_subcommand("selftest", "run the oracle suites");
  for (auto* sub : {solve, converge, zscan, selftest}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (selftest->parsed()) return do_selftest();
    const bsci::RunConfig cfg = build_config(f);
    if (solve->parsed()) return do_solve(cfg);
    if (converge->parsed()) return do_converge(cfg);
    if (zscan->parsed()) return do_zscan(cfg);
  } catch (const bsci::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == bsci::ErrorKind::config_error ? kConfig : kNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumeric;
  }
  return kOk;
}
