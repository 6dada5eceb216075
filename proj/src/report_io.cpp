#include "bsci/report_io.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/lexical_cast.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "bsci/error.hpp"

namespace bsci {

using nlohmann::ordered_json;

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string clean(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

std::string grid_name(GridKind g) { return g == GridKind::exponential ? "exponential" : "linear"; }

std::string selection_name(SelectionRule r) {
  return r == SelectionRule::energy_rank ? "energy_rank" : "max_overlap";
}

std::string verb_name(Verb v) {
  switch (v) {
    case Verb::solve: return "solve";
    case Verb::converge: return "converge";
    case Verb::zscan: return "zscan";
  }
  return "?";
}

ordered_json spectrum_summary(const RdmSpectrum& spec, std::size_t count) {
  ordered_json arr = ordered_json::array();
  for (std::size_t i = 0; i < std::min(count, spec.entries.size()); ++i)
    arr.push_back({{"l", spec.entries[i].l},
                   {"lambda", spec.entries[i].lambda},
                   {"degeneracy", spec.entries[i].degeneracy}});
  return arr;
}

bool wants(const RunConfig& cfg, OutputFormat f) {
  return std::find(cfg.formats.begin(), cfg.formats.end(), f) != cfg.formats.end();
}

std::filesystem::path prepare(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::io_failure, "cannot create '" + dir + "': " + ec.message());
  return std::filesystem::path(dir);
}

template <class Fn>
std::string write_file(const std::filesystem::path& path, Fn&& fn) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorKind::io_failure, "cannot open '" + path.string() + "' for writing");
  fn(os);
  os.flush();
  if (!os) throw Error(ErrorKind::io_failure, "write to '" + path.string() + "' failed");
  return path.string();
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream ss;
  ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return ss.str();
}

std::string meta(const std::filesystem::path& dir, const std::string& stem, Verb verb, double seconds) {
  return write_file(dir / (stem + ".meta.json"), [&](std::ostream& os) {
    ordered_json j;
    j["verb"] = verb_name(verb);
    j["timestamp"] = utc_timestamp();
    j["seconds"] = seconds;
    os << j.dump(2) << '\n';
  });
}

}  // namespace

const char* const kZScanHeader =
    "Z,inv_Z,state,ok,energy,S_L,S_vN,target_weight,dominant,dominant_weight,ambiguous,r_max,gamma,"
    "n_splines,l_max,n_max,order,box_converged,message";

void write_solve_csv(std::ostream& os, const SolveReport& rep) {
  const auto& c = rep.config;
  const auto& d = rep.diagnostics;
  os << "state,Z,energy,S_L,S_vN,S_vN_nat,xi,trace,root,target_weight,dominant,dominant_weight,"
        "ambiguous,l_max,n_max,order,n_splines,r_max,gamma\n";
  for (const auto& s : rep.states) {
    os << to_string(s.state) << ',' << num(c.Z) << ',' << num(s.energy) << ',' << num(s.S_L) << ','
       << num(s.S_vN) << ',' << num(s.S_vN_nat) << ',' << num(s.xi) << ',' << num(s.trace) << ','
       << s.root << ',' << num(s.target_weight) << ',' << s.dominant << ',' << num(s.dominant_weight)
       << ',' << (s.ambiguous ? 1 : 0) << ',' << c.l_max << ',' << c.n_max << ',' << c.order << ','
       << d.n_splines << ',' << num(d.r_max) << ',' << num(d.gamma) << '\n';
  }
}

void write_convergence_csv(std::ostream& os, const ConvergenceTable& table) {
  os << "state,l_max,n_max,energy,S_L,S_vN,target_weight,ambiguous\n";
  for (const auto& c : table.cells)
    os << to_string(c.state) << ',' << c.l_max << ',' << c.n_max << ',' << num(c.energy) << ','
       << num(c.S_L) << ',' << num(c.S_vN) << ',' << num(c.target_weight) << ','
       << (c.ambiguous ? 1 : 0) << '\n';
}

void write_zscan_csv(std::ostream& os, const ZScanResult& result) {
  const auto& c = result.config;
  os << kZScanHeader << '\n';
  for (const auto& r : result.rows) {
    os << num(r.Z) << ',' << num(r.inv_Z) << ',' << to_string(r.state) << ',' << (r.ok ? 1 : 0) << ','
       << num(r.energy) << ',' << num(r.S_L) << ',' << num(r.S_vN) << ',' << num(r.target_weight)
       << ',' << r.dominant << ',' << num(r.dominant_weight) << ',' << (r.ambiguous ? 1 : 0) << ','
       << num(r.r_max) << ',' << num(r.gamma) << ',' << r.n_splines << ',' << c.l_max << ','
       << c.n_max << ',' << c.order << ',' << (r.box_converged ? 1 : 0) << ',' << clean(r.message)
       << '\n';
  }
}

std::vector<ZScanRow> read_zscan_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kZScanHeader)
    throw Error(ErrorKind::io_failure, "z-scan CSV header mismatch");
  std::vector<std::string> columns;
  boost::split(columns, line, boost::is_any_of(","));
  std::vector<ZScanRow> rows;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    boost::split(f, line, boost::is_any_of(","));
    if (f.size() != columns.size())
      throw Error(ErrorKind::io_failure, "z-scan CSV line " + std::to_string(lineno) + " has " +
                                             std::to_string(f.size()) + " fields");
    try {
      ZScanRow r;
      auto d = [&](std::size_t i) { return boost::lexical_cast<double>(f[i]); };
      auto n = [&](std::size_t i) { return boost::lexical_cast<int>(f[i]); };
      r.Z = d(0);
      r.inv_Z = d(1);
      r.state = parse_state(f[2]);
      r.ok = n(3) != 0;
      r.energy = d(4);
      r.S_L = d(5);
      r.S_vN = d(6);
      r.target_weight = d(7);
      r.dominant = f[8];
      r.dominant_weight = d(9);
      r.ambiguous = n(10) != 0;
      r.r_max = d(11);
      r.gamma = d(12);
      r.n_splines = n(13);
      r.box_converged = n(17) != 0;
      r.message = f[18];
      rows.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw Error(ErrorKind::io_failure,
                  "z-scan CSV line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return rows;
}

ordered_json config_json(const RunConfig& c, Verb verb) {
  ordered_json j;
  j["verb"] = verb_name(verb);
  j["Z"] = c.Z;
  ordered_json states = ordered_json::array();
  for (const auto& s : c.states) states.push_back(to_string(s));
  j["states"] = states;
  j["l_max"] = c.l_max;
  j["n_max"] = c.n_max;
  j["order"] = c.order;
  j["n_splines"] = c.n_splines;
  if (c.r_max > 0.0) j["r_max"] = c.r_max;
  else j["r_max"] = "120/Z";
  j["grid"] = grid_name(c.grid);
  j["gamma"] = c.gamma;
  j["quad_points"] = c.quad_points;
  j["slater_points"] = c.slater_points;
  j["selection"] = selection_name(c.selection);
  j["threads"] = c.threads;
  j["box_below_z"] = c.box_below_z;
  j["box_tolerance"] = c.box_tolerance;
  j["box_r_limit"] = c.box_r_limit;
  if (verb == Verb::zscan) j["z_values"] = c.z_values;
  if (verb == Verb::converge) {
    j["l_values"] = c.l_values;
    j["n_values"] = c.n_values;
  }
  j["out"] = c.out_dir;
  ordered_json formats = ordered_json::array();
  for (auto f : c.formats) formats.push_back(to_string(f));
  j["formats"] = formats;
  return j;
}

ordered_json solve_json(const SolveReport& rep) {
  ordered_json j;
  j["config"] = config_json(rep.config, Verb::solve);
  ordered_json states = ordered_json::array();
  for (const auto& s : rep.states) {
    ordered_json e;
    e["state"] = to_string(s.state);
    e["energy"] = s.energy;
    e["S_L"] = s.S_L;
    e["S_vN"] = s.S_vN;
    e["S_vN_nat"] = s.S_vN_nat;
    e["xi"] = s.xi;
    e["trace"] = s.trace;
    e["root"] = s.root;
    e["target_weight"] = s.target_weight;
    e["dominant"] = s.dominant;
    e["dominant_weight"] = s.dominant_weight;
    e["ambiguous"] = s.ambiguous;
    e["leading_occupations"] = spectrum_summary(s.spectrum, 8);
    states.push_back(e);
  }
  j["states"] = states;
  const auto& d = rep.diagnostics;
  ordered_json diag;
  diag["n_splines"] = d.n_splines;
  diag["r_max"] = d.r_max;
  diag["gamma"] = d.gamma;
  diag["eps_1s"] = d.eps_1s;
  diag["eps_1s_exact"] = d.eps_1s_exact;
  diag["r0_1s"] = d.r0_1s;
  diag["r0_1s_exact"] = d.r0_1s_exact;
  diag["singlet_configs"] = d.singlet_configs;
  diag["triplet_configs"] = d.triplet_configs;
  diag["singlet_roots"] = d.singlet_roots;
  diag["triplet_roots"] = d.triplet_roots;
  ordered_json steps = ordered_json::array();
  for (const auto& s : d.box_steps)
    steps.push_back({{"r_max", s.r_max}, {"gamma", s.gamma}, {"energies", s.energies}});
  diag["box_steps"] = steps;
  diag["box_converged"] = d.box_converged;
  j["diagnostics"] = diag;
  j["warnings"] = rep.warnings;
  return j;
}

ordered_json convergence_json(const ConvergenceTable& table) {
  ordered_json j;
  j["config"] = config_json(table.config, Verb::converge);
  ordered_json cells = ordered_json::array();
  for (const auto& c : table.cells)
    cells.push_back({{"state", to_string(c.state)},
                     {"l_max", c.l_max},
                     {"n_max", c.n_max},
                     {"energy", c.energy},
                     {"S_L", c.S_L},
                     {"S_vN", c.S_vN},
                     {"target_weight", c.target_weight},
                     {"ambiguous", c.ambiguous}});
  j["cells"] = cells;
  j["warnings"] = table.warnings;
  return j;
}

ordered_json zscan_json(const ZScanResult& result) {
  ordered_json j;
  j["config"] = config_json(result.config, Verb::zscan);
  ordered_json rows = ordered_json::array();
  for (const auto& r : result.rows)
    rows.push_back({{"Z", r.Z},
                    {"inv_Z", r.inv_Z},
                    {"state", to_string(r.state)},
                    {"ok", r.ok},
                    {"energy", r.energy},
                    {"S_L", r.S_L},
                    {"S_vN", r.S_vN},
                    {"target_weight", r.target_weight},
                    {"dominant", r.dominant},
                    {"dominant_weight", r.dominant_weight},
                    {"ambiguous", r.ambiguous},
                    {"r_max", r.r_max},
                    {"gamma", r.gamma},
                    {"n_splines", r.n_splines},
                    {"box_converged", r.box_converged},
                    {"message", r.message}});
  j["rows"] = rows;
  j["failures"] = result.failures();
  return j;
}

void write_zscan_svg(std::ostream& os, const ZScanResult& result, PlotQuantity q) {
  constexpr double W = 640, H = 420, left = 70, right = 150, top = 30, bottom = 50;
  const double ref = (q == PlotQuantity::linear_entropy) ? 0.5 : 1.0;
  const char* ylabel = (q == PlotQuantity::linear_entropy) ? "S_L" : "S_vN";
  auto value = [q](const ZScanRow& r) { return q == PlotQuantity::linear_entropy ? r.S_L : r.S_vN; };

  double lo = ref, hi = ref;
  for (const auto& r : result.rows)
    if (r.ok && std::isfinite(value(r))) {
      lo = std::min(lo, value(r));
      hi = std::max(hi, value(r));
    }
  const double pad = std::max(1e-6, 0.05 * (hi - lo));
  lo -= pad;
  hi += pad;
  auto px = [&](double x) { return left + x * (W - left - right); };
  auto py = [&](double y) { return top + (hi - y) / (hi - lo) * (H - top - bottom); };

  os << std::setprecision(6);
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  // Axes and ticks.
  os << "<line x1=\"" << px(0) << "\" y1=\"" << py(lo) << "\" x2=\"" << px(1) << "\" y2=\"" << py(lo)
     << "\" stroke=\"black\"/>\n"
     << "<line x1=\"" << px(0) << "\" y1=\"" << py(lo) << "\" x2=\"" << px(0) << "\" y2=\"" << py(hi)
     << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double x = i / 5.0;
    os << "<line x1=\"" << px(x) << "\" y1=\"" << py(lo) << "\" x2=\"" << px(x) << "\" y2=\""
       << py(lo) + 5 << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << px(x) << "\" y=\"" << py(lo) + 18 << "\" text-anchor=\"middle\">" << x
       << "</text>\n";
    const double y = lo + (hi - lo) * i / 5.0;
    os << "<line x1=\"" << px(0) - 5 << "\" y1=\"" << py(y) << "\" x2=\"" << px(0) << "\" y2=\""
       << py(y) << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << px(0) - 8 << "\" y=\"" << py(y) + 4 << "\" text-anchor=\"end\">"
       << std::setprecision(5) << y << std::setprecision(6) << "</text>\n";
  }
  os << "<text x=\"" << px(0.5) << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\">1/Z</text>\n"
     << "<text x=\"16\" y=\"" << py(0.5 * (lo + hi)) << "\" transform=\"rotate(-90 16 "
     << py(0.5 * (lo + hi)) << ")\" text-anchor=\"middle\">" << ylabel << "</text>\n";
  os << "<line x1=\"" << px(0) << "\" y1=\"" << py(ref) << "\" x2=\"" << px(1) << "\" y2=\""
     << py(ref) << "\" stroke=\"gray\" stroke-dasharray=\"6 4\"/>\n";

  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  std::size_t idx = 0;
  for (const auto& s : result.config.states) {
    auto pts = result.curve(s);
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.inv_Z < b.inv_Z; });
    const char* color = colors[idx % 5];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& p : pts) os << px(p.inv_Z) << ',' << py(value(p)) << ' ';
    os << "\"/>\n";
    const double ly = top + 20.0 * static_cast<double>(idx);
    os << "<line x1=\"" << W - right + 15 << "\" y1=\"" << ly << "\" x2=\"" << W - right + 40
       << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n"
       << "<text x=\"" << W - right + 45 << "\" y=\"" << ly + 4 << "\">" << to_string(s) << "</text>\n";
    ++idx;
  }
  os << "</g>\n</svg>\n";
}

std::vector<std::string> emit_outputs(const SolveReport& rep) {
  const auto dir = prepare(rep.config.out_dir);
  std::vector<std::string> written;
  if (wants(rep.config, OutputFormat::csv)) {
    written.push_back(write_file(dir / "solve.csv", [&](std::ostream& os) { write_solve_csv(os, rep); }));
    for (const auto& s : rep.states)
      written.push_back(write_file(dir / ("spectrum_" + state_key(s.state) + ".csv"),
                                   [&](std::ostream& os) { write_spectrum_csv(os, s.spectrum); }));
  }
  if (wants(rep.config, OutputFormat::json))
    written.push_back(
        write_file(dir / "solve.json", [&](std::ostream& os) { os << solve_json(rep).dump(2) << '\n'; }));
  written.push_back(meta(dir, "solve", Verb::solve, rep.seconds));
  return written;
}

std::vector<std::string> emit_outputs(const ConvergenceTable& table) {
  const auto dir = prepare(table.config.out_dir);
  std::vector<std::string> written;
  if (wants(table.config, OutputFormat::csv))
    written.push_back(
        write_file(dir / "converge.csv", [&](std::ostream& os) { write_convergence_csv(os, table); }));
  if (wants(table.config, OutputFormat::json))
    written.push_back(write_file(
        dir / "converge.json", [&](std::ostream& os) { os << convergence_json(table).dump(2) << '\n'; }));
  written.push_back(meta(dir, "converge", Verb::converge, table.seconds));
  return written;
}

std::vector<std::string> emit_outputs(const ZScanResult& result) {
  const auto dir = prepare(result.config.out_dir);
  std::vector<std::string> written;
  if (wants(result.config, OutputFormat::csv))
    written.push_back(write_file(dir / "zscan.csv", [&](std::ostream& os) { write_zscan_csv(os, result); }));
  if (wants(result.config, OutputFormat::json))
    written.push_back(
        write_file(dir / "zscan.json", [&](std::ostream& os) { os << zscan_json(result).dump(2) << '\n'; }));
  if (wants(result.config, OutputFormat::svg)) {
    written.push_back(write_file(dir / "zscan_S_L.svg", [&](std::ostream& os) {
      write_zscan_svg(os, result, PlotQuantity::linear_entropy);
    }));
    written.push_back(write_file(dir / "zscan_S_vN.svg", [&](std::ostream& os) {
      write_zscan_svg(os, result, PlotQuantity::von_neumann_entropy);
    }));
  }
  written.push_back(meta(dir, "zscan", Verb::zscan, result.seconds));
  return written;
}

}  // namespace bsci
