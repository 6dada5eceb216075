#include "bsci/run_config.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/lexical_cast.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include "bsci/error.hpp"

namespace bsci {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::config_error, what); }

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  try {
    return boost::lexical_cast<T>(boost::trim_copy(text));
  } catch (const boost::bad_lexical_cast&) {
    bad("cannot read '" + text + "' for key '" + key + "'");
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  if (boost::trim_copy(text).empty()) return parts;
  boost::split(parts, text, boost::is_any_of(","));
  for (auto& p : parts) {
    boost::trim(p);
    if (p.empty()) bad("empty item in list '" + text + "'");
  }
  return parts;
}

template <class T>
std::vector<T> parse_list(const std::string& key, const std::string& text) {
  std::vector<T> out;
  for (const auto& p : split_list(text)) out.push_back(parse_number<T>(key, p));
  return out;
}

}  // namespace

StateSpec parse_state(const std::string& text) {
  std::string t = boost::trim_copy(text);
  std::replace(t.begin(), t.end(), '_', '-');
  std::replace(t.begin(), t.end(), ' ', '-');
  const auto dash = t.find('-');
  if (dash == std::string::npos) bad("state '" + text + "' needs a spin term, e.g. 1s2s-3S");
  const std::string term = boost::to_upper_copy(t.substr(dash + 1));
  StateSpec s;
  try {
    s.target = parse_target(t.substr(0, dash));
  } catch (const Error&) {
    bad("unknown state '" + text + "'");
  }
  if (term == "1S") s.S = 0;
  else if (term == "3S") s.S = 1;
  else bad("unknown spin term in '" + text + "'");
  if (s.target == TargetState::ground_1s2 && s.S == 1) bad("1s2 has no triplet");
  return s;
}

std::string to_string(const StateSpec& s) { return state_label(s.target, s.S); }

std::string state_key(const StateSpec& s) {
  std::string k = to_string(s);
  std::replace(k.begin(), k.end(), ' ', '-');
  return k;
}

OutputFormat parse_format(const std::string& text) {
  const std::string t = boost::to_lower_copy(boost::trim_copy(text));
  if (t == "csv") return OutputFormat::csv;
  if (t == "json") return OutputFormat::json;
  if (t == "svg") return OutputFormat::svg;
  bad("unknown output format '" + text + "'");
}

std::string to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::csv: return "csv";
    case OutputFormat::json: return "json";
    case OutputFormat::svg: return "svg";
  }
  return "?";
}

std::vector<double> default_z_grid() {
  std::vector<double> z;
  for (int i = 40; i >= 21; --i) z.push_back(i / 20.0);
  for (double v : {1.02, 1.01, 1.0}) z.push_back(v);
  for (double v : {3.0, 4.0, 5.0, 10.0, 15.0, 25.0, 50.0, 80.0, 100.0}) z.push_back(v);
  std::sort(z.begin(), z.end());
  return z;
}

int default_n_splines(const RunConfig& cfg) { return std::max({cfg.n_max + 2, 24, cfg.order + 1}); }

double default_r_max(double Z) { return 120.0 / Z; }

RunConfig resolve(RunConfig cfg, Verb verb) {
  if (!(cfg.Z >= 1.0)) bad("Z must be >= 1");
  if (cfg.l_max < 0 || cfg.l_max > 12) bad("l_max must lie in [0, 12]");
  if (cfg.n_max <= cfg.l_max || cfg.n_max > 200) bad("n_max must lie in (l_max, 200]");
  if (cfg.order < 2 || cfg.order > 20) bad("order must lie in [2, 20]");
  if (cfg.threads < 1) bad("threads must be >= 1");
  if (!(cfg.gamma > 0.0) && cfg.grid == GridKind::exponential) bad("gamma must be positive");
  if (!(cfg.box_tolerance > 0.0)) bad("box_tolerance must be positive");

  if (cfg.states.empty()) {
    if (verb == Verb::zscan)
      cfg.states = {{TargetState::s1s2s, 0}, {TargetState::s1s2s, 1}};
    else
      cfg.states = {{TargetState::ground_1s2, 0}};
  }
  if (cfg.n_splines == 0) cfg.n_splines = default_n_splines(cfg);
  if (cfg.n_splines < cfg.n_max + 2) bad("n_splines must be at least n_max + 2");
  if (cfg.n_splines <= cfg.order) bad("n_splines must exceed the order");
  // A scan keeps r_max = 0 so that every row picks its own Z-dependent radius.
  if (cfg.r_max == 0.0 && verb != Verb::zscan) cfg.r_max = default_r_max(cfg.Z);
  if (cfg.r_max < 0.0) bad("r_max must be positive");
  if (cfg.quad_points == 0) cfg.quad_points = cfg.order + 1;
  if (cfg.slater_points == 0) cfg.slater_points = 2 * cfg.order;
  if (cfg.quad_points < 1 || cfg.slater_points < 1) bad("quadrature orders must be positive");
  if (!(cfg.box_r_limit > 0.0)) bad("box_r_limit must be positive");

  if (verb == Verb::zscan) {
    if (cfg.z_values.empty()) cfg.z_values = default_z_grid();
    for (double z : cfg.z_values)
      if (!(z >= 1.0)) bad("scan Z values must be >= 1");
    std::sort(cfg.z_values.begin(), cfg.z_values.end());
    cfg.z_values.erase(std::unique(cfg.z_values.begin(), cfg.z_values.end()), cfg.z_values.end());
  }
  if (verb == Verb::converge) {
    if (cfg.l_values.empty())
      for (int l = 0; l <= cfg.l_max; ++l) cfg.l_values.push_back(l);
    if (cfg.n_values.empty()) {
      for (int n = 10; n < cfg.n_max; n += 5) cfg.n_values.push_back(n);
      cfg.n_values.push_back(cfg.n_max);
    }
    std::sort(cfg.l_values.begin(), cfg.l_values.end());
    std::sort(cfg.n_values.begin(), cfg.n_values.end());
    cfg.l_values.erase(std::unique(cfg.l_values.begin(), cfg.l_values.end()), cfg.l_values.end());
    cfg.n_values.erase(std::unique(cfg.n_values.begin(), cfg.n_values.end()), cfg.n_values.end());
    for (int l : cfg.l_values)
      if (l < 0 || l > cfg.l_max) bad("l_values must lie in [0, l_max]");
    for (int n : cfg.n_values)
      if (n <= cfg.l_values.back() || n > cfg.n_max) bad("n_values must lie in (max l, n_max]");
  }
  if (cfg.formats.empty()) cfg.formats = {OutputFormat::csv, OutputFormat::json};
  std::sort(cfg.formats.begin(), cfg.formats.end());
  cfg.formats.erase(std::unique(cfg.formats.begin(), cfg.formats.end()), cfg.formats.end());
  return cfg;
}

void apply_setting(RunConfig& cfg, const std::string& raw_key, const std::string& value) {
  const std::string key = boost::to_lower_copy(boost::trim_copy(raw_key));
  if (key == "z") cfg.Z = parse_number<double>(key, value);
  else if (key == "states" || key == "state") {
    cfg.states.clear();
    for (const auto& s : split_list(value)) cfg.states.push_back(parse_state(s));
  } else if (key == "l_max") cfg.l_max = parse_number<int>(key, value);
  else if (key == "n_max") cfg.n_max = parse_number<int>(key, value);
  else if (key == "order") cfg.order = parse_number<int>(key, value);
  else if (key == "n_splines") cfg.n_splines = parse_number<int>(key, value);
  else if (key == "r_max") cfg.r_max = parse_number<double>(key, value);
  else if (key == "grid") {
    const std::string g = boost::to_lower_copy(boost::trim_copy(value));
    if (g == "exponential") cfg.grid = GridKind::exponential;
    else if (g == "linear") cfg.grid = GridKind::linear;
    else bad("grid must be 'exponential' or 'linear'");
  } else if (key == "gamma") cfg.gamma = parse_number<double>(key, value);
  else if (key == "quad_points") cfg.quad_points = parse_number<int>(key, value);
  else if (key == "slater_points") cfg.slater_points = parse_number<int>(key, value);
  else if (key == "selection") {
    const std::string s = boost::to_lower_copy(boost::trim_copy(value));
    if (s == "energy_rank") cfg.selection = SelectionRule::energy_rank;
    else if (s == "max_overlap") cfg.selection = SelectionRule::max_overlap;
    else bad("selection must be 'energy_rank' or 'max_overlap'");
  } else if (key == "threads") cfg.threads = parse_number<int>(key, value);
  else if (key == "box_below_z") cfg.box_below_z = parse_number<double>(key, value);
  else if (key == "box_tolerance") cfg.box_tolerance = parse_number<double>(key, value);
  else if (key == "box_r_limit") cfg.box_r_limit = parse_number<double>(key, value);
  else if (key == "z_values") cfg.z_values = parse_list<double>(key, value);
  else if (key == "l_values") cfg.l_values = parse_list<int>(key, value);
  else if (key == "n_values") cfg.n_values = parse_list<int>(key, value);
  else if (key == "out") cfg.out_dir = boost::trim_copy(value);
  else if (key == "formats" || key == "format") {
    cfg.formats.clear();
    for (const auto& f : split_list(value)) cfg.formats.push_back(parse_format(f));
  } else bad("unknown key '" + raw_key + "'");
}

void load_config(std::istream& in, RunConfig& cfg) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    bad(std::string("malformed config: ") + e.message() + " at line " + std::to_string(e.line()));
  }
  for (const auto& [key, node] : tree) {
    if (!node.empty()) bad("sections are not supported ('" + key + "')");
    apply_setting(cfg, key, node.data());
  }
}

void load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) bad("cannot open config file '" + path + "'");
  load_config(in, cfg);
}

}  // namespace bsci
