#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bsci/bspline.hpp"
#include "bsci/ci.hpp"

namespace bsci {

/// A target state plus its spin, written "1s2s-3S" (space or '_' also accepted).
struct StateSpec {
  TargetState target = TargetState::ground_1s2;
  int S = 0;

  bool operator==(const StateSpec&) const = default;
};

StateSpec parse_state(const std::string& text);
std::string to_string(const StateSpec& s);  // e.g. "1s2s 3S"
std::string state_key(const StateSpec& s);  // e.g. "1s2s-3S", file-name safe

enum class OutputFormat { csv, json, svg };
OutputFormat parse_format(const std::string& text);
std::string to_string(OutputFormat f);

/// Everything a run depends on. Zero or empty values mean "pick the default";
/// resolve() replaces them with the values actually used.
struct RunConfig {
  double Z = 2.0;
  std::vector<StateSpec> states;  // solve/converge: {1s2 1S}; zscan: {1s2s 1S, 1s2s 3S}
  int l_max = 3;
  int n_max = 25;
  int order = 7;
  int n_splines = 0;    // max(n_max + 2, 24)
  double r_max = 0.0;   // 120 / Z (per row in a scan)
  GridKind grid = GridKind::exponential;
  double gamma = 6.0;
  int quad_points = 0;     // order + 1
  int slater_points = 0;   // 2 * order
  SelectionRule selection = SelectionRule::energy_rank;
  int threads = 1;

  // Box escalation: below box_below_z the radius doubles (gamma += ln 2)
  // until every requested energy moves by less than box_tolerance, or
  // the radius would pass box_r_limit.
  double box_below_z = 2.0;
  double box_tolerance = 1e-6;
  double box_r_limit = 1200.0;

  std::vector<double> z_values;   // zscan; empty means the default grid
  std::vector<int> l_values;      // converge; empty means 0..l_max
  std::vector<int> n_values;      // converge; empty means 10, 15, ..., n_max

  std::string out_dir = ".";
  std::vector<OutputFormat> formats;  // empty means csv + json
};

enum class Verb { solve, converge, zscan };

/// Default Z grid for scans: 2.0 down to 1.05 in steps of 0.05, then
/// 1.02, 1.01, 1.0 and the high-Z points 3, 4, 5, 10, 15, 25, 50, 80, 100.
std::vector<double> default_z_grid();

/// Fills defaults for `verb` and checks ranges; throws config_error.
RunConfig resolve(RunConfig cfg, Verb verb);

/// Z-dependent pieces of the default basis.
int default_n_splines(const RunConfig& cfg);
double default_r_max(double Z);

/// Reads flat "key = value" text (';' or '#' comments) onto `cfg`.
/// Unknown keys and malformed values throw config_error.
void load_config(std::istream& in, RunConfig& cfg);
void load_config_file(const std::string& path, RunConfig& cfg);
/// Applies one key/value pair using the same rules as load_config.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

}  // namespace bsci
