#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "bsci/pipeline.hpp"

namespace bsci {

// CSV files always start with a header row; numbers use "%.12g".
// Free-text fields never contain commas (they are replaced by ';').

/// state,Z,energy,S_L,S_vN,S_vN_nat,xi,trace,root,target_weight,dominant,
/// dominant_weight,ambiguous,l_max,n_max,order,n_splines,r_max,gamma
void write_solve_csv(std::ostream& os, const SolveReport& rep);

/// state,l_max,n_max,energy,S_L,S_vN,target_weight,ambiguous
void write_convergence_csv(std::ostream& os, const ConvergenceTable& table);

/// Z,inv_Z,state,ok,energy,S_L,S_vN,target_weight,dominant,dominant_weight,
/// ambiguous,r_max,gamma,n_splines,l_max,n_max,order,box_converged,message
void write_zscan_csv(std::ostream& os, const ZScanResult& result);
extern const char* const kZScanHeader;

/// Parses write_zscan_csv output back into rows; throws io_failure on a
/// schema mismatch.
std::vector<ZScanRow> read_zscan_csv(std::istream& is);

nlohmann::ordered_json config_json(const RunConfig& cfg, Verb verb);
nlohmann::ordered_json solve_json(const SolveReport& rep);
nlohmann::ordered_json convergence_json(const ConvergenceTable& table);
nlohmann::ordered_json zscan_json(const ZScanResult& result);

enum class PlotQuantity { linear_entropy, von_neumann_entropy };

/// Entropy vs 1/Z, one polyline per state, dashed reference line at 0.5
/// (S_L) or 1.0 (S_vN).
void write_zscan_svg(std::ostream& os, const ZScanResult& result, PlotQuantity q);

/// Writes <stem>.csv / <stem>.json / <stem>_*.svg per the config formats
/// plus <stem>.meta.json holding the timestamp and run time. Returns the
/// paths written; throws io_failure.
std::vector<std::string> emit_outputs(const SolveReport& rep);
std::vector<std::string> emit_outputs(const ConvergenceTable& table);
std::vector<std::string> emit_outputs(const ZScanResult& result);

}  // namespace bsci
