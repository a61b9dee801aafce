#pragma once

#include <map>
#include <string>
#include <vector>

#include "lambdafwm/config.hpp"
#include "lambdafwm/grid.hpp"

namespace lambdafwm {

/// One solver's result for a run, ready for emission.
struct SolverResult {
  std::string solver;  ///< "spectral", "analytic", or "oracle"
  EnvelopeTrace trace;
  EfficiencyTrace efficiency;
};

/// Dataset for one run: shared time axis, one column bundle per solver,
/// metadata sufficient to re-run it (the full config round-trips through the
/// metadata of every emitted file).
struct RunDataset {
  RunConfig config;
  double z = 0.0;  ///< resolved distance (after "auto")
  std::vector<SolverResult> results;
  bool stamp = false;  ///< append a wall-clock line to the header (off: byte-stable)
};

/// Serialize to the requested format. Numbers are printed with %.17g so equal
/// inputs give byte-identical data sections.
std::string render_csv(const RunDataset& dataset);
std::string render_json(const RunDataset& dataset);

/// Extract the embedded config back out of an emitted file's content.
RunConfig config_from_csv(const std::string& content);
RunConfig config_from_json_output(const std::string& content);

/// Write atomically: temp file in the target directory, then rename.
void write_file_atomic(const std::string& path, const std::string& content);

std::string format_double(double v);

}  // namespace lambdafwm
