#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "uhlmann/geometry.hpp"
#include "uhlmann/spectral_trace.hpp"
#include "uhlmann/sweep.hpp"

namespace uhlmann {

/// Columns kx, ky, value; leading comment line names model, params, beta.
void write_curvature_map(std::ostream& os, const CurvatureMap& map);

/// Columns omega, value, error_estimate; comment carries beta, model,
/// params, units.
void write_spectral_trace(std::ostream& os, const SpectralTrace& trace);

/// Columns param_name, param_value, T, n_U, chern, gap, status.
void write_sweep(std::ostream& os, const SweepResult& result);

/// Minimal reader for the schemas above: '#' comment lines, a header row,
/// comma-separated cells (empty cell = missing value).
struct CsvTable {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(std::istream& is);

}  // namespace uhlmann
