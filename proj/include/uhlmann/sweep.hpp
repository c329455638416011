#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "uhlmann/parallel.hpp"
#include "uhlmann/types.hpp"

namespace uhlmann {

struct SweepAxis {
  Real min = 0.0;
  Real max = 0.0;
  int count = 1;
  bool log = false;

  std::vector<Real> values() const;
};

/// Parameter-temperature sweep request (the axes behind the phase-diagram
/// surfaces).
struct SweepSpec {
  std::string model;       // "qwz" or "sticlet"
  std::string param_name;  // "u" or "t2"
  SweepAxis param;
  SweepAxis temperature;   // k_B T values, > 0
  int grid_n = 256;
};

struct SweepRow {
  std::string param_name;
  Real param_value = 0.0;
  Real temperature = 0.0;
  std::optional<Real> n_u;
  std::optional<Real> chern;
  std::optional<Real> gap;
  std::string status = "ok";
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;  // param-major, temperature-minor order
};

/// Runs the sweep cell grid. Parameter columns are independent; the
/// temperature loop inside a column reuses the column's cached curvature
/// and |h| tables. Per-cell failures (gap closures at phase boundaries)
/// are recorded in the row status, never abort the sweep, and the row
/// order plus every value is identical for any worker count.
SweepResult run_sweep(const SweepSpec& spec, ThreadPool& pool,
                      const std::function<void(std::size_t, std::size_t)>& progress = {});

}  // namespace uhlmann
