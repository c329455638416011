#include "uhlmann/sweep.hpp"

#include <atomic>
#include <cmath>

#include "uhlmann/geometry.hpp"
#include "uhlmann/models.hpp"
#include "uhlmann/quadrature.hpp"

namespace uhlmann {

namespace {

constexpr Real kCriticalGap = 1e-2;

struct ParamTables {
  std::vector<Real> berry;   // F_xy per node
  std::vector<Real> h_norm;  // |h| per node
  std::optional<Real> gap;
  std::optional<Real> chern;
  bool curvature_ok = false;
  std::string status = "ok";
};

}  // namespace

std::vector<Real> SweepAxis::values() const {
  if (count < 1) throw std::invalid_argument("SweepAxis: count must be >= 1");
  if (count == 1) return {min};
  if (!(max > min)) throw std::invalid_argument("SweepAxis: need min < max when count > 1");
  if (log && !(min > 0.0)) throw std::invalid_argument("SweepAxis: log axis needs min > 0");
  std::vector<Real> v(count);
  for (int i = 0; i < count; ++i) {
    const Real s = static_cast<Real>(i) / (count - 1);
    v[i] = log ? min * std::pow(max / min, s) : min + (max - min) * s;
  }
  return v;
}

SweepResult run_sweep(const SweepSpec& spec, ThreadPool& pool,
                      const std::function<void(std::size_t, std::size_t)>& progress) {
  const std::vector<Real> params = spec.param.values();
  const std::vector<Real> temps = spec.temperature.values();
  for (Real t : temps)
    if (!(t > 0.0)) throw std::invalid_argument("run_sweep: temperatures must be > 0");
  const BZGrid grid(spec.grid_n);

  SweepResult result{spec, {}};
  result.rows.resize(params.size() * temps.size());

  // Pass 1: per-parameter tables (temperature independent).
  std::vector<ParamTables> tables(params.size());
  std::atomic<std::size_t> done{0};
  const std::size_t total = params.size() + result.rows.size();

  pool.parallel_for(params.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p) {
      ParamTables& tab = tables[p];
      try {
        const HVectorField field = make_field(spec.model, {{spec.param_name, params[p]}});
        tab.gap = band_gap(field, grid);
        if (*tab.gap < kCriticalGap) tab.status = "critical";
        tab.berry.resize(grid.size());
        tab.h_norm.resize(grid.size());
        for (int i = 0; i < grid.nx; ++i) {
          for (int j = 0; j < grid.ny; ++j) {
            const Real kx = grid.kx(i), ky = grid.ky(j);
            tab.h_norm[static_cast<std::size_t>(i) * grid.ny + j] = field.eval(kx, ky).h.norm();
            tab.berry[static_cast<std::size_t>(i) * grid.ny + j] = berry_curvature(field, kx, ky);
          }
        }
        tab.curvature_ok = true;
        tab.chern = static_cast<Real>(chern_fhs(field, grid));
      } catch (const std::exception&) {
        tab.status = "critical";
      }
      if (progress) progress(++done, total);
    }
  });

  // Pass 2: thermal sums per (param, T) cell.
  pool.parallel_for(result.rows.size(), [&](std::size_t begin, std::size_t end) {
    std::vector<Real> terms(grid.size());
    for (std::size_t cell = begin; cell < end; ++cell) {
      const std::size_t p = cell / temps.size();
      const std::size_t t = cell % temps.size();
      const ParamTables& tab = tables[p];
      SweepRow& row = result.rows[cell];
      row.param_name = spec.param_name;
      row.param_value = params[p];
      row.temperature = temps[t];
      row.status = tab.status;
      row.gap = tab.gap;
      row.chern = tab.chern;
      if (tab.curvature_ok) {
        const Real beta = 1.0 / temps[t];
        for (std::size_t idx = 0; idx < terms.size(); ++idx) {
          const Real w = std::tanh(beta * tab.h_norm[idx]);
          terms[idx] = w * w * w * tab.berry[idx];
        }
        row.n_u = grid.cell_area() * pairwise_sum(terms) / kTwoPi;
      }
      if (progress) progress(++done, total);
    }
  });

  return result;
}

}  // namespace uhlmann
