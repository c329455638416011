#include "uhlmann/geometry.hpp"

#include <cmath>

#include "uhlmann/gibbs.hpp"
#include "uhlmann/quadrature.hpp"

namespace uhlmann {

namespace {

Real gapped_norm(const Vec3& h) {
  const Real r = h.norm();
  if (r < kGapTol) throw gap_closure_error("band touching: |h_k| < 1e-12");
  return r;
}

}  // namespace

Real berry_curvature(const HVectorField& field, Real kx, Real ky) {
  const FieldValue v = field.eval(kx, ky);
  const FieldGradient g = field.grad(kx, ky);
  const Real r = gapped_norm(v.h);
  return 0.5 * g.dhx.cross(g.dhy).dot(v.h) / (r * r * r);
}

Real chern_number(const HVectorField& field, const BZGrid& grid, ThreadPool* pool) {
  const Real integral =
      bz_integrate([&](Real kx, Real ky) { return berry_curvature(field, kx, ky); }, grid, pool);
  return integral / kTwoPi;
}

FhsResult chern_fhs_detailed(const HVectorField& field, const BZGrid& grid, ThreadPool* pool) {
  const int nx = grid.nx, ny = grid.ny;
  std::vector<Mat2c> proj(grid.size());

  auto fill_proj = [&](std::size_t begin, std::size_t end) {
    const Mat2c id = Mat2c::Identity();
    for (std::size_t idx = begin; idx < end; ++idx) {
      const int i = static_cast<int>(idx) / ny;
      const int j = static_cast<int>(idx) % ny;
      const Vec3 h = field.eval(grid.kx(i), grid.ky(j)).h;
      const Real r = gapped_norm(h);
      proj[idx] = 0.5 * (id - pauli_dot(h / r));
    }
  };

  std::vector<Real> phases(grid.size());
  auto fill_phases = [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      const int i = static_cast<int>(idx) / ny;
      const int j = static_cast<int>(idx) % ny;
      const int i2 = (i + 1) % nx, j2 = (j + 1) % ny;
      const Mat2c loop = proj[idx] * proj[static_cast<std::size_t>(i2) * ny + j] *
                         proj[static_cast<std::size_t>(i2) * ny + j2] *
                         proj[static_cast<std::size_t>(i) * ny + j2];
      const Complex t = loop.trace();
      if (std::abs(t) < 1e-14)
        throw numerical_error("chern_fhs: vanishing plaquette overlap (grid too coarse?)");
      phases[idx] = -std::arg(t);
    }
  };

  if (pool) {
    pool->parallel_for(proj.size(), fill_proj);
    pool->parallel_for(phases.size(), fill_phases);
  } else {
    fill_proj(0, proj.size());
    fill_phases(0, phases.size());
  }

  const Real raw = pairwise_sum(phases) / kTwoPi;
  const int value = static_cast<int>(std::lround(raw));
  const Real residual = std::abs(raw - value);
  if (residual > 1e-8)
    throw numerical_error("chern_fhs: non-integer residual " + std::to_string(residual) +
                          " (gap closure or insufficient grid)");
  return FhsResult{value, residual};
}

int chern_fhs(const HVectorField& field, const BZGrid& grid, ThreadPool* pool) {
  return chern_fhs_detailed(field, grid, pool).value;
}

Real muc_thermal_weight(Real h_norm, const ThermalContext& ctx) {
  if (ctx.zero_temperature()) return 1.0;
  const Real t = std::tanh(ctx.beta * h_norm);
  return t * t * t;
}

Real muc_closed_form(const HVectorField& field, Real kx, Real ky, const ThermalContext& ctx) {
  const Real r = gapped_norm(field.eval(kx, ky).h);
  return muc_thermal_weight(r, ctx) * berry_curvature(field, kx, ky);
}

Real muc_sld(const HVectorField& field, Real kx, Real ky, const ThermalContext& ctx) {
  if (ctx.zero_temperature())
    throw std::invalid_argument("muc_sld: requires finite beta (use muc_closed_form at T = 0)");
  const FieldValue v = field.eval(kx, ky);
  gapped_norm(v.h);
  const FieldGradient g = field.grad(kx, ky);
  const MatXc h = pauli_dot(v.h) + v.epsilon * Mat2c::Identity();
  const EigenSystem sys = eigensystem(h);
  // For a 2x2 Gibbs state the off-diagonal weight pair is p_1 + p_2 = 1.
  const VecX p = gibbs_weights(sys.energies, ctx.beta);
  if (p[0] + p[1] < 1e-30)
    throw numerical_error("muc_sld: degenerate Gibbs weight pair");
  return muc_commutator(sys, pauli_dot(g.dhx), pauli_dot(g.dhy), ctx.beta);
}

Real uhlmann_number(const HVectorField& field, const ThermalContext& ctx, const BZGrid& grid,
                    ThreadPool* pool) {
  const Real integral = bz_integrate(
      [&](Real kx, Real ky) { return muc_closed_form(field, kx, ky, ctx); }, grid, pool);
  return integral / kTwoPi;
}

GibbsBlochState gibbs_bloch_state(const HVectorField& field, Real kx, Real ky,
                                  const ThermalContext& ctx) {
  const FieldValue v = field.eval(kx, ky);
  const Real r = gapped_norm(v.h);
  const Mat2c aligned = pauli_dot(v.h / r);
  GibbsBlochState state;
  if (ctx.zero_temperature()) {
    state.rho = 0.5 * (Mat2c::Identity() - aligned);
    state.p_lower = 1.0;
    state.p_upper = 0.0;
  } else {
    const Real t = std::tanh(ctx.beta * r);
    state.rho = 0.5 * (Mat2c::Identity() - t * aligned);
    state.p_lower = 0.5 * (1.0 + t);
    state.p_upper = 0.5 * (1.0 - t);
  }
  return state;
}

CurvatureMap curvature_map(const HVectorField& field, const BZGrid& grid, CurvatureKind kind,
                           const ThermalContext& ctx, ThreadPool* pool) {
  CurvatureMap map{grid, kind, ctx.beta, field.name(), params_string(field), {}};
  map.values.resize(grid.size());
  auto fill = [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      const int i = static_cast<int>(idx) / grid.ny;
      const int j = static_cast<int>(idx) % grid.ny;
      map.values[idx] = kind == CurvatureKind::berry
                            ? berry_curvature(field, grid.kx(i), grid.ky(j))
                            : muc_closed_form(field, grid.kx(i), grid.ky(j), ctx);
    }
  };
  if (pool)
    pool->parallel_for(map.values.size(), fill);
  else
    fill(0, map.values.size());
  return map;
}

}  // namespace uhlmann
