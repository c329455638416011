#include "uhlmann/response.hpp"

#include <algorithm>
#include <cmath>

#include "uhlmann/geometry.hpp"
#include "uhlmann/kernel.hpp"
#include "uhlmann/quadrature.hpp"

namespace uhlmann {

namespace {
constexpr Real kRegulatorScale = 2.0;  // Richardson pair (a, a/2)
}

ConductivityEvaluator::ConductivityEvaluator(const HVectorField& field, const BZGrid& grid,
                                             const ThermalContext& ctx, ThreadPool* pool) {
  const std::size_t n = grid.size();
  const int ny = grid.ny;
  base_.resize(n);
  wk2_.resize(n);
  eta_.resize(n);
  beta_ = ctx.beta;

  std::vector<Real> grad_norm(n);
  auto fill = [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      const int i = static_cast<int>(idx) / ny;
      const int j = static_cast<int>(idx) % ny;
      const Real kx = grid.kx(i), ky = grid.ky(j);
      const FieldValue v = field.eval(kx, ky);
      const FieldGradient g = field.grad(kx, ky);
      const Real r = v.h.norm();
      if (r < kGapTol) throw gap_closure_error("transverse_conductivity: band touching");
      const Real f = 0.5 * g.dhx.cross(g.dhy).dot(v.h) / (r * r * r);
      const Real wk = 2.0 * r;
      const Real thermal = ctx.zero_temperature() ? 1.0 : std::tanh(beta_ * r);
      wk2_[idx] = wk * wk;
      base_[idx] = -grid.cell_area() / kTwoPi * thermal * f * wk * wk;
      // |grad w_k^2| = |8 (h . d_x h, h . d_y h)|
      grad_norm[idx] = 8.0 * std::hypot(v.h.dot(g.dhx), v.h.dot(g.dhy));
    }
  };
  if (pool)
    pool->parallel_for(n, fill);
  else
    fill(0, n);

  // Curvature scale of w_k^2 from grid second differences; it floors the
  // regulator at stationary points of the dispersion.
  Real hess = 0.0;
  const Real dk = grid.dkx();
  for (int i = 0; i < grid.nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      const std::size_t idx = static_cast<std::size_t>(i) * ny + j;
      const Real cxx = wk2_[static_cast<std::size_t>((i + 1) % grid.nx) * ny + j] - 2.0 * wk2_[idx] +
                       wk2_[static_cast<std::size_t>((i + grid.nx - 1) % grid.nx) * ny + j];
      const Real cyy = wk2_[static_cast<std::size_t>(i) * ny + (j + 1) % ny] - 2.0 * wk2_[idx] +
                       wk2_[static_cast<std::size_t>(i) * ny + (j + ny - 1) % ny];
      hess = std::max({hess, std::abs(cxx) / (dk * dk), std::abs(cyy) / (grid.dky() * grid.dky())});
    }
  }

  Real wk2_min = wk2_[0], wk2_max = wk2_[0];
  for (std::size_t idx = 0; idx < n; ++idx) {
    eta_[idx] = kRegulatorScale * (dk * grad_norm[idx] + 0.5 * dk * dk * hess);
    wk2_min = std::min(wk2_min, wk2_[idx]);
    wk2_max = std::max(wk2_max, wk2_[idx]);
  }
  band_min_ = std::sqrt(wk2_min);
  band_max_ = std::sqrt(wk2_max);

  // Pole-free margins from the regulators near the band extremes (the
  // dispersion is stationary there, so these stay small even when steep
  // mid-band nodes carry wide regulators).
  const Real slab = 0.02 * (wk2_max - wk2_min);
  for (std::size_t idx = 0; idx < n; ++idx) {
    if (wk2_[idx] <= wk2_min + slab) edge_margin_lo_ = std::max(edge_margin_lo_, 4.0 * eta_[idx]);
    if (wk2_[idx] >= wk2_max - slab) edge_margin_hi_ = std::max(edge_margin_hi_, 4.0 * eta_[idx]);
  }
}

ConductivityEvaluator::Sample ConductivityEvaluator::sigma(Real omega) const {
  const std::size_t n = base_.size();
  const Real w2 = omega * omega;
  std::vector<Real> terms(n);

  const bool pole_free = w2 < band_min_ * band_min_ - edge_margin_lo_ ||
                         w2 > band_max_ * band_max_ + edge_margin_hi_;
  if (pole_free) {
    for (std::size_t idx = 0; idx < n; ++idx) terms[idx] = base_[idx] / (wk2_[idx] - w2);
    return {pairwise_sum(terms), 0.0};
  }

  for (std::size_t idx = 0; idx < n; ++idx) {
    const Real x = wk2_[idx] - w2;
    terms[idx] = base_[idx] * x / (x * x + eta_[idx] * eta_[idx]);
  }
  const Real s1 = pairwise_sum(terms);
  for (std::size_t idx = 0; idx < n; ++idx) {
    const Real x = wk2_[idx] - w2;
    const Real eta = 0.5 * eta_[idx];
    terms[idx] = base_[idx] * x / (x * x + eta * eta);
  }
  const Real s2 = pairwise_sum(terms);
  return {2.0 * s2 - s1, std::abs(s2 - s1)};
}

ConductivityEvaluator::Sample transverse_conductivity(const HVectorField& field, Real omega,
                                                      const ThermalContext& ctx,
                                                      const BZGrid& grid) {
  return ConductivityEvaluator(field, grid, ctx).sigma(omega);
}

SpectralTrace conductivity_trace(const HVectorField& field, const ThermalContext& ctx,
                                 const BZGrid& grid, Real omega_min, Real omega_max, int count,
                                 ThreadPool* pool) {
  const ConductivityEvaluator eval(field, grid, ctx, pool);
  SpectralTrace trace;
  trace.beta = ctx.beta;
  trace.model = field.name();
  trace.units = "e2_h";
  trace.params = params_string(field);
  trace.omegas = linear_nodes(omega_min, omega_max, count);
  trace.values.resize(trace.omegas.size());
  trace.errors.resize(trace.omegas.size());
  auto fill = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto s = eval.sigma(trace.omegas[i]);
      trace.values[i] = s.value;
      trace.errors[i] = s.error;
    }
  };
  if (pool)
    pool->parallel_for(trace.omegas.size(), fill);
  else
    fill(0, trace.omegas.size());
  return trace;
}

std::vector<Real> tknn_omega_nodes(Real beta, Real wmin, Real wmax) {
  const Real kernel_width = 10.0 / beta;
  const Real lo = std::max(std::min(0.5 * wmin, 1e-3 * kernel_width), 1e-6);
  const Real hi = std::max(1.3 * wmax, 60.0 / beta);

  std::vector<Real> nodes{0.0};
  const Real band_lo = 0.98 * wmin;
  for (Real w : log_spaced_nodes(lo, std::min(band_lo, hi), 120)) nodes.push_back(w);
  if (band_lo < hi) {
    for (Real w : linear_nodes(band_lo, std::min(1.02 * wmax, hi), 700)) nodes.push_back(w);
    if (1.02 * wmax < hi)
      for (Real w : log_spaced_nodes(1.02 * wmax, hi, 80)) nodes.push_back(w);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end(),
                          [](Real a, Real b) { return b - a < 1e-12; }),
              nodes.end());
  return nodes;
}

TknnResult tknn_frequency_side(const HVectorField& field, const ThermalContext& ctx,
                               const BZGrid& grid, ThreadPool* pool) {
  const ConductivityEvaluator eval(field, grid, ctx, pool);
  if (ctx.zero_temperature()) {
    const auto s0 = eval.sigma(0.0);
    return {-s0.value, s0.error, s0.value};
  }

  const auto nodes = tknn_omega_nodes(ctx.beta, eval.band_min(), eval.band_max());

  // Even integrand: integrate 2 * int_0^inf sigma~ K. The regulator
  // discrepancies are accumulated kernel-weighted as the PV contribution
  // to the overall estimate.
  std::vector<std::pair<Real, Real>> pv_samples;
  auto integrand = [&](Real w) {
    const auto s = eval.sigma(w);
    const Real kw = kernel_K(w, ctx);
    if (s.error > 0.0) pv_samples.emplace_back(w, s.error * kw);
    return s.value * kw;
  };
  const IntegralResult integral = omega_integrate(integrand, nodes);

  std::sort(pv_samples.begin(), pv_samples.end());
  Real pv_weighted = 0.0;
  for (std::size_t i = 0; i + 1 < pv_samples.size(); ++i)
    pv_weighted += 0.5 * (pv_samples[i + 1].first - pv_samples[i].first) *
                   (pv_samples[i].second + pv_samples[i + 1].second);

  TknnResult result;
  result.n_u = -2.0 * integral.value;
  result.error_estimate = 2.0 * integral.error + pv_weighted;
  result.sigma_static = eval.sigma(0.0).value;
  if (result.error_estimate > 0.05)
    throw numerical_error("tknn_frequency_side: quadrature estimate " +
                          std::to_string(result.error_estimate) + " exceeds 0.05");
  return result;
}

Real efield_muc_report(Real n_u) { return -kTwoPi * n_u; }

}  // namespace uhlmann
