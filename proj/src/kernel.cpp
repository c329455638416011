#include "uhlmann/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "uhlmann/quadrature.hpp"
#include "uhlmann/trigamma.hpp"

namespace uhlmann {

Real kernel_K(Real omega, const ThermalContext& ctx) {
  if (ctx.zero_temperature())
    throw std::invalid_argument("kernel_K: beta must be finite (the T = 0 kernel is a delta)");
  const Real beta = ctx.beta;
  const Real a = beta * std::abs(omega) / kTwoPi;
  if (a < 1e-3) {
    // Im psi1(1/2 + ia)/a = psi2(1/2) - a^2 psi4(1/2)/6 + a^4 psi6(1/2)/120 + ...
    const Real a2 = a * a;
    return beta / (kPi * kPi * kPi * kPi) *
           (14.0 * kZeta3 + a2 * (-124.0 * kZeta5 + a2 * 762.0 * kZeta7));
  }
  const Complex psi1 = trigamma(Complex(0.5, a));
  return -2.0 / (kPi * kPi * kPi) * psi1.imag() / std::abs(omega);
}

Real kernel_mass(const ThermalContext& ctx, Real window) {
  if (!(window > 0.0)) throw std::invalid_argument("kernel_mass: window must be > 0");
  // Even integrand: 2 * int_0^W, log ladder across the peak plus a linear tail.
  const Real peak = 1.0 / ctx.beta;
  std::vector<Real> nodes{0.0};
  const Real lo = std::min(window / 2.0, peak * 1e-3);
  for (Real x : log_spaced_nodes(lo, std::min(20.0 * peak, window), 160)) nodes.push_back(x);
  if (nodes.back() < window)
    for (Real x : linear_nodes(nodes.back(), window, 240)) nodes.push_back(x);
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  auto f = [&](Real w) { return kernel_K(w, ctx); };
  return 2.0 * omega_integrate(f, nodes).value;
}

Real kernel_total_mass(const ThermalContext& ctx) {
  const Real window = 200.0 / ctx.beta;
  const Real head = kernel_mass(ctx, window);
  // Tail: 2 int_W^inf K dx = 2 int_0^1 K(W/t) W/t^2 dt, smooth down to t = 0.
  auto f = [&](Real t) {
    const Real x = window / t;
    return kernel_K(x, ctx) * window / (t * t);
  };
  const auto tail_nodes = linear_nodes(1e-6, 1.0, 512);
  const Real tail = 2.0 * omega_integrate(f, tail_nodes).value;
  return head + tail;
}

SpectralTrace kernel_trace(const ThermalContext& ctx, Real omega_min, Real omega_max, int count) {
  if (!(omega_max > omega_min) || count < 2)
    throw std::invalid_argument("kernel_trace: need omega_min < omega_max and count >= 2");
  SpectralTrace trace;
  trace.beta = ctx.beta;
  trace.units = "1/omega";
  trace.omegas = linear_nodes(omega_min, omega_max, count);
  trace.values.reserve(trace.omegas.size());
  trace.errors.assign(trace.omegas.size(), 0.0);
  for (Real w : trace.omegas) trace.values.push_back(kernel_K(w, ctx));
  return trace;
}

}  // namespace uhlmann
