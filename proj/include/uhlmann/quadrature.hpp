#pragma once

#include <span>
#include <vector>

#include "uhlmann/bz_grid.hpp"
#include "uhlmann/parallel.hpp"
#include "uhlmann/types.hpp"

namespace uhlmann {

/// Pairwise (tree) summation over the given values. The reduction order
/// depends only on the length, which keeps grid integrals bit-stable no
/// matter how many threads filled the buffer.
Real pairwise_sum(std::span<const Real> values);

struct IntegralResult {
  Real value = 0.0;
  Real error = 0.0;
};

/// Periodic trapezoid rule over the BZ: cell_area * sum f(node).
/// Exact for trigonometric modes below the grid Nyquist frequency.
template <typename F>
Real bz_integrate(F&& f, const BZGrid& grid, ThreadPool* pool = nullptr) {
  std::vector<Real> values(grid.size());
  auto fill = [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      const int i = static_cast<int>(idx) / grid.ny;
      const int j = static_cast<int>(idx) % grid.ny;
      values[idx] = f(grid.kx(i), grid.ky(j));
    }
  };
  if (pool)
    pool->parallel_for(values.size(), fill);
  else
    fill(0, values.size());
  return grid.cell_area() * pairwise_sum(values);
}

/// Composite Simpson over a sorted, possibly non-uniform node set.
/// Each interval is refined with its midpoint; the reported error is the
/// (conservative) Simpson-vs-trapezoid discrepancy.
template <typename F>
IntegralResult omega_integrate(F&& f, std::span<const Real> nodes) {
  if (nodes.size() < 2) return {};
  std::vector<Real> simpson_terms(nodes.size() - 1);
  std::vector<Real> trapezoid_terms(nodes.size() - 1);
  Real prev = f(nodes[0]);
  for (std::size_t s = 0; s + 1 < nodes.size(); ++s) {
    const Real a = nodes[s], b = nodes[s + 1];
    if (!(b > a)) throw std::invalid_argument("omega_integrate: nodes must be strictly increasing");
    const Real fm = f(0.5 * (a + b));
    const Real fb = f(b);
    const Real h = b - a;
    simpson_terms[s] = h / 6.0 * (prev + 4.0 * fm + fb);
    trapezoid_terms[s] = h / 4.0 * (prev + 2.0 * fm + fb);
    prev = fb;
  }
  const Real simpson = pairwise_sum(simpson_terms);
  const Real trapezoid = pairwise_sum(trapezoid_terms);
  return {simpson, std::abs(simpson - trapezoid)};
}

/// Geometric node ladder on [lo, hi] (lo > 0), endpoints included.
std::vector<Real> log_spaced_nodes(Real lo, Real hi, int count);

/// Uniform node ladder on [lo, hi], endpoints included.
std::vector<Real> linear_nodes(Real lo, Real hi, int count);

}  // namespace uhlmann
