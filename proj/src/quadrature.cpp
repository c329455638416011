#include "uhlmann/quadrature.hpp"

#include <cmath>

namespace uhlmann {

Real pairwise_sum(std::span<const Real> values) {
  const std::size_t n = values.size();
  if (n <= 16) {
    Real s = 0.0;
    for (Real v : values) s += v;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

std::vector<Real> log_spaced_nodes(Real lo, Real hi, int count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2)
    throw std::invalid_argument("log_spaced_nodes: need 0 < lo < hi and count >= 2");
  std::vector<Real> nodes(count);
  const Real step = std::log(hi / lo) / (count - 1);
  for (int i = 0; i < count; ++i) nodes[i] = lo * std::exp(step * i);
  nodes.front() = lo;
  nodes.back() = hi;
  return nodes;
}

std::vector<Real> linear_nodes(Real lo, Real hi, int count) {
  if (!(hi > lo) || count < 2)
    throw std::invalid_argument("linear_nodes: need lo < hi and count >= 2");
  std::vector<Real> nodes(count);
  for (int i = 0; i < count; ++i) nodes[i] = lo + (hi - lo) * i / (count - 1);
  nodes.back() = hi;
  return nodes;
}

}  // namespace uhlmann
