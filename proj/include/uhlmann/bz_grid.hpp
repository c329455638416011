#pragma once

#include <cstddef>
#include <stdexcept>

#include "uhlmann/types.hpp"

namespace uhlmann {

/// Uniform N x N discretization of the Brillouin zone [0, 2pi)^2.
///
/// Nodes sit at k = 2pi j / n with no endpoint duplication, so the plain
/// node sum times the cell area is the periodic trapezoid rule (spectrally
/// accurate for smooth periodic integrands).
struct BZGrid {
  int nx = 0;
  int ny = 0;

  explicit BZGrid(int n) : BZGrid(n, n) {}
  BZGrid(int nx_, int ny_) : nx(nx_), ny(ny_) {
    if (nx < 8 || ny < 8) throw std::invalid_argument("BZGrid: need at least 8 nodes per axis");
  }

  Real dkx() const { return kTwoPi / nx; }
  Real dky() const { return kTwoPi / ny; }
  Real cell_area() const { return dkx() * dky(); }
  Real kx(int i) const { return kTwoPi * i / nx; }
  Real ky(int j) const { return kTwoPi * j / ny; }
  std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }

  BZGrid doubled() const { return BZGrid(2 * nx, 2 * ny); }
};

}  // namespace uhlmann
