#pragma once

#include <string>
#include <vector>

#include "uhlmann/types.hpp"

namespace uhlmann {

/// Sampled function of frequency (conductivity in e^2/h, kernel in
/// 1/frequency) with its quadrature metadata.
struct SpectralTrace {
  std::vector<Real> omegas;  // strictly increasing
  std::vector<Real> values;
  std::vector<Real> errors;
  Real beta = 0.0;
  std::string model;
  std::string params;
  std::string units;
};

}  // namespace uhlmann
