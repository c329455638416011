#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace uhlmann {

using Real = double;
using Complex = std::complex<Real>;
using Vec3 = Eigen::Vector3d;
using Mat2c = Eigen::Matrix2cd;
using MatXc = Eigen::MatrixXcd;
using VecX = Eigen::VectorXd;

inline constexpr Real kPi = 3.14159265358979323846;
inline constexpr Real kTwoPi = 2.0 * kPi;
inline constexpr Real kZeta3 = 1.2020569031595942854;
inline constexpr Real kZeta5 = 1.0369277551433699263;
inline constexpr Real kZeta7 = 1.0083492773819228268;

// |h_k| below this counts as a band touching.
inline constexpr Real kGapTol = 1e-12;

/// Thrown when an operation requires a gapped spectrum but |h_k| ~ 0.
class gap_closure_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a numerical result fails its internal consistency check
/// (non-integer lattice invariant, quadrature estimate out of budget, ...).
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inverse temperature in units hbar = k_B = e = 1.
///
/// Energies are measured in units of the global hopping scale, so beta
/// carries 1/energy. beta = +infinity is the exact zero-temperature
/// sentinel: thermal factors are then evaluated symbolically, never as
/// tanh of a large float.
struct ThermalContext {
  Real beta = 1.0;

  static ThermalContext with_beta(Real beta) {
    if (std::isnan(beta) || beta <= 0.0)
      throw std::invalid_argument("ThermalContext: beta must be > 0 or +inf");
    return ThermalContext{beta};
  }

  static ThermalContext with_temperature(Real t) {
    if (std::isnan(t) || t < 0.0)
      throw std::invalid_argument("ThermalContext: temperature must be >= 0");
    if (t == 0.0) return ThermalContext{std::numeric_limits<Real>::infinity()};
    return ThermalContext{1.0 / t};
  }

  bool zero_temperature() const { return std::isinf(beta); }
  Real temperature() const { return zero_temperature() ? 0.0 : 1.0 / beta; }
};

/// Pauli matrices sigma_x, sigma_y, sigma_z.
inline const std::array<Mat2c, 3>& pauli_matrices() {
  static const std::array<Mat2c, 3> sigma = [] {
    std::array<Mat2c, 3> s;
    s[0] << 0, 1, 1, 0;
    s[1] << 0, Complex(0, -1), Complex(0, 1), 0;
    s[2] << 1, 0, 0, -1;
    return s;
  }();
  return sigma;
}

/// h . sigma for a real 3-vector h.
inline Mat2c pauli_dot(const Vec3& h) {
  Mat2c m;
  m << h.z(), Complex(h.x(), -h.y()), Complex(h.x(), h.y()), -h.z();
  return m;
}

}  // namespace uhlmann
