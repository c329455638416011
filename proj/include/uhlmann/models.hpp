#pragma once

#include <functional>
#include <map>
#include <string>

#include "uhlmann/bz_grid.hpp"
#include "uhlmann/types.hpp"

namespace uhlmann {

struct FieldValue {
  Real epsilon = 0.0;  // identity coefficient of H(k) = epsilon 1 + h . sigma
  Vec3 h = Vec3::Zero();
};

struct FieldGradient {
  Vec3 dhx = Vec3::Zero();  // d h / d k_x
  Vec3 dhy = Vec3::Zero();  // d h / d k_y
};

/// A two-band Bloch Hamiltonian H(k) = epsilon_k 1 + h_k . sigma given by
/// the map k -> (epsilon_k, h_k) plus its analytic k-gradient.
///
/// Both are 2pi-periodic in each k component and accept any real k.
/// Evaluation is pure and reentrant.
class HVectorField {
 public:
  using ParamMap = std::map<std::string, Real>;
  using EvalFn = std::function<FieldValue(Real, Real)>;
  using GradFn = std::function<FieldGradient(Real, Real)>;

  HVectorField(std::string name, ParamMap params, EvalFn eval, GradFn grad)
      : name_(std::move(name)), params_(std::move(params)),
        eval_(std::move(eval)), grad_(std::move(grad)) {}

  FieldValue eval(Real kx, Real ky) const { return eval_(kx, ky); }
  FieldGradient grad(Real kx, Real ky) const { return grad_(kx, ky); }

  const std::string& name() const { return name_; }
  const ParamMap& params() const { return params_; }

 private:
  std::string name_;
  ParamMap params_;
  EvalFn eval_;
  GradFn grad_;
};

/// QWZ model: h = (sin kx, sin ky, u + cos kx + cos ky), epsilon = 0.
HVectorField qwz_field(Real u);

/// Triangular-lattice Chern insulator with t1 = t3 = 1:
/// h = 2 (cos kx, cos ky, t2 cos(kx + ky) + sin kx + sin ky), epsilon = 0.
HVectorField sticlet_field(Real t2);

/// Model lookup by name ("qwz", "sticlet") with its parameter map.
HVectorField make_field(const std::string& name, const HVectorField::ParamMap& params);

/// "key=value" rendering of the parameter map, space separated.
std::string params_string(const HVectorField& field);

/// Band energies E_- = eps - |h|, E_+ = eps + |h|.
struct BandPair {
  Real e_minus = 0.0;
  Real e_plus = 0.0;
  Real gap() const { return e_plus - e_minus; }
};

BandPair band_pair(const HVectorField& field, Real kx, Real ky);

/// Minimum of 2|h_k| over the grid with one local refinement pass around
/// the coarse argmin. Requires at least 64 nodes per axis.
Real band_gap(const HVectorField& field, const BZGrid& grid);

}  // namespace uhlmann
