#pragma once

#include <string>
#include <vector>

#include "uhlmann/bz_grid.hpp"
#include "uhlmann/models.hpp"
#include "uhlmann/parallel.hpp"
#include "uhlmann/types.hpp"

namespace uhlmann {

/// Berry curvature of the lower band,
///   F_xy = (1/2) (d_x h x d_y h) . h / |h|^3,
/// from the analytic field gradient. Throws gap_closure_error when
/// |h_k| < 1e-12.
Real berry_curvature(const HVectorField& field, Real kx, Real ky);

/// Chern number as the periodic-trapezoid BZ integral of the Berry
/// curvature divided by 2pi. Near-integer for gapped fields.
Real chern_number(const HVectorField& field, const BZGrid& grid, ThreadPool* pool = nullptr);

struct FhsResult {
  int value = 0;
  Real residual = 0.0;  // |raw/2pi - value|
};

/// Exact-integer Chern oracle: lattice field strength from lower-band
/// projectors. Each plaquette contributes -arg Tr(P1 P2 P3 P4); the total
/// over the BZ is 2pi times an integer. A residual above 1e-8 signals a
/// gap closure or an insufficient grid and throws numerical_error.
FhsResult chern_fhs_detailed(const HVectorField& field, const BZGrid& grid,
                             ThreadPool* pool = nullptr);
int chern_fhs(const HVectorField& field, const BZGrid& grid, ThreadPool* pool = nullptr);

/// Thermal weight of the mean Uhlmann curvature relative to the Berry
/// curvature: tanh^3(beta |h|), exactly 1 at the zero-temperature
/// sentinel. The cube combines the population imbalance tanh(beta|h|) of
/// the two bands with the squared thermal suppression of the
/// off-diagonal logarithmic derivatives; it is pinned against the SLD
/// commutator route over the full (model, k, beta) sample space.
Real muc_thermal_weight(Real h_norm, const ThermalContext& ctx);

/// Mean Uhlmann curvature in closed form: muc_thermal_weight * F_xy.
Real muc_closed_form(const HVectorField& field, Real kx, Real ky, const ThermalContext& ctx);

/// Mean Uhlmann curvature via the symmetric-logarithmic-derivative
/// commutator (i/4) Tr(rho [L_x, L_y]) on the Gibbs state of H(k), with
/// d rho taken through the spectral decomposition from the analytic
/// field gradient. Independent of the closed form; requires finite beta.
Real muc_sld(const HVectorField& field, Real kx, Real ky, const ThermalContext& ctx);

/// Uhlmann number n_U = (1/2pi) * BZ integral of the MUC. Equals the
/// Chern number at the zero-temperature sentinel.
Real uhlmann_number(const HVectorField& field, const ThermalContext& ctx, const BZGrid& grid,
                    ThreadPool* pool = nullptr);

/// Gibbs state of the two-band Bloch Hamiltonian at one k point.
struct GibbsBlochState {
  Mat2c rho;
  Real p_lower = 0.0;  // weight of E_- = eps - |h|
  Real p_upper = 0.0;
};

GibbsBlochState gibbs_bloch_state(const HVectorField& field, Real kx, Real ky,
                                  const ThermalContext& ctx);

enum class CurvatureKind { berry, muc };

/// Scalar curvature sampled on every grid node (units 1/area in k space).
struct CurvatureMap {
  BZGrid grid;
  CurvatureKind kind = CurvatureKind::berry;
  Real beta = 0.0;
  std::string model;
  std::string params;
  std::vector<Real> values;  // row-major, index i*ny + j
};

CurvatureMap curvature_map(const HVectorField& field, const BZGrid& grid, CurvatureKind kind,
                           const ThermalContext& ctx, ThreadPool* pool = nullptr);

}  // namespace uhlmann
