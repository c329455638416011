#pragma once

#include "uhlmann/types.hpp"

namespace uhlmann {

/// Eigendecomposition H = V diag(E) V^dagger of a Hermitian matrix,
/// with the reconstruction residual checked at build time.
struct EigenSystem {
  VecX energies;
  MatXc vectors;

  int dim() const { return static_cast<int>(energies.size()); }
};

EigenSystem eigensystem(const MatXc& hamiltonian);

/// Gibbs weights p_i = exp(-beta E_i)/Z, evaluated with the ground state
/// energy subtracted so no finite beta underflows the whole vector.
VecX gibbs_weights(const VecX& energies, Real beta);

/// rho = exp(-beta H)/Z.
MatXc gibbs_density(const EigenSystem& sys, Real beta);

/// Exact directional derivative of the Gibbs state along a Hamiltonian
/// perturbation dH, through the spectral decomposition:
///   (d rho)_{ij} = A_{ij} (p_i - p_j)/(E_i - E_j)      (i != j)
///   (d rho)_{ii} = -beta p_i (A_{ii} - <dH>)
/// with A = V^dagger dH V in the eigenbasis.
MatXc gibbs_state_derivative(const EigenSystem& sys, const MatXc& dH, Real beta);

/// Symmetric logarithmic derivative L solving d rho = (L rho + rho L)/2,
/// i.e. L_{ij} = 2 (d rho)_{ij} / (p_i + p_j) in the eigenbasis. The ratio
/// (p_i - p_j)/(p_i + p_j) is folded to tanh(beta (E_j - E_i)/2) so large
/// beta never divides an underflowed weight pair.
MatXc sld_matrix(const EigenSystem& sys, const MatXc& dH, Real beta);

/// Mean Uhlmann curvature (i/4) Tr(rho [L_x, L_y]) for the Gibbs state of
/// sys under the two perturbation directions dHx, dHy.
Real muc_commutator(const EigenSystem& sys, const MatXc& dHx, const MatXc& dHy, Real beta);

}  // namespace uhlmann
