#pragma once

#include <random>
#include <vector>

#include "uhlmann/gibbs.hpp"
#include "uhlmann/types.hpp"

namespace uhlmann {

/// Finite-dimensional Gibbs system: Hamiltonian eigendecomposition,
/// thermal weights, and the Hermitian observables O_mu that couple linear
/// perturbations H = H_0 + sum_mu O_mu lambda_mu.
class LehmannSystem {
 public:
  static constexpr int kMaxDim = 64;

  LehmannSystem(const MatXc& hamiltonian, std::vector<MatXc> observables, Real beta);

  int dim() const { return sys_.dim(); }
  Real beta() const { return beta_; }
  const VecX& energies() const { return sys_.energies; }
  const VecX& weights() const { return weights_; }
  const EigenSystem& eigensystem() const { return sys_; }
  int observable_count() const { return static_cast<int>(observables_.size()); }
  const MatXc& observable(int mu) const { return observables_.at(mu); }

  /// Observable in the Hamiltonian eigenbasis.
  const MatXc& observable_eigenbasis(int mu) const { return observables_eig_.at(mu); }

 private:
  EigenSystem sys_;
  VecX weights_;
  Real beta_ = 0.0;
  std::vector<MatXc> observables_;
  std::vector<MatXc> observables_eig_;
};

/// One delta line of a Lehmann spectral decomposition.
struct SpectralLine {
  Real omega = 0.0;
  Complex weight;
};

/// Exact line decomposition of the dissipative susceptibility
///   chi''_{mu nu}(omega) = pi sum_{ij} (O_mu)_{ij} (O_nu)_{ji}
///                          (p_i - p_j) delta(omega - (E_j - E_i)),
/// one line per nondegenerate (i, j) pair, zero-weight lines dropped.
/// Degenerate pairs carry (p_i - p_j) = 0 exactly and are excluded.
std::vector<SpectralLine> chi_lehmann(const LehmannSystem& sys, int mu, int nu);

/// Line decomposition of the structure-factor difference
/// S_{mu nu}(omega) - S_{nu mu}(-omega), lines 2pi (p_i - p_j) (O_mu)_{ij}
/// (O_nu)_{ji} at omega = E_j - E_i.
std::vector<SpectralLine> structure_factor_difference(const LehmannSystem& sys, int mu, int nu);

/// MUC from the susceptibility route: (i/pi) sum over chi'' lines of
/// weight * tanh^2(omega beta / 2) / omega^2 (the delta integration is
/// analytic line by line).
Real muc_from_chi(const LehmannSystem& sys, int mu, int nu);

/// MUC from the structure-factor route: (i/2pi) sum over the
/// fluctuation-dissipation difference lines; equal to muc_from_chi
/// identically at the line level.
Real muc_from_structure_factor(const LehmannSystem& sys, int mu, int nu);

/// Direct SLD commutator (i/4) Tr(rho [L_mu, L_nu]) on the same system.
Real muc_sld_direct(const LehmannSystem& sys, int mu, int nu);

/// Random Hermitian test system with two observables, Gaussian entries.
LehmannSystem random_lehmann_system(int dim, Real beta, std::mt19937_64& rng);

}  // namespace uhlmann
