#include "uhlmann/gibbs.hpp"

#include <cmath>

namespace uhlmann {

namespace {

// Degeneracy threshold relative to the local energy scale.
Real degenerate_tol(const VecX& e) {
  return 1e-12 * (1.0 + e.cwiseAbs().maxCoeff());
}

}  // namespace

EigenSystem eigensystem(const MatXc& hamiltonian) {
  if (hamiltonian.rows() != hamiltonian.cols())
    throw std::invalid_argument("eigensystem: matrix must be square");
  const Real hermit = (hamiltonian - hamiltonian.adjoint()).norm();
  if (hermit > 1e-10 * (1.0 + hamiltonian.norm()))
    throw std::invalid_argument("eigensystem: matrix is not Hermitian");

  Eigen::SelfAdjointEigenSolver<MatXc> solver(hamiltonian);
  if (solver.info() != Eigen::Success)
    throw numerical_error("eigensystem: eigendecomposition failed");
  EigenSystem sys{solver.eigenvalues(), solver.eigenvectors()};

  const MatXc rebuilt =
      sys.vectors * sys.energies.asDiagonal() * sys.vectors.adjoint();
  if ((rebuilt - hamiltonian).norm() > 1e-10 * (1.0 + hamiltonian.norm()))
    throw numerical_error("eigensystem: reconstruction residual above 1e-10");
  return sys;
}

VecX gibbs_weights(const VecX& energies, Real beta) {
  if (!(beta > 0.0) || std::isinf(beta))
    throw std::invalid_argument("gibbs_weights: beta must be finite and > 0");
  const Real e0 = energies.minCoeff();
  VecX w = (-beta * (energies.array() - e0)).exp();
  return w / w.sum();
}

MatXc gibbs_density(const EigenSystem& sys, Real beta) {
  const VecX p = gibbs_weights(sys.energies, beta);
  return sys.vectors * p.asDiagonal() * sys.vectors.adjoint();
}

MatXc gibbs_state_derivative(const EigenSystem& sys, const MatXc& dH, Real beta) {
  const VecX& e = sys.energies;
  const VecX p = gibbs_weights(e, beta);
  const MatXc a = sys.vectors.adjoint() * dH * sys.vectors;
  const Real tol = degenerate_tol(e);
  const int n = sys.dim();

  Real mean = 0.0;
  for (int i = 0; i < n; ++i) mean += p[i] * a(i, i).real();

  MatXc d(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        d(i, i) = -beta * p[i] * (a(i, i) - mean);
      } else if (std::abs(e[i] - e[j]) > tol) {
        d(i, j) = a(i, j) * (p[i] - p[j]) / (e[i] - e[j]);
      } else {
        d(i, j) = -beta * a(i, j) * p[i];  // divided-difference limit
      }
    }
  }
  return sys.vectors * d * sys.vectors.adjoint();
}

MatXc sld_matrix(const EigenSystem& sys, const MatXc& dH, Real beta) {
  const VecX& e = sys.energies;
  const VecX p = gibbs_weights(e, beta);
  const MatXc a = sys.vectors.adjoint() * dH * sys.vectors;
  const Real tol = degenerate_tol(e);
  const int n = sys.dim();

  Real mean = 0.0;
  for (int i = 0; i < n; ++i) mean += p[i] * a(i, i).real();

  MatXc l(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        l(i, i) = -beta * (a(i, i) - mean);
      } else if (std::abs(e[i] - e[j]) > tol) {
        l(i, j) = 2.0 * a(i, j) * std::tanh(beta * (e[j] - e[i]) / 2.0) / (e[i] - e[j]);
      } else {
        // Degenerate pair: d rho_{ij} = -beta A_{ij} p_i and p_i = p_j.
        l(i, j) = -beta * a(i, j);
      }
    }
  }
  return sys.vectors * l * sys.vectors.adjoint();
}

Real muc_commutator(const EigenSystem& sys, const MatXc& dHx, const MatXc& dHy, Real beta) {
  const MatXc lx = sld_matrix(sys, dHx, beta);
  const MatXc ly = sld_matrix(sys, dHy, beta);
  const MatXc rho = gibbs_density(sys, beta);
  const Complex tr = (rho * (lx * ly - ly * lx)).trace();
  // i/4 Tr(rho [Lx, Ly]) of Hermitian factors is real.
  return -0.25 * tr.imag();
}

}  // namespace uhlmann
