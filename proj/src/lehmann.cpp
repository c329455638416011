#include "uhlmann/lehmann.hpp"

#include <cmath>

namespace uhlmann {

namespace {

Real line_tol(const VecX& e) { return 1e-10 * (1.0 + e.cwiseAbs().maxCoeff()); }

Real assert_real(Complex v, const char* what) {
  if (std::abs(v.imag()) > 1e-10 * (1.0 + std::abs(v.real())))
    throw numerical_error(std::string(what) + ": result has a spurious imaginary part");
  return v.real();
}

}  // namespace

LehmannSystem::LehmannSystem(const MatXc& hamiltonian, std::vector<MatXc> observables, Real beta)
    : sys_(uhlmann::eigensystem(hamiltonian)),
      weights_(gibbs_weights(sys_.energies, beta)),
      beta_(beta),
      observables_(std::move(observables)) {
  if (dim() > kMaxDim) throw std::invalid_argument("LehmannSystem: dimension above 64");
  observables_eig_.reserve(observables_.size());
  for (const MatXc& o : observables_) {
    if (o.rows() != dim() || o.cols() != dim())
      throw std::invalid_argument("LehmannSystem: observable dimension mismatch");
    if ((o - o.adjoint()).norm() > 1e-10 * (1.0 + o.norm()))
      throw std::invalid_argument("LehmannSystem: observable is not Hermitian");
    observables_eig_.push_back(sys_.vectors.adjoint() * o * sys_.vectors);
  }
}

std::vector<SpectralLine> chi_lehmann(const LehmannSystem& sys, int mu, int nu) {
  const MatXc& omu = sys.observable_eigenbasis(mu);
  const MatXc& onu = sys.observable_eigenbasis(nu);
  const VecX& e = sys.energies();
  const VecX& p = sys.weights();
  const Real tol = line_tol(e);
  const int n = sys.dim();

  Real weight_scale = 0.0;
  std::vector<SpectralLine> lines;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const Complex w = kPi * omu(i, j) * onu(j, i) * (p[i] - p[j]);
      if (std::abs(e[i] - e[j]) <= tol) {
        // Degenerate transition: the thermal factor vanishes identically.
        if (std::abs(w) > 1e-12 * (1.0 + weight_scale))
          throw numerical_error("chi_lehmann: nonzero weight on a zero-frequency line");
        continue;
      }
      weight_scale = std::max(weight_scale, std::abs(w));
      lines.push_back({e[j] - e[i], w});
    }
  }
  std::erase_if(lines, [&](const SpectralLine& l) {
    return std::abs(l.weight) <= 1e-14 * (1.0 + weight_scale);
  });
  return lines;
}

std::vector<SpectralLine> structure_factor_difference(const LehmannSystem& sys, int mu, int nu) {
  const MatXc& omu = sys.observable_eigenbasis(mu);
  const MatXc& onu = sys.observable_eigenbasis(nu);
  const VecX& e = sys.energies();
  const VecX& p = sys.weights();
  const Real tol = line_tol(e);
  const int n = sys.dim();

  // S_{mu nu}(omega) carries 2pi p_i at omega = E_j - E_i; reflecting
  // S_{nu mu}(-omega) and relabelling i <-> j turns its weight into
  // 2pi p_j at the same position, so the difference carries p_i - p_j.
  Real weight_scale = 0.0;
  std::vector<SpectralLine> lines;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j || std::abs(e[i] - e[j]) <= tol) continue;
      const Complex w = kTwoPi * omu(i, j) * onu(j, i) * (p[i] - p[j]);
      weight_scale = std::max(weight_scale, std::abs(w));
      lines.push_back({e[j] - e[i], w});
    }
  }
  std::erase_if(lines, [&](const SpectralLine& l) {
    return std::abs(l.weight) <= 1e-14 * (1.0 + weight_scale);
  });
  return lines;
}

Real muc_from_chi(const LehmannSystem& sys, int mu, int nu) {
  Complex acc = 0.0;
  for (const SpectralLine& l : chi_lehmann(sys, mu, nu)) {
    const Real t = std::tanh(l.omega * sys.beta() / 2.0);
    acc += l.weight * t * t / (l.omega * l.omega);
  }
  return assert_real(Complex(0, 1) / kPi * acc, "muc_from_chi");
}

Real muc_from_structure_factor(const LehmannSystem& sys, int mu, int nu) {
  Complex acc = 0.0;
  for (const SpectralLine& l : structure_factor_difference(sys, mu, nu)) {
    const Real t = std::tanh(l.omega * sys.beta() / 2.0);
    acc += l.weight * t * t / (l.omega * l.omega);
  }
  return assert_real(Complex(0, 1) / kTwoPi * acc, "muc_from_structure_factor");
}

Real muc_sld_direct(const LehmannSystem& sys, int mu, int nu) {
  return muc_commutator(sys.eigensystem(), sys.observable(mu), sys.observable(nu), sys.beta());
}

LehmannSystem random_lehmann_system(int dim, Real beta, std::mt19937_64& rng) {
  std::normal_distribution<Real> gauss(0.0, 1.0);
  auto hermitian = [&] {
    MatXc a(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) a(i, j) = Complex(gauss(rng), gauss(rng));
    return MatXc((a + a.adjoint()) / 2.0);
  };
  MatXc h = hermitian();
  std::vector<MatXc> obs{hermitian(), hermitian()};
  return LehmannSystem(h, std::move(obs), beta);
}

}  // namespace uhlmann
