#pragma once

#include "uhlmann/spectral_trace.hpp"
#include "uhlmann/types.hpp"

namespace uhlmann {

/// Thermal averaging kernel
///   K_beta(omega) = (1/pi^2) PV int dw' tanh^2(w' beta / 2) / (w'^2 - omega^2),
/// evaluated through its trigamma closed form
///   K_beta(omega) = -(2/pi^3) Im psi1(1/2 + i beta omega / 2pi) / omega,
/// with the zeta(3) branch 14 beta zeta(3)/pi^4 at omega = 0 and a Taylor
/// branch for |beta omega| small enough that the Im/omega ratio would lose
/// digits. Nonnegative, even, normalized to 1; tends to delta(omega) as
/// beta -> infinity and obeys the exact collapse K_beta(w) = beta K_1(beta w).
Real kernel_K(Real omega, const ThermalContext& ctx);

/// int_{-window}^{window} K_beta via Simpson on a log+linear node ladder.
Real kernel_mass(const ThermalContext& ctx, Real window);

/// Full-line normalization, with the |omega| > window tail integrated in
/// the 1/omega substitution (the kernel decays like 4/(pi^2 beta omega^2)).
Real kernel_total_mass(const ThermalContext& ctx);

/// K_beta sampled on a uniform frequency ladder.
SpectralTrace kernel_trace(const ThermalContext& ctx, Real omega_min, Real omega_max, int count);

}  // namespace uhlmann
