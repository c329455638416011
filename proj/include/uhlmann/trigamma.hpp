#pragma once

#include "uhlmann/types.hpp"

namespace uhlmann {

/// Trigamma function psi^(1)(z) for complex z with Re z > 0.
///
/// Uses the shift recurrence psi1(z) = psi1(z+1) + 1/z^2 until
/// |z| > 12, then the Bernoulli asymptotic series; relative accuracy is
/// around 1e-13 over the strip used by the thermal kernel.
Complex trigamma(Complex z);

}  // namespace uhlmann
