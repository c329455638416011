#include "uhlmann/trigamma.hpp"

#include <cmath>

namespace uhlmann {

Complex trigamma(Complex z) {
  if (!(z.real() > 0.0))
    throw std::invalid_argument("trigamma: implemented for Re z > 0 only");

  Complex acc = 0.0;
  while (std::abs(z) <= 12.0) {
    acc += 1.0 / (z * z);
    z += 1.0;
  }

  // psi1(z) ~ 1/z + 1/(2 z^2) + sum_k B_{2k} z^{-2k-1}
  static constexpr Real bern[] = {
      1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0,
      5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0,
  };
  const Complex w = 1.0 / z;
  const Complex w2 = w * w;
  Complex series = w + 0.5 * w2;
  Complex pw = w * w2;
  for (Real b : bern) {
    series += b * pw;
    pw *= w2;
  }
  return acc + series;
}

}  // namespace uhlmann
