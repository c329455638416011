#include <doctest.h>

#include <cmath>
#include <random>

#include "uhlmann/models.hpp"

using namespace uhlmann;

TEST_CASE("qwz field values") {
  const HVectorField f = qwz_field(1.0);
  const Vec3 h = f.eval(0.0, 0.0).h;
  CHECK(h.isApprox(Vec3(0, 0, 3), 1e-14));
  CHECK(f.eval(0.0, 0.0).epsilon == 0.0);

  const Vec3 h2 = qwz_field(-1.0).eval(kPi, kPi).h;
  CHECK(std::abs(h2.x()) < 1e-12);
  CHECK(std::abs(h2.y()) < 1e-12);
  CHECK(h2.z() == doctest::Approx(-3.0).epsilon(1e-14));
}

TEST_CASE("qwz analytic gradient at the origin") {
  const FieldGradient g = qwz_field(-1.0).grad(0.0, 0.0);
  CHECK(g.dhx.isApprox(Vec3(1, 0, 0), 1e-14));
  CHECK(g.dhy.isApprox(Vec3(0, 1, 0), 1e-14));
}

TEST_CASE("sticlet field values") {
  CHECK(sticlet_field(0.5).eval(0.0, 0.0).h.isApprox(Vec3(2, 2, 1), 1e-14));
  const Vec3 h = sticlet_field(0.0).eval(kPi / 2, kPi / 2).h;
  CHECK(std::abs(h.x()) < 1e-12);
  CHECK(std::abs(h.y()) < 1e-12);
  CHECK(h.z() == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("sticlet t2=0.5 transition band spans [2, 10]") {
  const HVectorField f = sticlet_field(0.5);
  const BZGrid grid(256);
  CHECK(band_gap(f, grid) == doctest::Approx(2.0).epsilon(1e-6));
  Real top = 0.0;
  for (int i = 0; i < grid.nx; ++i)
    for (int j = 0; j < grid.ny; ++j)
      top = std::max(top, 2.0 * f.eval(grid.kx(i), grid.ky(j)).h.norm());
  CHECK(top == doctest::Approx(10.0).epsilon(1e-9));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(qwz_field(std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(sticlet_field(std::numeric_limits<Real>::infinity()), std::invalid_argument);
  CHECK_THROWS_AS(make_field("bogus", {{"u", 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_field("qwz", {{"t2", 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_field("qwz", {}), std::invalid_argument);
  CHECK(make_field("sticlet", {{"t2", 0.5}}).name() == "sticlet");
}

TEST_CASE("periodicity and analytic-vs-numeric gradients, 100 random samples per model") {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<Real> kdist(0.0, kTwoPi);
  std::uniform_real_distribution<Real> pdist(-3.0, 3.0);
  const Real delta = 1e-4;

  for (int model = 0; model < 2; ++model) {
    for (int trial = 0; trial < 100; ++trial) {
      const Real p = pdist(rng);
      const HVectorField f = model == 0 ? qwz_field(p) : sticlet_field(p);
      const Real kx = kdist(rng), ky = kdist(rng);

      CHECK(f.eval(kx, ky).epsilon == 0.0);
      CHECK((f.eval(kx + kTwoPi, ky).h - f.eval(kx, ky).h).norm() < 1e-12);
      CHECK((f.eval(kx, ky - kTwoPi).h - f.eval(kx, ky).h).norm() < 1e-12);

      const FieldGradient g = f.grad(kx, ky);
      const Vec3 fd_x = (f.eval(kx + delta, ky).h - f.eval(kx - delta, ky).h) / (2 * delta);
      const Vec3 fd_y = (f.eval(kx, ky + delta).h - f.eval(kx, ky - delta).h) / (2 * delta);
      CHECK((g.dhx - fd_x).norm() < 1e-6);
      CHECK((g.dhy - fd_y).norm() < 1e-6);
    }
  }
}

TEST_CASE("band pair ordering and gap") {
  const HVectorField f = qwz_field(0.7);
  const BandPair bands = band_pair(f, 1.1, 2.3);
  CHECK(bands.e_plus >= bands.e_minus);
  CHECK(bands.gap() == doctest::Approx(2.0 * f.eval(1.1, 2.3).h.norm()).epsilon(1e-14));
}

TEST_CASE("band gaps at the reference parameter points") {
  const BZGrid grid(128);
  CHECK(band_gap(qwz_field(-1.5), grid) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(band_gap(qwz_field(-2.1), grid) == doctest::Approx(0.2).epsilon(1e-4));
  CHECK(band_gap(qwz_field(-2.0), grid) < 1e-9);  // critical point
  CHECK_THROWS_AS(band_gap(qwz_field(1.0), BZGrid(32)), std::invalid_argument);
}

TEST_CASE("gap positivity strictly inside each phase") {
  const BZGrid grid(128);
  for (Real u : {-3.0, -1.0, 1.0, 3.0}) CHECK(band_gap(qwz_field(u), grid) > 0.1);
  for (Real t2 : {-3.0, -1.0, 1.0, 3.0}) CHECK(band_gap(sticlet_field(t2), grid) > 0.1);
}
