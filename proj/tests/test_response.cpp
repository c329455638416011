#include <doctest.h>

#include <cmath>

#include "uhlmann/geometry.hpp"
#include "uhlmann/models.hpp"
#include "uhlmann/response.hpp"

using namespace uhlmann;

TEST_CASE("static conductivity approaches -Ch e^2/h at low temperature") {
  const HVectorField f = sticlet_field(0.5);
  const BZGrid grid(256);
  const auto cold = transverse_conductivity(f, 0.0, ThermalContext::with_temperature(0.05), grid);
  CHECK(cold.value == doctest::Approx(1.0).epsilon(5e-3));
  CHECK(cold.error == 0.0);  // omega = 0 is outside the transition band

  const auto zero_t = transverse_conductivity(f, 0.0, ThermalContext::with_temperature(0.0), grid);
  CHECK(zero_t.value == doctest::Approx(-chern_number(f, grid)).epsilon(1e-6));
}

TEST_CASE("sigma is even in omega") {
  const ConductivityEvaluator eval(sticlet_field(0.5), BZGrid(128),
                                   ThermalContext::with_beta(1.0));
  for (Real w : {0.7, 3.1, 11.0})
    CHECK(eval.sigma(w).value == doctest::Approx(eval.sigma(-w).value).epsilon(1e-14));
}

TEST_CASE("van Hove structure sits inside the transition band") {
  const HVectorField f = sticlet_field(0.5);
  const BZGrid grid(192);
  const ConductivityEvaluator eval(f, grid, ThermalContext::with_temperature(0.05));
  CHECK(eval.band_min() == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(eval.band_max() == doctest::Approx(10.0).epsilon(1e-3));

  // Singularity detector: curvature spikes of the trace live in [2, 10].
  const int n = 361;
  std::vector<Real> w(n), v(n);
  for (int i = 0; i < n; ++i) {
    w[i] = 12.0 * i / (n - 1);
    v[i] = eval.sigma(w[i]).value;
  }
  Real spike_scale = 0.0;
  for (int i = 1; i + 1 < n; ++i)
    spike_scale = std::max(spike_scale, std::abs(v[i - 1] - 2 * v[i] + v[i + 1]));
  for (int i = 1; i + 1 < n; ++i) {
    const Real spike = std::abs(v[i - 1] - 2 * v[i] + v[i + 1]);
    if (spike > 0.05 * spike_scale) {
      CHECK(w[i] > 2.0 - 0.15);
      CHECK(w[i] < 10.0 + 0.15);
    }
  }
}

TEST_CASE("near-critical qwz trace peaks at the gap frequency") {
  const ConductivityEvaluator eval(qwz_field(-2.1), BZGrid(256),
                                   ThermalContext::with_temperature(0.05));
  const int n = 111;
  std::vector<Real> w(n), v(n);
  for (int i = 0; i < n; ++i) {
    w[i] = 0.05 + (0.6 - 0.05) * i / (n - 1);
    v[i] = std::abs(eval.sigma(w[i]).value);
  }
  bool local_max_in_window = false;
  for (int i = 1; i + 1 < n; ++i)
    if (v[i] > v[i - 1] && v[i] > v[i + 1] && w[i] >= 0.15 && w[i] <= 0.25)
      local_max_in_window = true;
  CHECK(local_max_in_window);
}

TEST_CASE("frequency-side Uhlmann number") {
  const BZGrid grid(256);

  SUBCASE("matches the BZ side at finite temperature") {
    const HVectorField f = qwz_field(-1.5);
    const ThermalContext ctx = ThermalContext::with_temperature(0.5);
    const Real bz = uhlmann_number(f, ctx, grid);
    const TknnResult freq = tknn_frequency_side(f, ctx, grid);
    CHECK(std::abs(freq.n_u - bz) < 0.02 * std::max(1.0, std::abs(bz)));
    CHECK(freq.error_estimate < 0.05);
  }

  SUBCASE("reduces to the Chern number at the zero-temperature sentinel") {
    const HVectorField f = sticlet_field(0.5);
    const TknnResult freq = tknn_frequency_side(f, ThermalContext::with_temperature(0.0), grid);
    CHECK(freq.n_u == doctest::Approx(-1.0).epsilon(1e-6));
    CHECK(freq.sigma_static == doctest::Approx(1.0).epsilon(1e-6));
  }

  SUBCASE("vanishes in the infinite-temperature limit") {
    const HVectorField f = qwz_field(-1.0);
    const ThermalContext hot = ThermalContext::with_beta(1e-4);
    CHECK(std::abs(uhlmann_number(f, hot, grid)) < 1e-9);
    CHECK(std::abs(tknn_frequency_side(f, hot, grid).n_u) < 1e-3);
  }
}

TEST_CASE("tknn node ladder stays within the evaluation budget") {
  for (Real beta : {0.1, 1.0, 10.0, 100.0}) {
    const auto nodes = tknn_omega_nodes(beta, 2.0, 10.0);
    CHECK(std::is_sorted(nodes.begin(), nodes.end()));
    CHECK(nodes.front() == 0.0);
    CHECK(2 * nodes.size() - 1 <= 2000);  // Simpson midpoints included
  }
}

TEST_CASE("conductivity trace metadata") {
  const SpectralTrace tr = conductivity_trace(sticlet_field(0.5),
                                              ThermalContext::with_temperature(1.0), BZGrid(64),
                                              0.0, 12.0, 25);
  CHECK(tr.omegas.size() == 25);
  CHECK(tr.units == "e2_h");
  CHECK(tr.model == "sticlet");
  CHECK(tr.params == "t2=0.5");
  CHECK(std::is_sorted(tr.omegas.begin(), tr.omegas.end()));
  for (std::size_t i = 0; i < tr.values.size(); ++i) {
    CHECK(std::isfinite(tr.values[i]));
    CHECK(tr.errors[i] >= 0.0);
  }
}

TEST_CASE("electric-field MUC report") {
  CHECK(efield_muc_report(0.0) == 0.0);
  CHECK(efield_muc_report(1.0) == doctest::Approx(-kTwoPi).epsilon(1e-15));
  CHECK(efield_muc_report(-2.0) == doctest::Approx(2.0 * kTwoPi).epsilon(1e-15));
}
