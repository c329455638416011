#include <doctest.h>

#include <cmath>
#include <sstream>

#include "uhlmann/csv.hpp"
#include "uhlmann/geometry.hpp"
#include "uhlmann/models.hpp"
#include "uhlmann/sweep.hpp"

using namespace uhlmann;

namespace {

std::string sweep_csv(const SweepSpec& spec, int threads) {
  ThreadPool pool(threads);
  std::ostringstream os;
  write_sweep(os, run_sweep(spec, pool));
  return os.str();
}

}  // namespace

TEST_CASE("axis values") {
  SweepAxis lin{-3.0, 3.0, 4, false};
  const auto v = lin.values();
  REQUIRE(v.size() == 4);
  CHECK(v[0] == -3.0);
  CHECK(v[1] == doctest::Approx(-1.0));
  CHECK(v[3] == 3.0);

  SweepAxis logax{0.1, 10.0, 3, true};
  const auto w = logax.values();
  CHECK(w[1] == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS((SweepAxis{1.0, 0.0, 5, false}.values()), std::invalid_argument);
  CHECK_THROWS_AS((SweepAxis{-1.0, 1.0, 5, true}.values()), std::invalid_argument);
}

TEST_CASE("single-cell sweep reproduces the zero-temperature invariant") {
  SweepSpec spec{"qwz", "u", SweepAxis{-1.5, -1.5, 1}, SweepAxis{0.01, 0.01, 1}, 128};
  ThreadPool pool(2);
  const SweepResult result = run_sweep(spec, pool);
  REQUIRE(result.rows.size() == 1);
  const SweepRow& row = result.rows[0];
  CHECK(row.status == "ok");
  REQUIRE(row.n_u.has_value());
  CHECK(*row.n_u == doctest::Approx(1.0).epsilon(1e-2));
  REQUIRE(row.chern.has_value());
  CHECK(*row.chern == 1.0);
  REQUIRE(row.gap.has_value());
  CHECK(*row.gap == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("sticlet phase row at low temperature") {
  SweepSpec spec{"sticlet", "t2", SweepAxis{-3.0, 3.0, 4}, SweepAxis{0.01, 0.01, 1}, 128};
  ThreadPool pool(4);
  const SweepResult result = run_sweep(spec, pool);
  const Real expected[] = {2.0, 1.0, -1.0, -2.0};
  REQUIRE(result.rows.size() == 4);
  for (int i = 0; i < 4; ++i) {
    REQUIRE(result.rows[i].n_u.has_value());
    CHECK(*result.rows[i].n_u == doctest::Approx(expected[i]).epsilon(1e-2));
    CHECK(*result.rows[i].chern == expected[i]);
  }
}

TEST_CASE("monotone thermal decay in the topological phase") {
  SweepSpec spec{"qwz", "u", SweepAxis{-1.5, -1.5, 1}, SweepAxis{0.05, 5.0, 10, true}, 128};
  ThreadPool pool(4);
  const SweepResult result = run_sweep(spec, pool);
  REQUIRE(result.rows.size() == 10);
  for (std::size_t i = 0; i + 1 < result.rows.size(); ++i)
    CHECK(*result.rows[i + 1].n_u <= *result.rows[i].n_u + 1e-3);
}

TEST_CASE("critical cells are flagged, never abort the sweep") {
  SweepSpec spec{"qwz", "u", SweepAxis{-2.0, -2.0, 1}, SweepAxis{0.5, 0.5, 1}, 128};
  ThreadPool pool(2);
  const SweepResult result = run_sweep(spec, pool);
  REQUIRE(result.rows.size() == 1);
  CHECK(result.rows[0].status == "critical");
  CHECK_FALSE(result.rows[0].n_u.has_value());
}

TEST_CASE("sweep output is bitwise identical across worker counts") {
  SweepSpec spec{"sticlet", "t2", SweepAxis{-3.0, 3.0, 3}, SweepAxis{0.1, 1.0, 2}, 64};
  const std::string one = sweep_csv(spec, 1);
  CHECK(one == sweep_csv(spec, 4));
  CHECK(one == sweep_csv(spec, 8));
}

TEST_CASE("curvature map csv round-trip") {
  const CurvatureMap map =
      curvature_map(qwz_field(-1.5), BZGrid(8), CurvatureKind::muc, ThermalContext::with_beta(2.0));
  std::stringstream ss;
  write_curvature_map(ss, map);
  const CsvTable table = read_csv(ss);
  REQUIRE(table.header == std::vector<std::string>{"kx", "ky", "value"});
  REQUIRE(table.rows.size() == map.values.size());
  REQUIRE(table.comments.size() == 1);
  CHECK(table.comments[0].find("model=qwz") != std::string::npos);
  CHECK(table.comments[0].find("beta=2") != std::string::npos);
  CHECK(std::stod(table.rows[0][2]) == doctest::Approx(map.values[0]).epsilon(1e-8));
}

TEST_CASE("spectral trace csv round-trip") {
  SpectralTrace tr;
  tr.beta = 2.0;
  tr.model = "sticlet";
  tr.params = "t2=0.5";
  tr.units = "e2_h";
  tr.omegas = {0.0, 0.5, 1.0};
  tr.values = {1.0, -0.25, 0.125};
  tr.errors = {0.0, 1e-3, 0.0};
  std::stringstream ss;
  write_spectral_trace(ss, tr);
  const CsvTable table = read_csv(ss);
  REQUIRE(table.header == std::vector<std::string>{"omega", "value", "error_estimate"});
  REQUIRE(table.rows.size() == 3);
  CHECK(std::stod(table.rows[1][1]) == doctest::Approx(-0.25));
  CHECK(table.comments[0].find("units=e2_h") != std::string::npos);
}

TEST_CASE("sweep csv keeps empty cells for failed values") {
  SweepSpec spec{"qwz", "u", SweepAxis{-2.0, -2.0, 1}, SweepAxis{0.5, 0.5, 1}, 64};
  ThreadPool pool(1);
  std::stringstream ss;
  write_sweep(ss, run_sweep(spec, pool));
  const CsvTable table = read_csv(ss);
  REQUIRE(table.rows.size() == 1);
  REQUIRE(table.header.size() == 7);
  CHECK(table.rows[0][3].empty());   // n_U
  CHECK(table.rows[0][6] == "critical");
}
