// Batch front end: finite-temperature geometric invariants and linear
// response for two-band lattice models. Internal units hbar = k_B = e = 1;
// energies in units of the global hopping scale; conductivity in e^2/h by
// default.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "uhlmann/csv.hpp"
#include "uhlmann/geometry.hpp"
#include "uhlmann/kernel.hpp"
#include "uhlmann/lehmann.hpp"
#include "uhlmann/models.hpp"
#include "uhlmann/response.hpp"
#include "uhlmann/sweep.hpp"

namespace {

using json = nlohmann::json;
using namespace uhlmann;

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

std::string num(Real v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

struct RunConfig {
  std::string model;
  std::vector<std::string> param_flags;  // "u=-1.5"
  HVectorField::ParamMap params;
  std::optional<Real> temperature;
  std::optional<Real> beta;
  int grid = 256;
  Real omega_min = 0.0;
  Real omega_max = 12.0;
  int omega_count = 241;
  int threads = 0;  // 0 = default
  std::string out = "-";
  std::string format = "csv";
  std::uint64_t seed = 1;
  std::string unit = "e2_h";
  // sweep axes
  SweepSpec sweep;
  bool has_sweep = false;
  // lehmann-check
  int check_count = 50;
  int check_dim_min = 2;
  int check_dim_max = 8;
};

SweepAxis axis_from_json(const json& j) {
  SweepAxis axis;
  axis.min = j.at("min").get<Real>();
  axis.max = j.at("max").get<Real>();
  axis.count = j.at("count").get<int>();
  axis.log = j.value("scale", "linear") == "log";
  return axis;
}

void load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  json j = json::parse(in);
  if (j.contains("model")) cfg.model = j["model"].get<std::string>();
  if (j.contains("params"))
    for (auto& [key, value] : j["params"].items()) cfg.params[key] = value.get<Real>();
  if (j.contains("T")) cfg.temperature = j["T"].get<Real>();
  if (j.contains("beta")) cfg.beta = j["beta"].get<Real>();
  if (j.contains("grid")) cfg.grid = j["grid"].get<int>();
  if (j.contains("omega")) {
    const json& o = j["omega"];
    if (o.contains("min")) cfg.omega_min = o["min"].get<Real>();
    if (o.contains("max")) cfg.omega_max = o["max"].get<Real>();
    if (o.contains("count")) cfg.omega_count = o["count"].get<int>();
  }
  if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("out")) cfg.out = j["out"].get<std::string>();
  if (j.contains("format")) cfg.format = j["format"].get<std::string>();
  if (j.contains("unit")) cfg.unit = j["unit"].get<std::string>();
  if (j.contains("sweep")) {
    const json& s = j["sweep"];
    cfg.sweep.model = s.value("model", cfg.model);
    cfg.sweep.param_name = s.at("param").at("name").get<std::string>();
    cfg.sweep.param = axis_from_json(s.at("param"));
    cfg.sweep.temperature = axis_from_json(s.at("temperature"));
    cfg.sweep.grid_n = s.value("grid", cfg.grid);
    cfg.has_sweep = true;
  }
}

void merge_param_flags(RunConfig& cfg) {
  for (const std::string& kv : cfg.param_flags) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::invalid_argument("--param expects key=value, got '" + kv + "'");
    cfg.params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
  }
}

ThermalContext thermal_context(const RunConfig& cfg) {
  if (cfg.temperature && cfg.beta)
    throw std::invalid_argument("give exactly one of --T and --beta");
  if (cfg.beta) return ThermalContext::with_beta(*cfg.beta);
  if (cfg.temperature) return ThermalContext::with_temperature(*cfg.temperature);
  throw std::invalid_argument("give exactly one of --T and --beta");
}

HVectorField field_from(const RunConfig& cfg) {
  if (cfg.model.empty()) throw std::invalid_argument("--model is required");
  return make_field(cfg.model, cfg.params);
}

int resolve_threads(const RunConfig& cfg) {
  if (cfg.threads > 0) return cfg.threads;
  if (const char* env = std::getenv("UHLMANN_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return default_thread_count();
}

/// Near-critical guard: warn and refine the grid once when the gap is
/// below 1e-2; no extrapolation is attempted.
BZGrid guarded_grid(const HVectorField& field, int n) {
  BZGrid grid(std::max(n, 64));
  const Real gap = band_gap(field, grid);
  if (gap < 1e-2) {
    std::cerr << "warning: near-critical spectrum (gap = " << num(gap)
              << "), refining grid once to " << 2 * grid.nx << "\n";
    return grid.doubled();
  }
  return BZGrid(n);
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw std::invalid_argument("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

json trace_json(const SpectralTrace& t) {
  json rows = json::array();
  for (std::size_t i = 0; i < t.omegas.size(); ++i)
    rows.push_back({t.omegas[i], t.values[i], t.errors[i]});
  return json{{"schema", "spectral_trace"},
              {"beta", std::isinf(t.beta) ? json("inf") : json(t.beta)},
              {"model", t.model},
              {"params", t.params},
              {"units", t.units},
              {"columns", {"omega", "value", "error_estimate"}},
              {"rows", rows}};
}

int cmd_chern(const RunConfig& cfg) {
  const HVectorField field = field_from(cfg);
  ThreadPool pool(resolve_threads(cfg));
  const BZGrid grid = guarded_grid(field, cfg.grid);
  const FhsResult oracle = chern_fhs_detailed(field, grid, &pool);
  const Real quad = chern_number(field, grid, &pool);
  if (cfg.format == "json") {
    Output out(cfg.out);
    out.stream() << json{{"command", "chern"},
                         {"model", field.name()},
                         {"params", field.params()},
                         {"grid", grid.nx},
                         {"chern_fhs", oracle.value},
                         {"fhs_residual", oracle.residual},
                         {"chern_quadrature", quad}}
                        .dump(2)
                 << "\n";
  } else {
    Output out(cfg.out);
    out.stream() << "chern_fhs " << oracle.value << "\n"
                 << "chern_quadrature " << num(quad) << "\n";
  }
  return 0;
}

int cmd_uhlmann(const RunConfig& cfg) {
  const HVectorField field = field_from(cfg);
  const ThermalContext ctx = thermal_context(cfg);
  ThreadPool pool(resolve_threads(cfg));
  const BZGrid grid = guarded_grid(field, cfg.grid);
  const Real n_u = uhlmann_number(field, ctx, grid, &pool);
  const Real efield = efield_muc_report(n_u);
  Output out(cfg.out);
  if (cfg.format == "json") {
    out.stream() << json{{"command", "uhlmann"},
                         {"model", field.name()},
                         {"params", field.params()},
                         {"beta", std::isinf(ctx.beta) ? json("inf") : json(ctx.beta)},
                         {"grid", grid.nx},
                         {"n_U", n_u},
                         {"muc_efield_e2_hbar2", efield}}
                        .dump(2)
                 << "\n";
  } else {
    out.stream() << "n_U " << num(n_u) << "\n"
                 << "muc_efield_e2_hbar2 " << num(efield) << "\n";
  }
  return 0;
}

int cmd_muc_map(const RunConfig& cfg) {
  const HVectorField field = field_from(cfg);
  const ThermalContext ctx = thermal_context(cfg);
  ThreadPool pool(resolve_threads(cfg));
  const BZGrid grid = guarded_grid(field, cfg.grid);
  const CurvatureMap map = curvature_map(field, grid, CurvatureKind::muc, ctx, &pool);
  Output out(cfg.out);
  if (cfg.format == "json") {
    json rows = json::array();
    for (int i = 0; i < grid.nx; ++i)
      for (int j = 0; j < grid.ny; ++j)
        rows.push_back({grid.kx(i), grid.ky(j), map.values[std::size_t(i) * grid.ny + j]});
    out.stream() << json{{"schema", "curvature_map"},
                         {"model", map.model},
                         {"params", map.params},
                         {"beta", std::isinf(map.beta) ? json("inf") : json(map.beta)},
                         {"kind", "muc"},
                         {"columns", {"kx", "ky", "value"}},
                         {"rows", rows}}
                        .dump()
                 << "\n";
  } else {
    write_curvature_map(out.stream(), map);
  }
  return 0;
}

int cmd_conductivity(const RunConfig& cfg) {
  const HVectorField field = field_from(cfg);
  const ThermalContext ctx = thermal_context(cfg);
  ThreadPool pool(resolve_threads(cfg));
  const BZGrid grid = guarded_grid(field, cfg.grid);
  SpectralTrace trace =
      conductivity_trace(field, ctx, grid, cfg.omega_min, cfg.omega_max, cfg.omega_count, &pool);
  if (cfg.unit == "e2_hbar") {
    for (Real& v : trace.values) v /= kTwoPi;
    for (Real& e : trace.errors) e /= kTwoPi;
    trace.units = "e2_hbar";
  } else if (cfg.unit != "e2_h") {
    throw std::invalid_argument("--unit must be e2_h or e2_hbar");
  }
  Output out(cfg.out);
  if (cfg.format == "json")
    out.stream() << trace_json(trace).dump() << "\n";
  else
    write_spectral_trace(out.stream(), trace);
  return 0;
}

int cmd_kernel(const RunConfig& cfg) {
  const ThermalContext ctx = thermal_context(cfg);
  const SpectralTrace trace = kernel_trace(ctx, cfg.omega_min, cfg.omega_max, cfg.omega_count);
  Output out(cfg.out);
  if (cfg.format == "json")
    out.stream() << trace_json(trace).dump() << "\n";
  else
    write_spectral_trace(out.stream(), trace);
  return 0;
}

int cmd_tknn(const RunConfig& cfg) {
  const HVectorField field = field_from(cfg);
  const ThermalContext ctx = thermal_context(cfg);
  ThreadPool pool(resolve_threads(cfg));
  const BZGrid grid = guarded_grid(field, cfg.grid);
  const Real bz_side = uhlmann_number(field, ctx, grid, &pool);
  const TknnResult freq = tknn_frequency_side(field, ctx, grid, &pool);
  const Real rel = std::abs(freq.n_u - bz_side) / std::max(1.0, std::abs(bz_side));
  Output out(cfg.out);
  if (cfg.format == "json") {
    out.stream() << json{{"command", "tknn-check"},
                         {"model", field.name()},
                         {"params", field.params()},
                         {"beta", std::isinf(ctx.beta) ? json("inf") : json(ctx.beta)},
                         {"grid", grid.nx},
                         {"n_U_bz", bz_side},
                         {"n_U_frequency", freq.n_u},
                         {"sigma_static_e2_h", freq.sigma_static},
                         {"relative_deviation", rel},
                         {"error_estimate", freq.error_estimate}}
                        .dump(2)
                 << "\n";
  } else {
    out.stream() << "n_U_bz " << num(bz_side) << "\n"
                 << "n_U_frequency " << num(freq.n_u) << "\n"
                 << "sigma_static_e2_h " << num(freq.sigma_static) << "\n"
                 << "relative_deviation " << num(rel) << "\n"
                 << "error_estimate " << num(freq.error_estimate) << "\n";
  }
  return 0;
}

int cmd_sweep(const RunConfig& cfg) {
  if (!cfg.has_sweep)
    throw std::invalid_argument("sweep needs a --config file with a \"sweep\" section");
  SweepSpec spec = cfg.sweep;
  if (spec.model.empty()) spec.model = cfg.model;
  ThreadPool pool(resolve_threads(cfg));
  std::size_t last_percent = 101;
  const SweepResult result = run_sweep(spec, pool, [&](std::size_t done, std::size_t total) {
    const std::size_t percent = 100 * done / total;
    if (percent != last_percent && percent % 10 == 0) {
      last_percent = percent;
      std::cerr << "sweep: " << percent << "%\n";
    }
  });
  Output out(cfg.out);
  if (cfg.format == "json") {
    json rows = json::array();
    for (const SweepRow& r : result.rows) {
      json row{{"param_name", r.param_name}, {"param_value", r.param_value},
               {"T", r.temperature},         {"status", r.status}};
      row["n_U"] = r.n_u ? json(*r.n_u) : json();
      row["chern"] = r.chern ? json(*r.chern) : json();
      row["gap"] = r.gap ? json(*r.gap) : json();
      rows.push_back(row);
    }
    out.stream() << json{{"schema", "sweep"}, {"model", result.spec.model}, {"rows", rows}}.dump()
                 << "\n";
  } else {
    write_sweep(out.stream(), result);
  }
  return 0;
}

int cmd_lehmann_check(const RunConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<int> dim_dist(cfg.check_dim_min, cfg.check_dim_max);
  std::uniform_real_distribution<Real> beta_dist(0.2, 5.0);
  Real worst_chi = 0.0, worst_sf = 0.0, worst_pair = 0.0;
  for (int trial = 0; trial < cfg.check_count; ++trial) {
    const LehmannSystem sys = random_lehmann_system(dim_dist(rng), beta_dist(rng), rng);
    const Real direct = muc_sld_direct(sys, 0, 1);
    const Real chi = muc_from_chi(sys, 0, 1);
    const Real sf = muc_from_structure_factor(sys, 0, 1);
    worst_chi = std::max(worst_chi, std::abs(chi - direct));
    worst_sf = std::max(worst_sf, std::abs(sf - direct));
    worst_pair = std::max(worst_pair, std::abs(chi - sf));
  }
  Output out(cfg.out);
  if (cfg.format == "json") {
    out.stream() << json{{"command", "lehmann-check"},
                         {"seed", cfg.seed},
                         {"systems", cfg.check_count},
                         {"max_chi_vs_sld", worst_chi},
                         {"max_sf_vs_sld", worst_sf},
                         {"max_chi_vs_sf", worst_pair}}
                        .dump(2)
                 << "\n";
  } else {
    out.stream() << "systems " << cfg.check_count << "\n"
                 << "max_chi_vs_sld " << num(worst_chi) << "\n"
                 << "max_sf_vs_sld " << num(worst_sf) << "\n"
                 << "max_chi_vs_sf " << num(worst_pair) << "\n";
  }
  if (worst_chi > 1e-8 || worst_sf > 1e-8 || worst_pair > 1e-12)
    throw numerical_error("lehmann-check: route disagreement above tolerance");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-temperature geometric invariants and transverse response "
               "for two-band lattice models"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;

  // Config file first: flags given on the command line override it.
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
  try {
    if (!config_path.empty()) load_config_file(config_path, cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  auto add_common = [&](CLI::App* sub, bool needs_model, bool needs_thermal) {
    sub->add_option("--config", config_path, "JSON config file (flags override)");
    sub->add_option("--threads", cfg.threads, "worker threads (default: UHLMANN_THREADS or all)");
    sub->add_option("--out", cfg.out, "output path ('-' = stdout)");
    sub->add_option("--format", cfg.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", cfg.seed, "random seed");
    if (needs_model) {
      sub->add_option("--model", cfg.model, "model name: qwz | sticlet");
      sub->add_option("--param", cfg.param_flags, "model parameter key=value (repeatable)");
      sub->add_option("--grid", cfg.grid, "BZ nodes per axis");
    }
    if (needs_thermal) {
      sub->add_option("--T", cfg.temperature, "temperature k_B T (0 = exact T=0 limit)");
      sub->add_option("--beta", cfg.beta, "inverse temperature");
    }
  };

  CLI::App* chern = app.add_subcommand("chern", "integer oracle + quadrature Chern number");
  add_common(chern, true, false);
  CLI::App* uhl = app.add_subcommand("uhlmann", "Uhlmann number and E-field MUC report");
  add_common(uhl, true, true);
  CLI::App* mmap = app.add_subcommand("muc-map", "mean Uhlmann curvature over the BZ (CSV)");
  add_common(mmap, true, true);
  CLI::App* cond = app.add_subcommand("conductivity", "transverse conductivity trace");
  add_common(cond, true, true);
  cond->add_option("--omega-min", cfg.omega_min, "first frequency");
  cond->add_option("--omega-max", cfg.omega_max, "last frequency");
  cond->add_option("--omega-count", cfg.omega_count, "number of frequencies");
  cond->add_option("--unit", cfg.unit, "conductivity unit: e2_h | e2_hbar");
  CLI::App* kern = app.add_subcommand("kernel", "thermal kernel K_beta trace");
  add_common(kern, false, true);
  kern->add_option("--omega-min", cfg.omega_min, "first frequency");
  kern->add_option("--omega-max", cfg.omega_max, "last frequency");
  kern->add_option("--omega-count", cfg.omega_count, "number of frequencies");
  CLI::App* tknn = app.add_subcommand("tknn-check", "BZ-side vs frequency-side Uhlmann number");
  add_common(tknn, true, true);
  CLI::App* sweep = app.add_subcommand("sweep", "parameter/temperature sweep table");
  add_common(sweep, true, false);
  CLI::App* lcheck = app.add_subcommand("lehmann-check", "random-system oracle suite");
  add_common(lcheck, false, false);
  lcheck->add_option("--count", cfg.check_count, "number of random systems");
  lcheck->add_option("--dim-min", cfg.check_dim_min, "smallest Hilbert dimension");
  lcheck->add_option("--dim-max", cfg.check_dim_max, "largest Hilbert dimension");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitValidation;
  }

  try {
    merge_param_flags(cfg);
    if (chern->parsed()) return cmd_chern(cfg);
    if (uhl->parsed()) return cmd_uhlmann(cfg);
    if (mmap->parsed()) return cmd_muc_map(cfg);
    if (cond->parsed()) return cmd_conductivity(cfg);
    if (kern->parsed()) return cmd_kernel(cfg);
    if (tknn->parsed()) return cmd_tknn(cfg);
    if (sweep->parsed()) return cmd_sweep(cfg);
    if (lcheck->parsed()) return cmd_lehmann_check(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitValidation;
}
