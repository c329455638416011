#include "uhlmann/csv.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace uhlmann {

namespace {

std::string num(Real v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string beta_str(Real beta) {
  return std::isinf(beta) ? std::string("inf") : num(beta);
}

}  // namespace

void write_curvature_map(std::ostream& os, const CurvatureMap& map) {
  os << "# model=" << map.model << " params=" << map.params << " beta=" << beta_str(map.beta)
     << " kind=" << (map.kind == CurvatureKind::berry ? "berry" : "muc") << "\n";
  os << "kx,ky,value\n";
  for (int i = 0; i < map.grid.nx; ++i)
    for (int j = 0; j < map.grid.ny; ++j)
      os << num(map.grid.kx(i)) << ',' << num(map.grid.ky(j)) << ','
         << num(map.values[static_cast<std::size_t>(i) * map.grid.ny + j]) << '\n';
}

void write_spectral_trace(std::ostream& os, const SpectralTrace& trace) {
  os << "# beta=" << beta_str(trace.beta) << " model=" << trace.model
     << " params=" << trace.params << " units=" << trace.units << "\n";
  os << "omega,value,error_estimate\n";
  for (std::size_t i = 0; i < trace.omegas.size(); ++i)
    os << num(trace.omegas[i]) << ',' << num(trace.values[i]) << ',' << num(trace.errors[i])
       << '\n';
}

void write_sweep(std::ostream& os, const SweepResult& result) {
  os << "# model=" << result.spec.model << " grid=" << result.spec.grid_n << "\n";
  os << "param_name,param_value,T,n_U,chern,gap,status\n";
  auto opt = [&](const std::optional<Real>& v) { return v ? num(*v) : std::string(); };
  for (const SweepRow& row : result.rows)
    os << row.param_name << ',' << num(row.param_value) << ',' << num(row.temperature) << ','
       << opt(row.n_u) << ',' << opt(row.chern) << ',' << opt(row.gap) << ',' << row.status
       << '\n';
}

CsvTable read_csv(std::istream& is) {
  CsvTable table;
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(s);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!s.empty() && s.back() == ',') cells.emplace_back();
    return cells;
  };
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      table.comments.push_back(line);
    } else if (table.header.empty()) {
      table.header = split(line);
    } else {
      auto row = split(line);
      if (row.size() != table.header.size())
        throw std::runtime_error("read_csv: row width does not match header");
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

}  // namespace uhlmann
