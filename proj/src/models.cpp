#include "uhlmann/models.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace uhlmann {

namespace {

Real require_finite(Real v, const char* what) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be finite");
  return v;
}

Real param_or_throw(const HVectorField::ParamMap& params, const std::string& key,
                    const std::string& model) {
  auto it = params.find(key);
  if (it == params.end())
    throw std::invalid_argument("model '" + model + "' requires parameter '" + key + "'");
  return it->second;
}

}  // namespace

HVectorField qwz_field(Real u) {
  require_finite(u, "qwz parameter u");
  auto eval = [u](Real kx, Real ky) {
    return FieldValue{0.0, Vec3(std::sin(kx), std::sin(ky), u + std::cos(kx) + std::cos(ky))};
  };
  auto grad = [](Real kx, Real ky) {
    return FieldGradient{Vec3(std::cos(kx), 0.0, -std::sin(kx)),
                         Vec3(0.0, std::cos(ky), -std::sin(ky))};
  };
  return HVectorField("qwz", {{"u", u}}, eval, grad);
}

HVectorField sticlet_field(Real t2) {
  require_finite(t2, "sticlet parameter t2");
  auto eval = [t2](Real kx, Real ky) {
    return FieldValue{0.0, 2.0 * Vec3(std::cos(kx), std::cos(ky),
                                      t2 * std::cos(kx + ky) + std::sin(kx) + std::sin(ky))};
  };
  auto grad = [t2](Real kx, Real ky) {
    const Real ds = -t2 * std::sin(kx + ky);
    return FieldGradient{2.0 * Vec3(-std::sin(kx), 0.0, ds + std::cos(kx)),
                         2.0 * Vec3(0.0, -std::sin(ky), ds + std::cos(ky))};
  };
  return HVectorField("sticlet", {{"t2", t2}}, eval, grad);
}

HVectorField make_field(const std::string& name, const HVectorField::ParamMap& params) {
  for (const auto& [key, value] : params) {
    if (name == "qwz" && key != "u")
      throw std::invalid_argument("qwz: unknown parameter '" + key + "'");
    if (name == "sticlet" && key != "t2")
      throw std::invalid_argument("sticlet: unknown parameter '" + key + "'");
    require_finite(value, ("parameter '" + key + "'").c_str());
  }
  if (name == "qwz") return qwz_field(param_or_throw(params, "u", name));
  if (name == "sticlet") return sticlet_field(param_or_throw(params, "t2", name));
  throw std::invalid_argument("unknown model '" + name + "' (expected qwz or sticlet)");
}

std::string params_string(const HVectorField& field) {
  std::string out;
  for (const auto& [key, value] : field.params()) {
    if (!out.empty()) out += ' ';
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s=%.9g", key.c_str(), value);
    out += buf;
  }
  return out;
}

BandPair band_pair(const HVectorField& field, Real kx, Real ky) {
  const FieldValue v = field.eval(kx, ky);
  const Real r = v.h.norm();
  return BandPair{v.epsilon - r, v.epsilon + r};
}

Real band_gap(const HVectorField& field, const BZGrid& grid) {
  if (grid.nx < 64 || grid.ny < 64)
    throw std::invalid_argument("band_gap: grid must have at least 64 nodes per axis");

  Real best = std::numeric_limits<Real>::infinity();
  int bi = 0, bj = 0;
  for (int i = 0; i < grid.nx; ++i) {
    for (int j = 0; j < grid.ny; ++j) {
      const Real r = field.eval(grid.kx(i), grid.ky(j)).h.norm();
      if (r < best) { best = r; bi = i; bj = j; }
    }
  }

  // One refinement pass over the coarse cell neighbourhood of the argmin.
  const Real cx = grid.kx(bi), cy = grid.ky(bj);
  const Real hx = grid.dkx(), hy = grid.dky();
  constexpr int kFine = 32;
  for (int a = -kFine; a <= kFine; ++a) {
    for (int b = -kFine; b <= kFine; ++b) {
      const Real r = field.eval(cx + a * hx / kFine, cy + b * hy / kFine).h.norm();
      best = std::min(best, r);
    }
  }
  return 2.0 * best;
}

}  // namespace uhlmann
