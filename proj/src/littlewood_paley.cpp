#include <algorithm>
#include <cmath>

#include "gv/norms.hpp"
#include "gv/simd.hpp"
#include "gv/spectral.hpp"

namespace gv {
namespace {

double smooth_step_core(double x) { return x > 0 ? std::exp(-1.0 / x) : 0.0; }

}  // namespace

double lp_bump(double r) {
  r = std::fabs(r);
  if (r <= 0.5) return 1.0;
  if (r >= 1.0) return 0.0;
  double x = (1.0 - r) / 0.5;  // 1 at r=1/2, 0 at r=1
  double a = smooth_step_core(x), b = smooth_step_core(1.0 - x);
  return a / (a + b);
}

double lp_zeta(double r) { return lp_bump(r / 2.0) - lp_bump(r); }

BandRange band_range(const Grid2D& g) {
  double kmin = std::min(kTwoPi / g.lx, kTwoPi / g.ly);
  double kcorner = std::hypot(kTwoPi / g.lx * (g.nx / 2), kTwoPi / g.ly * (g.ny / 2));
  return {int(std::floor(std::log2(kmin) + 1e-12)), int(std::ceil(std::log2(kcorner) - 1e-12))};
}

DyadicBand lp_project(const Field& f, int j) {
  require_finite(f, "lp_project");
  BandRange br = band_range(f.grid());
  if (j < br.jmin || j > br.jmax) throw DomainError("lp_project: band index out of range");
  const auto& km = wavenumber_magnitude(f.grid());
  std::vector<double> m(km.size());
  const double s = std::ldexp(1.0, -j);
  for (std::size_t k = 0; k < km.size(); ++k) m[k] = km[k] == 0.0 ? 0.0 : lp_zeta(km[k] * s);
  return {j, apply_multiplier(f, m)};
}

std::vector<DyadicBand> lp_decompose(const Field& f) {
  BandRange br = band_range(f.grid());
  std::vector<DyadicBand> out;
  for (int j = br.jmin; j <= br.jmax; ++j) out.push_back(lp_project(f, j));
  return out;
}

Field lp_low(const Field& f, int j) {
  const auto& km = wavenumber_magnitude(f.grid());
  std::vector<double> m(km.size());
  const double s = std::ldexp(1.0, -(j + 1));
  for (std::size_t k = 0; k < km.size(); ++k) m[k] = lp_bump(km[k] * s);
  return apply_multiplier(f, m);
}

double besov_norm(const Field& f, double s, double q) {
  double acc = 0.0;
  for (const auto& b : lp_decompose(f)) {
    double v = std::pow(2.0, b.j * s) * b.field.max_abs();
    if (q <= 0)
      acc = std::max(acc, v);
    else
      acc += std::pow(v, q);
  }
  return q <= 0 ? acc : std::pow(acc, 1.0 / q);
}

double holder_proxy(const Field& f, double delta) { return besov_norm(f, delta, 0.0) + f.max_abs(); }

}  // namespace gv
