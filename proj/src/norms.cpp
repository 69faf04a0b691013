#include <algorithm>
#include <cmath>

#include "gv/norms.hpp"
#include "gv/simd.hpp"
#include "gv/spectral.hpp"

namespace gv {

double sobolev_norm(const Field& f, double s) {
  require_finite(f, "sobolev_norm");
  if (s < -2.0 || s > 4.0) throw DomainError("sobolev_norm: s must lie in [-2, 4]");
  const Grid2D& g = f.grid();
  Spectrum sp = fft(f);
  const auto& km = wavenumber_magnitude(g);
  const auto& hw = hermitian_weight(g);
  std::vector<double> w(km.size());
  for (std::size_t k = 0; k < km.size(); ++k) w[k] = hw[k] * std::pow(1.0 + km[k] * km[k], s);
  return std::sqrt(simd::kernels().weighted_sumsq(sp.data(), w.data(), sp.size()) * g.lx * g.ly);
}

double homogeneous_sobolev_norm(const Field& f, double s) {
  require_finite(f, "homogeneous_sobolev_norm");
  const Grid2D& g = f.grid();
  Spectrum sp = fft(f);
  const auto& km = wavenumber_magnitude(g);
  const auto& hw = hermitian_weight(g);
  std::vector<double> w(km.size());
  for (std::size_t k = 0; k < km.size(); ++k) w[k] = km[k] == 0.0 ? 0.0 : hw[k] * std::pow(km[k], 2 * s);
  return std::sqrt(simd::kernels().weighted_sumsq(sp.data(), w.data(), sp.size()) * g.lx * g.ly);
}

double lp_norm(const Field& f, double p) {
  double s = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) s += std::pow(std::fabs(f[k]), p);
  return std::pow(s * f.grid().cell(), 1.0 / p);
}

double simpson(const std::vector<double>& y, double dt) {
  const int n = int(y.size()) - 1;  // intervals
  if (n < 1) return 0.0;
  if (n == 1) return 0.5 * dt * (y[0] + y[1]);
  if (n == 2) return dt / 3.0 * (y[0] + 4 * y[1] + y[2]);
  int m = (n % 2 == 0) ? n : n - 3;  // Simpson part
  double s = 0.0;
  if (m > 0) {
    s = y[0] + y[m];
    for (int k = 1; k < m; ++k) s += (k % 2 ? 4.0 : 2.0) * y[k];
    s *= dt / 3.0;
  }
  if (m != n) s += 3.0 * dt / 8.0 * (y[m] + 3 * y[m + 1] + 3 * y[m + 2] + y[m + 3]);
  return s;
}

MixedNorms mixed_norms(const std::vector<Field>& series, double dt, double delta, double s) {
  if (series.size() < 4) throw DomainError("mixed_norms: need at least 4 time samples");
  MixedNorms out;
  std::vector<double> a(series.size()), b(series.size());
  for (std::size_t n = 0; n < series.size(); ++n) {
    a[n] = std::pow(series[n].max_abs(), 4);
    b[n] = std::pow(holder_proxy(series[n], delta), 4);
    out.linft_hs = std::max(out.linft_hs, sobolev_norm(series[n], s));
    out.l8x.push_back(lp_norm(series[n], 8.0));
  }
  out.l4t_linfx = std::pow(simpson(a, dt), 0.25);
  out.l4t_besov = std::pow(simpson(b, dt), 0.25);
  return out;
}

}  // namespace gv
