#include "gv/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "gv/simd.hpp"

namespace gv {
namespace {

std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

struct Plans2D {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

const Plans2D& plans2d(int nx, int ny) {
  static std::map<std::pair<int, int>, Plans2D> cache;
  std::lock_guard<std::mutex> lock(plan_mutex());
  auto it = cache.find({nx, ny});
  if (it != cache.end()) return it->second;
  std::size_t n = std::size_t(nx) * ny, nc = std::size_t(nx) * (ny / 2 + 1);
  double* r = fftw_alloc_real(n);
  fftw_complex* c = fftw_alloc_complex(nc);
  Plans2D p;
  unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  p.fwd = fftw_plan_dft_r2c_2d(nx, ny, r, c, flags);
  p.bwd = fftw_plan_dft_c2r_2d(nx, ny, c, r, flags);
  fftw_free(r);
  fftw_free(c);
  return cache.emplace(std::make_pair(nx, ny), p).first->second;
}

struct Plans1D {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

const Plans1D& plans1d(int n) {
  static std::map<int, Plans1D> cache;
  std::lock_guard<std::mutex> lock(plan_mutex());
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  double* r = fftw_alloc_real(n);
  fftw_complex* c = fftw_alloc_complex(n / 2 + 1);
  Plans1D p;
  unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  p.fwd = fftw_plan_dft_r2c_1d(n, r, c, flags);
  p.bwd = fftw_plan_dft_c2r_1d(n, c, r, flags);
  fftw_free(r);
  fftw_free(c);
  return cache.emplace(n, p).first->second;
}

using GridKey = std::tuple<int, int, double, double>;
GridKey key(const Grid2D& g) { return {g.nx, g.ny, g.lx, g.ly}; }

template <class Build>
const std::vector<double>& cached(std::map<GridKey, std::vector<double>>& cache, const Grid2D& g,
                                  Build&& build) {
  static std::mutex m;
  std::lock_guard<std::mutex> lock(m);
  auto it = cache.find(key(g));
  if (it != cache.end()) return it->second;
  return cache.emplace(key(g), build()).first->second;
}

}  // namespace

Spectrum fft(const Field& f) {
  const Grid2D& g = f.grid();
  Spectrum s(g.spec_size());
  fftw_execute_dft_r2c(plans2d(g.nx, g.ny).fwd, const_cast<double*>(f.data()),
                       reinterpret_cast<fftw_complex*>(s.data()));
  const double scale = 1.0 / double(g.size());
  for (auto& z : s) z *= scale;
  return s;
}

Field ifft(const Spectrum& s, const Grid2D& g) {
  Spectrum tmp(s);  // c2r overwrites its input
  Field out(g);
  fftw_execute_dft_c2r(plans2d(g.nx, g.ny).bwd, reinterpret_cast<fftw_complex*>(tmp.data()), out.data());
  return out;
}

const std::vector<double>& deriv_wavenumbers(const Grid2D& g, int axis) {
  static std::map<GridKey, std::vector<double>> c1, c2;
  auto build = [&g, axis]() {
    std::vector<double> k(g.spec_size());
    for (int i = 0; i < g.nx; ++i)
      for (int j = 0; j < g.nyc(); ++j) {
        double v = 0.0;
        if (axis == 1 && i != g.nx / 2) v = g.k1(i);
        if (axis == 2 && j != g.ny / 2) v = g.k2(j);
        k[std::size_t(i) * g.nyc() + j] = v;
      }
    return k;
  };
  if (axis == 1) return cached(c1, g, build);
  if (axis == 2) return cached(c2, g, build);
  throw DomainError("axis must be 1 or 2");
}

const std::vector<double>& wavenumber_magnitude(const Grid2D& g) {
  static std::map<GridKey, std::vector<double>> c;
  return cached(c, g, [&g]() {
    std::vector<double> k(g.spec_size());
    for (int i = 0; i < g.nx; ++i)
      for (int j = 0; j < g.nyc(); ++j) k[std::size_t(i) * g.nyc() + j] = std::hypot(g.k1(i), g.k2(j));
    return k;
  });
}

const std::vector<double>& hermitian_weight(const Grid2D& g) {
  static std::map<GridKey, std::vector<double>> c;
  return cached(c, g, [&g]() {
    std::vector<double> w(g.spec_size());
    for (int i = 0; i < g.nx; ++i)
      for (int j = 0; j < g.nyc(); ++j)
        w[std::size_t(i) * g.nyc() + j] = (j == 0 || j == g.ny / 2) ? 1.0 : 2.0;
    return w;
  });
}

const std::vector<double>& dealias_mask(const Grid2D& g) {
  static std::map<GridKey, std::vector<double>> c;
  return cached(c, g, [&g]() {
    std::vector<double> m(g.spec_size());
    const int c1 = g.nx / 3, c2 = g.ny / 3;
    for (int i = 0; i < g.nx; ++i)
      for (int j = 0; j < g.nyc(); ++j) {
        bool keep = std::abs(g.m1(i)) <= c1 && i != g.nx / 2 && j <= c2;
        m[std::size_t(i) * g.nyc() + j] = keep ? 1.0 : 0.0;
      }
    return m;
  });
}

Field derivative_from_spectrum(const Spectrum& s, const Grid2D& g, int axis) {
  Spectrum d(s.size());
  simd::kernels().mul_ik(d.data(), s.data(), deriv_wavenumbers(g, axis).data(), s.size());
  return ifft(d, g);
}

Field derivative2_from_spectrum(const Spectrum& s, const Grid2D& g, int a, int b) {
  Spectrum d(s.size());
  const auto& ka = deriv_wavenumbers(g, a);
  const auto& kb = deriv_wavenumbers(g, b);
  for (std::size_t k = 0; k < s.size(); ++k) d[k] = -ka[k] * kb[k] * s[k];
  return ifft(d, g);
}

Field spectral_derivative(const Field& f, int axis) {
  require_finite(f, "spectral_derivative");
  return derivative_from_spectrum(fft(f), f.grid(), axis);
}

Field spectral_derivative2(const Field& f, int a, int b) {
  require_finite(f, "spectral_derivative2");
  return derivative2_from_spectrum(fft(f), f.grid(), a, b);
}

void dealias(Spectrum& s, const Grid2D& g) {
  simd::kernels().cmul_real(s.data(), dealias_mask(g).data(), s.size());
}

Field dealiased(const Field& f) {
  Spectrum s = fft(f);
  dealias(s, f.grid());
  return ifft(s, f.grid());
}

void exp_filter(Spectrum& s, const Grid2D& g, double order, double amp) {
  static std::map<std::tuple<int, int, double, double, double, double>, std::vector<double>> cache;
  static std::mutex m;
  std::vector<double>* sig;
  {
    std::lock_guard<std::mutex> lock(m);
    auto k = std::make_tuple(g.nx, g.ny, g.lx, g.ly, order, amp);
    auto it = cache.find(k);
    if (it == cache.end()) {
      std::vector<double> v(g.spec_size());
      const double c1 = g.nx / 3, c2 = g.ny / 3;
      for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.nyc(); ++j) {
          double eta = std::max(std::abs(g.m1(i)) / c1, j / c2);
          v[std::size_t(i) * g.nyc() + j] = eta <= 1.0 ? std::exp(-amp * std::pow(eta, order)) : 0.0;
        }
      it = cache.emplace(k, std::move(v)).first;
    }
    sig = &it->second;
  }
  simd::kernels().cmul_real(s.data(), sig->data(), s.size());
}

Field apply_multiplier(const Field& f, const std::vector<double>& m) {
  Spectrum s = fft(f);
  simd::kernels().cmul_real(s.data(), m.data(), s.size());
  return ifft(s, f.grid());
}

std::vector<cplx> fft1d(const std::vector<double>& x) {
  const int n = int(x.size());
  std::vector<cplx> c(n / 2 + 1);
  fftw_execute_dft_r2c(plans1d(n).fwd, const_cast<double*>(x.data()), reinterpret_cast<fftw_complex*>(c.data()));
  for (auto& z : c) z /= double(n);
  return c;
}

std::vector<double> ifft1d(const std::vector<cplx>& c, int n) {
  std::vector<cplx> tmp(c);
  std::vector<double> x(n);
  fftw_execute_dft_c2r(plans1d(n).bwd, reinterpret_cast<fftw_complex*>(tmp.data()), x.data());
  return x;
}

std::vector<double> derivative1d(const std::vector<double>& x, double L) {
  const int n = int(x.size());
  auto c = fft1d(x);
  for (int k = 0; k < int(c.size()); ++k) {
    double kk = (k == n / 2) ? 0.0 : kTwoPi / L * k;
    c[k] *= cplx(0.0, kk);
  }
  return ifft1d(c, n);
}

}  // namespace gv
