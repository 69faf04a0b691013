#include <doctest.h>

#include <cstdint>
#include <fstream>

#include "gv/norms.hpp"
#include "gv/random_fields.hpp"
#include "gv/simd.hpp"
#include "gv/snapshot.hpp"
#include "gv/spectral.hpp"
#include "test_util.hpp"

using namespace gv;
using gvtest::kPi;


namespace {

Field sin_x1(const Grid2D& g, double k = 1.0) {
  Field f(g);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) f.at(i, j) = std::sin(k * g.x1(i));
  return f;
}

// 8th-order centered difference along axis 1
Field fd8_d1(const Field& f) {
  static const double c[4] = {4.0 / 5, -1.0 / 5, 4.0 / 105, -1.0 / 280};
  const Grid2D& g = f.grid();
  const double dx = g.lx / g.nx;
  Field d(g);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      double s = 0;
      for (int m = 1; m <= 4; ++m) s += c[m - 1] * (f.at((i + m) % g.nx, j) - f.at((i - m + g.nx) % g.nx, j));
      d.at(i, j) = s / dx;
    }
  return d;
}

double inner(const Field& a, const Field& b) {
  double s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s * a.grid().cell();
}

}  // namespace

TEST_CASE("spectral derivative of single modes and constants") {
  Grid2D g(32, 32);
  Field d = spectral_derivative(sin_x1(g), 1);
  double err = 0;
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) err = std::max(err, std::fabs(d.at(i, j) - std::cos(g.x1(i))));
  CHECK(err <= 1e-12);
  CHECK(spectral_derivative(Field(g, 3.5), 2).max_abs() == doctest::Approx(0.0));
  CHECK(spectral_derivative(sin_x1(g), 2).max_abs() <= 1e-14);
}

TEST_CASE("spectral derivative against an 8th-order difference oracle") {
  double err[2];
  int idx = 0;
  for (int n : {64, 128}) {
    Grid2D g(n, n);
    Field f = random_smooth_field(g, 42, 1.0, 4);
    err[idx++] = max_diff(spectral_derivative(f, 1), fd8_d1(f));
  }
  CHECK(err[0] <= 1e-5);
  // O(dx^8): halving dx divides the gap by ~256
  CHECK(err[0] / err[1] >= 150.0);
}

TEST_CASE("transform round trip and Parseval") {
  Grid2D g(64, 32);
  Field f = random_smooth_field(g, 3, 2.0, 6);
  Field back = ifft(fft(f), g);
  CHECK(max_diff(f, back) <= 1e-12 * f.max_abs());
  Spectrum sp = fft(f);
  const auto& hw = hermitian_weight(g);
  double by_modes = 0;
  for (std::size_t k = 0; k < sp.size(); ++k) by_modes += hw[k] * std::norm(sp[k]);
  double grid = 0;
  for (std::size_t k = 0; k < f.size(); ++k) grid += f[k] * f[k];
  grid /= double(f.size());
  CHECK(std::fabs(by_modes - grid) <= 1e-12 * grid);
}

TEST_CASE("Littlewood-Paley partition of unity") {
  Grid2D g(64, 64);
  Field f = random_power_law_field(g, 9, 1.0, 1.0, 20) + Field(g, 0.25);
  Field sum(g, 0.0);
  for (const auto& b : lp_decompose(f)) sum += b.field;
  double mean = std::real(fft(f)[0]);
  sum += Field(g, mean);
  CHECK(max_diff(sum, f) <= 1e-10);
}

TEST_CASE("single mode at wavenumber 3 lands in bands 1 and 2 only") {
  Grid2D g(32, 32);
  Field f = sin_x1(g, 3.0);
  for (const auto& b : lp_decompose(f)) {
    double m = b.field.max_abs();
    bool in = (std::exp2(b.j - 1) <= 3.0 && 3.0 <= std::exp2(b.j + 1));
    if (in)
      CHECK(m > 1e-3);
    else
      CHECK(m <= 1e-14);
  }
}

TEST_CASE("bands are almost orthogonal and commute with derivatives") {
  Grid2D g(64, 64);
  Field f = random_power_law_field(g, 5, 1.0, 0.5, 30);
  auto bands = lp_decompose(f);
  double l2 = l2_norm(f);
  for (std::size_t a = 0; a < bands.size(); ++a)
    for (std::size_t b = a + 2; b < bands.size(); ++b)
      CHECK(std::fabs(gv::inner(bands[a].field, bands[b].field)) <= 1e-12 * l2 * l2);
  for (const auto& b : bands) {
    Field x = spectral_derivative(b.field, 2);
    Field y = lp_project(spectral_derivative(f, 2), b.j).field;
    CHECK(max_diff(x, y) <= 1e-12 * std::max(1.0, spectral_derivative(f, 2).max_abs()));
  }
}

TEST_CASE("Besov norm against band sup norms from a direct DFT") {
  Grid2D g(16, 16);
  Field f = random_smooth_field(g, 8, 1.0, 5);
  // coefficients once, by direct summation
  std::vector<std::complex<double>> c(g.size());
  for (int a = 0; a < g.nx; ++a)
    for (int b = 0; b < g.ny; ++b)
      c[a * g.ny + b] = gvtest::dft_coefficient(f, gvtest::signed_mode(a, g.nx), gvtest::signed_mode(b, g.ny));
  double sum = 0;
  for (int j = -3; j <= 8; ++j) {
    double sup = 0;
    for (int i = 0; i < g.nx; ++i)
      for (int k = 0; k < g.ny; ++k) {
        std::complex<double> v = 0;
        for (int a = 0; a < g.nx; ++a)
          for (int b = 0; b < g.ny; ++b) {
            int m1 = gvtest::signed_mode(a, g.nx), m2 = gvtest::signed_mode(b, g.ny);
            double r = std::hypot(double(m1), double(m2));
            if (r == 0) continue;
            double ph = m1 * g.x1(i) + m2 * g.x2(k);
            v += lp_zeta(r / std::exp2(j)) * c[a * g.ny + b] * std::complex<double>(std::cos(ph), std::sin(ph));
          }
        sup = std::max(sup, std::fabs(v.real()));
      }
    sum += sup * sup;
  }
  CHECK(besov_norm(f, 0.0, 2.0) == doctest::Approx(std::sqrt(sum)).epsilon(1e-10));
}

TEST_CASE("Sobolev norms of sin x1 and a direct summation oracle") {
  Grid2D g(32, 32);
  CHECK(sobolev_norm(sin_x1(g), 0.0) == doctest::Approx(kPi * std::sqrt(2.0)).epsilon(1e-13));
  CHECK(sobolev_norm(sin_x1(g), 1.0) == doctest::Approx(2 * kPi).epsilon(1e-13));
  CHECK(homogeneous_sobolev_norm(Field(g, 2.0), 1.3) == 0.0);

  Grid2D s(16, 16);
  Field f = random_smooth_field(s, 77, 1.0, 3);
  for (double e : {-0.5, 0.0, 1.0, 1.8}) {
    double acc = 0;
    for (int a = 0; a < s.nx; ++a)
      for (int b = 0; b < s.ny; ++b) {
        int m1 = gvtest::signed_mode(a, s.nx), m2 = gvtest::signed_mode(b, s.ny);
        acc += std::pow(1.0 + m1 * m1 + m2 * m2, e) * std::norm(gvtest::dft_coefficient(f, m1, m2));
      }
    CHECK(sobolev_norm(f, e) == doctest::Approx(2 * kPi * std::sqrt(acc)).epsilon(1e-10));
  }
}

TEST_CASE("mixed space-time norms") {
  Grid2D g(16, 16);
  SUBCASE("constant in time") {
    std::vector<Field> series(9, Field(g, -1.5));
    MixedNorms m = mixed_norms(series, 0.25, 0.1, 1.0);
    CHECK(m.l4t_linfx == doctest::Approx(1.5 * std::pow(2.0, 0.25)).epsilon(1e-13));
  }
  SUBCASE("a(t) = t") {
    std::vector<Field> series;
    const int n = 41;
    for (int k = 0; k < n; ++k) series.push_back(double(k) / (n - 1) * sin_x1(g));
    // the grid attains |sin| = 1 at x1 = pi/2
    MixedNorms m = mixed_norms(series, 1.0 / (n - 1), 0.1, 1.0);
    CHECK(m.l4t_linfx == doctest::Approx(std::pow(0.2, 0.25)).epsilon(1e-6));
  }
  SUBCASE("oversampled trapezoid oracle") {
    Field a = random_smooth_field(g, 1, 1.0, 3), b = random_smooth_field(g, 2, 1.0, 3);
    auto at = [&](double t) { return std::cos(3 * t) * a + (t * t) * b; };
    const double T = 2.0;
    const int n = 21;
    std::vector<Field> series;
    for (int k = 0; k < n; ++k) series.push_back(at(T * k / (n - 1)));
    MixedNorms m = mixed_norms(series, T / (n - 1), 0.1, 1.0);
    const int N = 10 * (n - 1);
    double acc = 0;
    for (int k = 0; k <= N; ++k) {
      double w = (k == 0 || k == N) ? 0.5 : 1.0;
      acc += w * std::pow(at(T * k / N).max_abs(), 4);
    }
    double oracle = std::pow(acc * T / N, 0.25);
    CHECK(m.l4t_linfx == doctest::Approx(oracle).epsilon(0.01));
    CHECK(m.l8x.size() == std::size_t(n));
  }
}

TEST_CASE("snapshot round trip is bit exact") {
  Grid2D g(16, 32);
  Field f = random_smooth_field(g, 4, 1.0, 3);
  std::string dir = gvtest::temp_dir("snap");
  write_snapshot(dir + "/f.bin", f, "h", 0.375);
  Snapshot s = read_snapshot(dir + "/f.bin");
  CHECK(s.name == "h");
  CHECK(s.time == 0.375);
  REQUIRE(s.field.grid() == g);
  for (std::size_t k = 0; k < f.size(); ++k) CHECK(s.field[k] == f[k]);
  std::ofstream(dir + "/bad.bin") << "not a snapshot";
  CHECK_THROWS(read_snapshot(dir + "/bad.bin"));
}

TEST_CASE("non-finite input is rejected") {
  Grid2D g(16, 16);
  Field f(g, 1.0);
  f[5] = std::nan("");
  CHECK_THROWS_AS(sobolev_norm(f, 1.0), DomainError);
}

TEST_CASE("SIMD kernels agree with the scalar reference") {
  const simd::Kernels& ref = simd::scalar_kernels();
  std::vector<const simd::Kernels*> variants;
  if (simd::avx2_kernels() && simd::cpu_has_avx2()) variants.push_back(simd::avx2_kernels());
  if (simd::neon_kernels()) variants.push_back(simd::neon_kernels());
  MESSAGE("vector variants under test: " << variants.size());
  CounterRng rng(99);
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 64u, 1001u}) {
    std::vector<double> a(n), b(n), m(n), e(n);
    std::vector<simd::cplx> c(n);
    for (std::size_t k = 0; k < n; ++k) {
      a[k] = rng.uniform(-2, 2);
      b[k] = rng.uniform(-2, 2);
      m[k] = rng.uniform(0, 3);
      e[k] = rng.uniform(0.2, 2);
      c[k] = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
    }
    for (const simd::Kernels* v : variants) {
      std::vector<double> y0(n), y1(n);
      ref.lincomb(y0.data(), 0.3, a.data(), -1.7, b.data(), n);
      v->lincomb(y1.data(), 0.3, a.data(), -1.7, b.data(), n);
      for (std::size_t k = 0; k < n; ++k) CHECK(std::fabs(y0[k] - y1[k]) <= 1e-15 * 4);
      CHECK(ref.max_abs(a.data(), n) == v->max_abs(a.data(), n));
      double s0 = ref.weighted_sumsq(c.data(), m.data(), n), s1 = v->weighted_sumsq(c.data(), m.data(), n);
      CHECK(std::fabs(s0 - s1) <= 1e-14 * std::max(1.0, s0));
      std::vector<simd::cplx> c0 = c, c1 = c;
      ref.cmul_real(c0.data(), m.data(), n);
      v->cmul_real(c1.data(), m.data(), n);
      for (std::size_t k = 0; k < n; ++k) CHECK(c0[k] == c1[k]);
      ref.mul_ik(c0.data(), c.data(), a.data(), n);
      v->mul_ik(c1.data(), c.data(), a.data(), n);
      for (std::size_t k = 0; k < n; ++k) CHECK(c0[k] == c1[k]);
      ref.lift_v0(y0.data(), e.data(), a.data(), b.data(), n);
      v->lift_v0(y1.data(), e.data(), a.data(), b.data(), n);
      for (std::size_t k = 0; k < n; ++k) CHECK(std::fabs(y0[k] - y1[k]) <= 4e-16 * y0[k]);
      if (n > 2) {
        a[n / 2] = std::nan("");
        CHECK(std::isnan(v->max_abs(a.data(), n)));
        CHECK(std::isnan(ref.max_abs(a.data(), n)));
      }
    }
  }
}

TEST_CASE("forced scalar path gives the same spectral results") {
  Grid2D g(32, 32);
  Field f = random_smooth_field(g, 6, 1.0, 4);
  double a = sobolev_norm(f, 1.8);
  Field da = spectral_derivative(f, 1);
  simd::force(simd::Isa::Scalar);
  double b = sobolev_norm(f, 1.8);
  Field db = spectral_derivative(f, 1);
  simd::reset();
  CHECK(std::fabs(a - b) <= 1e-14 * a);
  CHECK(max_diff(da, db) <= 1e-14);
}
