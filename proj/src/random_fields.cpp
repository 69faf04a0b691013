#include "gv/random_fields.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gv/spectral.hpp"

namespace gv {

std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

struct Mode {
  int m1, m2;
  double amp, phase, omega;
};

std::vector<Mode> draw_modes(CounterRng& rng, int kmax, bool with_time) {
  std::vector<Mode> modes;
  for (int m1 = -kmax; m1 <= kmax; ++m1)
    for (int m2 = 0; m2 <= kmax; ++m2) {
      if (m2 == 0 && m1 <= 0) continue;
      double k = std::sqrt(double(m1 * m1 + m2 * m2));
      Mode md{m1, m2, rng.uniform(-1, 1) / (1.0 + k * k), rng.uniform(0, kTwoPi), 0.0};
      md.omega = with_time ? rng.uniform(0.5, 2.0) : 0.0;
      modes.push_back(md);
    }
  return modes;
}

Field sum_modes(const Grid2D& g, const std::vector<Mode>& modes, double t) {
  Field f(g);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      double x = g.x1(i), y = g.x2(j), s = 0;
      for (const auto& m : modes)
        s += m.amp * std::cos(kTwoPi / g.lx * m.m1 * x + kTwoPi / g.ly * m.m2 * y + m.omega * t + m.phase);
      f.at(i, j) = s;
    }
  return f;
}

double sup_on_fine_grid(const std::vector<Mode>& modes, double t) {
  Grid2D fine(64, 64);
  return sum_modes(fine, modes, t).max_abs();
}

}  // namespace

Field random_smooth_field(const Grid2D& g, std::uint64_t seed, double amplitude, int kmax) {
  CounterRng rng(seed);
  auto modes = draw_modes(rng, kmax, false);
  double sup = sup_on_fine_grid(modes, 0.0);
  Field f = sum_modes(g, modes, 0.0);
  if (sup > 0) f *= amplitude / sup;
  return f;
}

Field random_power_law_field(const Grid2D& g, std::uint64_t seed, double l2, double decay, int kmax) {
  if (2 * kmax >= std::min(g.nx, g.ny)) throw DomainError("kmax must stay below the Nyquist mode");
  Spectrum sp(g.spec_size(), cplx(0.0, 0.0));
  auto coef = [&](int m1, int m2) {
    std::uint64_t key = (std::uint64_t(m1 + 4096) << 16) | std::uint64_t(m2);
    double u = double(counter_hash(seed, 2 * key) >> 11) * 0x1.0p-53;
    double ph = kTwoPi * double(counter_hash(seed, 2 * key + 1) >> 11) * 0x1.0p-53;
    double a = (0.5 + u) * std::pow(1.0 + double(m1 * m1 + m2 * m2), -0.5 * decay);
    return std::polar(a, ph);
  };
  for (int i = 0; i < g.nx; ++i) {
    const int m1 = g.m1(i);
    if (std::abs(m1) > kmax) continue;
    for (int m2 = 0; m2 <= kmax; ++m2) {
      if (m2 == 0 && m1 <= 0) continue;
      cplx c = coef(m1, m2);
      sp[std::size_t(i) * g.nyc() + m2] = c;
      if (m2 == 0) sp[std::size_t((g.nx - i) % g.nx) * g.nyc()] = std::conj(c);
    }
  }
  Field f = ifft(sp, g);
  double n = l2_norm(f);
  if (n > 0) f *= l2 / n;
  return f;
}

RandomPoint random_point(CounterRng& rng, double hmax, double vmax) {
  RandomPoint p;
  p.h = rng.uniform(-hmax, hmax);
  double r = vmax * std::sqrt(rng.uniform()), a = rng.uniform(0, kTwoPi);
  p.v1 = r * std::cos(a);
  p.v2 = r * std::sin(a);
  return p;
}

Trajectory random_trajectory(const Grid2D& g, int n_slices, double dt, std::uint64_t seed, double amplitude,
                             int kmax) {
  Trajectory tr;
  tr.dt = dt;
  std::array<std::vector<Mode>, 3> modes;
  std::array<double, 3> scale;
  for (int c = 0; c < 3; ++c) {
    CounterRng rng(seed, c + 1);
    modes[c] = draw_modes(rng, kmax, true);
    double sup = sup_on_fine_grid(modes[c], 0.0);
    scale[c] = sup > 0 ? amplitude / sup : 0.0;
  }
  for (int n = 0; n < n_slices; ++n) {
    FluidState s;
    s.time = n * dt;
    s.h = sum_modes(g, modes[0], s.time) * scale[0];
    s.v1 = sum_modes(g, modes[1], s.time) * scale[1];
    s.v2 = sum_modes(g, modes[2], s.time) * scale[2];
    tr.states.push_back(std::move(s));
  }
  return tr;
}

}  // namespace gv
