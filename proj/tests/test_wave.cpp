#include <doctest.h>

#include "gv/random_fields.hpp"
#include "gv/scenario.hpp"
#include "gv/spectral.hpp"
#include "gv/wave.hpp"
#include "test_util.hpp"

using namespace gv;

namespace {

MetricFields minkowski_fields(const Grid2D& g) {
  MetricFields m;
  for (int a = 0; a < 3; ++a)
    for (int b = a; b < 3; ++b) m[sym(a, b)] = Field(g, minkowski(a, b));
  return m;
}

Field random(const Grid2D& g, std::uint64_t seed, double amp = 1.0) { return random_smooth_field(g, seed, amp, 3); }

// random state with d_t from random rates
Kinematics random_kinematics(const Grid2D& g, std::uint64_t seed) {
  FluidState s;
  s.h = random(g, seed, 0.2);
  s.v1 = random(g, seed + 1, 0.8);
  s.v2 = random(g, seed + 2, 0.8);
  std::array<Field, 3> rate = {random(g, seed + 3), random(g, seed + 4), random(g, seed + 5)};
  return kinematics_from_rates(s, rate);
}

}  // namespace

TEST_CASE("Minkowski wave operator on closed forms") {
  Grid2D g(32, 32);
  const double dt = 0.01;
  auto t2 = [&](int n) { return Field(g, (n * dt) * (n * dt)); };
  Field b = box_g(t2, 5, dt, minkowski_fields(g));
  CHECK((b + Field(g, 2.0)).max_abs() <= 1e-9);
  auto wave = [&](int n) {
    Field f(g);
    for (int i = 0; i < g.nx; ++i)
      for (int j = 0; j < g.ny; ++j) f.at(i, j) = std::sin(g.x1(i) - n * dt);
    return f;
  };
  CHECK(box_g(wave, 5, dt, minkowski_fields(g)).max_abs() <= 1e-8);
}

TEST_CASE("wave operator against the 9-term expansion") {
  Grid2D g(16, 16);
  MetricFields gi;
  for (int c = 0; c < 6; ++c) gi[c] = random(g, 40 + c);
  Mat3F d2;
  for (int a = 0; a < 3; ++a)
    for (int b = a; b < 3; ++b) d2[a][b] = d2[b][a] = random(g, 60 + 3 * a + b);
  Field box = box_g(d2, gi);
  Field ref(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    double s = 0;
    s += gi[0][k] * d2[0][0][k] + gi[1][k] * d2[0][1][k] + gi[2][k] * d2[0][2][k];
    s += gi[1][k] * d2[1][0][k] + gi[3][k] * d2[1][1][k] + gi[4][k] * d2[1][2][k];
    s += gi[2][k] * d2[2][0][k] + gi[4][k] * d2[2][1][k] + gi[5][k] * d2[2][2][k];
    ref[k] = s;
  }
  CHECK(max_diff(box, ref) <= 1e-9);
}

TEST_CASE("quadratic sources against a pointwise expansion") {
  Grid2D g(16, 16);
  EquationOfState eos(2.0, 0.5);
  Kinematics k = random_kinematics(g, 100);
  QuadraticSources q = quadratic_sources(k, eos);
  double err = 0;
  for (std::size_t p = 0; p < g.size(); ++p) {
    const double h = k.h[p], e2 = std::exp(-2 * h), c = eos.cs(h), c2 = c * c, cp = eos.dcs(h);
    const double v[3] = {k.v[0][p], k.v[1][p], k.v[2][p]};
    const double th = 1.0 / (c2 - e2 * (c2 - 1) * v[0] * v[0]);
    double dh[3], dv[3][3];  // dv[b][a] = d_a v^b
    for (int a = 0; a < 3; ++a) {
      dh[a] = k.dh[a][p];
      for (int b = 0; b < 3; ++b) dv[b][a] = k.dv[b][a][p];
    }
    const double m[3] = {-1, 1, 1};
    double vdh = 0, dvdv = 0, dhdh = 0, divv = dv[0][0] + dv[1][1] + dv[2][2];
    for (int a = 0; a < 3; ++a) {
      vdh += v[a] * dh[a];
      dhdh += m[a] * dh[a] * dh[a];
      for (int b = 0; b < 3; ++b) dvdv += dv[b][a] * dv[a][b];
    }
    double D = -2 * e2 * th * cp / c * vdh * vdh - e2 * th * c2 * dvdv - th * (1 + c2) * dhdh;
    err = std::max(err, std::fabs(D - q.D[p]));
    for (int al = 0; al < 3; ++al) {
      double t1 = 0, t4 = 0;
      for (int b = 0; b < 3; ++b) {
        for (int kk = 0; kk < 3; ++kk) t1 += v[b] * dv[kk][b] * dv[al][kk];
        t4 += m[al] * dv[b][al] * dh[b];
      }
      double up = m[al] * dh[al];
      double Q = -e2 * (c2 - 1) * th * t1 - 2 * (c2 - 1) * th * vdh * up - 2 * th * c * cp * up * divv +
                 (c2 - 1) * th * t4 + 2 * th * c * cp * vdh * up;
      err = std::max(err, std::fabs(Q - q.Q[al][p]));
    }
  }
  CHECK(err <= 1e-10);
}

TEST_CASE("sources vanish at constant states") {
  Grid2D g(16, 16);
  FluidState s = constant_state(g, 0.1, 0.3, 0.2);
  std::array<Field, 3> zero = {Field(g), Field(g), Field(g)};
  QuadraticSources q = quadratic_sources(kinematics_from_rates(s, zero), EquationOfState(2.0, 0.5));
  CHECK(q.D.max_abs() == 0.0);
  for (const auto& f : q.Q) CHECK(f.max_abs() == 0.0);
}

TEST_CASE("stiff algebra on random constrained states") {
  Grid2D g(32, 32);
  EquationOfState stiff(1.0);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    Kinematics k = random_kinematics(g, 10 * seed);
    StiffReport r = stiff_algebra(k, stiff);
    CHECK(r.D_agreement <= 1e-10);
    CHECK(r.Q_max <= 1e-12);
    CHECK(r.metric_minkowski);
  }
}

TEST_CASE("wave residuals: zero on constants, small on solutions, O(1) on random fields") {
  EquationOfState eos(2.0, 0.5);
  Grid2D g(16, 16);
  Trajectory c;
  c.dt = 0.1;
  for (int n = 0; n < 5; ++n) c.states.push_back(constant_state(g, 0.1, 0.2, 0.0));
  WaveResiduals z = wave_residuals(Series(c), 2, eos);
  CHECK(z.res_h.max_abs() <= 1e-13);
  CHECK(l2_norm(z.res_v) <= 1e-13);

  RunConfig cfg = build_config({}, {{"scenario", "gaussian-bump"}});
  const double dt = cfl_dt(Grid2D(32, 32));
  Trajectory a = evolve_preset(cfg, 32, dt, 8), b = evolve_preset(cfg, 64, dt / 2, 16);
  WaveResiduals ra = wave_residuals(Series(a), 4, eos), rb = wave_residuals(Series(b), 8, eos);
  MESSAGE("res_h " << l2_norm(ra.res_h) << " -> " << l2_norm(rb.res_h));
  CHECK(l2_norm(ra.res_h) / l2_norm(rb.res_h) >= 8.0);
  CHECK(l2_norm(ra.res_v) / l2_norm(rb.res_v) >= 8.0);

  Trajectory r = random_trajectory(Grid2D(32, 32), 5, 0.02, 9);
  WaveResiduals rr = wave_residuals(Series(r), 2, eos);
  CHECK(l2_norm(rr.res_h) >= 0.1 * rr.box_h_l2);
}

TEST_CASE("stiff irrotational run: box v self-converges") {
  RunConfig cfg = build_config({}, {{"scenario", "stiff-irrotational"}});
  EquationOfState eos(1.0);
  const double dt = cfl_dt(Grid2D(32, 32));
  Trajectory a = evolve_preset(cfg, 32, dt, 8), b = evolve_preset(cfg, 64, dt / 2, 16);
  StiffReport ra = stiff_checks(Series(a), 4, eos), rb = stiff_checks(Series(b), 8, eos);
  MESSAGE("box v " << ra.boxv_l2 << " -> " << rb.boxv_l2);
  CHECK(ra.metric_minkowski);
  CHECK(ra.boxv_l2 / rb.boxv_l2 >= 8.0);
}
