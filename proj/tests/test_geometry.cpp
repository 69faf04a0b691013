#include <doctest.h>

#include "gv/geometry.hpp"
#include "gv/random_fields.hpp"
#include "gv/scenario.hpp"
#include "gv/verify.hpp"
#include "test_util.hpp"

using namespace gv;

namespace {

Trajectory bump(int nx, double amp, int steps, double dt) {
  Grid2D g(nx, nx);
  EquationOfState eos(2.0, 0.5);
  FluidState s0 = preset_state("gaussian-bump", g, amp, eos);
  return evolve(s0, steps * dt, eos, {}, steps);
}

double vec_dev(const P3& a, const P3& b) {
  return std::fabs(a[0] - b[0]) + std::fabs(a[1] - b[1]) + std::fabs(a[2] - b[2]);
}

// frame deviation from the rest-background frame, max over samples
double frame_deviation(const NullFrame& a, const NullFrame& ref) {
  double d = 0;
  for (std::size_t k = 0; k < a.samples.size(); ++k)
    for (std::size_t j = 0; j < a.samples[k].l.size(); ++j)
      d = std::max(d, vec_dev(a.samples[k].l[j], ref.samples[k].l[j]) +
                          vec_dev(a.samples[k].e1[j], ref.samples[k].e1[j]));
  return d;
}

}  // namespace

TEST_CASE("Minkowski frame is exact") {
  EquationOfState stiff(1.0);
  Trajectory tr = random_trajectory(Grid2D(16, 16), 9, 0.05, 2, 0.3);
  NullFoliation f = evolve_foliation(tr, stiff, Direction{2, 1}, 1.0);
  NullFrame fr = build_null_frame(tr, stiff, f);
  for (const auto& s : fr.samples)
    for (std::size_t j = 0; j < s.l.size(); ++j) {
      CHECK(vec_dev(s.l[j], {1, 0, 1}) <= 1e-14);
      CHECK(vec_dev(s.lbar[j], {-1, 0, 1}) <= 1e-14);
      CHECK(vec_dev(s.e1[j], {0, 1, 0}) <= 1e-14);
    }
  CHECK(fr.gram_defect <= 1e-14);
  ChiReport chi = connection_chi(tr, stiff, f, fr);
  CHECK(chi.chi_max <= 1e-12);
  for (const auto& n : foliation_norms(f)) CHECK(n.value <= 1e-12);
}

TEST_CASE("plane speeds: Minkowski and the c_s(0) background") {
  CheckResult r = check_plane_speeds(0.5, 1e-6);
  MESSAGE(r.detail);
  CHECK(r.passed);
  CHECK(r.metric("background_speed") == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("frame contract and ordering on a perturbed background") {
  EquationOfState eos(2.0, 0.5);
  Trajectory tr = bump(32, 0.1, 16, cfl_dt(Grid2D(32, 32)));
  for (int axis : {1, 2})
    for (int sign : {1, -1}) {
      NullFoliation f = evolve_foliation(tr, eos, Direction{axis, sign}, 2.0);
      NullFrame fr = build_null_frame(tr, eos, f);
      CHECK(f.null_defect <= 1e-8);
      CHECK(fr.gram_defect <= 1e-8);
      for (const auto& s : fr.samples) CHECK(s.dt_l_defect <= 1e-14);
      NullFoliation g = evolve_foliation(tr, eos, Direction{axis, sign}, 2.5);
      double gap = INFINITY;
      for (std::size_t k = 0; k < f.phi.size(); ++k)
        for (std::size_t j = 0; j < f.phi[k].size(); ++j) gap = std::min(gap, g.phi[k][j] - f.phi[k][j]);
      CHECK(gap > 0.0);
    }
}

TEST_CASE("frame, chi and foliation norm scale linearly with amplitude") {
  EquationOfState eos(2.0, 0.5);
  const double dt = cfl_dt(Grid2D(32, 32));
  Trajectory t0 = bump(32, 0.0, 16, dt), t1 = bump(32, 1e-3, 16, dt), t2 = bump(32, 1e-2, 16, dt),
             t1b = bump(32, 2e-3, 16, dt);
  Direction d{2, 1};
  NullFoliation f0 = evolve_foliation(t0, eos, d, 2.0), f1 = evolve_foliation(t1, eos, d, 2.0),
                f2 = evolve_foliation(t2, eos, d, 2.0), f1b = evolve_foliation(t1b, eos, d, 2.0);
  NullFrame r0 = build_null_frame(t0, eos, f0), r1 = build_null_frame(t1, eos, f1), r2 = build_null_frame(t2, eos, f2);
  double ratio = frame_deviation(r2, r0) / frame_deviation(r1, r0);
  MESSAGE("frame deviation ratio " << ratio);
  CHECK(ratio == doctest::Approx(10.0).epsilon(0.1));
  double c1 = connection_chi(t1, eos, f1, r1).chi_max, c2 = connection_chi(t2, eos, f2, r2).chi_max;
  MESSAGE("chi " << c1 << " -> " << c2);
  CHECK(c2 / c1 == doctest::Approx(10.0).epsilon(0.1));
  auto n1 = foliation_norms(f1), n1b = foliation_norms(f1b);
  REQUIRE(n1.size() == 2);
  for (std::size_t i = 0; i < n1.size(); ++i) CHECK(n1b[i].value / n1[i].value == doctest::Approx(2.0).epsilon(0.05));
  CHECK(foliation_norms(f0)[0].value <= 1e-12);
}

TEST_CASE("foliation norm is refinement stable") {
  EquationOfState eos(2.0, 0.5);
  const double dt = cfl_dt(Grid2D(32, 32));
  Trajectory a = bump(32, 0.1, 16, dt), b = bump(64, 0.1, 32, dt / 2);
  auto na = foliation_norms(evolve_foliation(a, eos, Direction{1, 1}, 2.0));
  auto nb = foliation_norms(evolve_foliation(b, eos, Direction{1, 1}, 2.0));
  for (std::size_t i = 0; i < na.size(); ++i) {
    MESSAGE("s0 " << na[i].s0 << ": " << na[i].value << " vs " << nb[i].value);
    CHECK(nb[i].value == doctest::Approx(na[i].value).epsilon(0.1));
  }
}

TEST_CASE("chi transport audit shrinks under refinement") {
  EquationOfState eos(2.0, 0.5);
  const double dt = cfl_dt(Grid2D(32, 32));
  Trajectory a = bump(32, 0.1, 16, dt), b = bump(64, 0.1, 32, dt / 2);
  auto audit = [&](const Trajectory& tr) {
    NullFoliation f = evolve_foliation(tr, eos, Direction{2, 1}, 2.0);
    return connection_chi(tr, eos, f, build_null_frame(tr, eos, f)).audit_max;
  };
  double ra = audit(a), rb = audit(b);
  MESSAGE("audit " << ra << " -> " << rb);
  CHECK(rb < ra);
}

TEST_CASE("curvature of a conformally flat slice") {
  // g = -dt^2 + e^{2f}(dx1^2 + dx2^2), f = 0.3 x1 + 0.2 x2^2 at x2 = 0.5
  const double x2 = 0.5, f = 0.2 * x2 * x2, df[3] = {0, 0.3, 0.4 * x2}, d2f[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0.4}};
  const double E = std::exp(2 * f);
  PointCurvature p{};
  p.gc = {-1, 0, 0, E, 0, E};
  p.gi = {-1, 0, 0, 1 / E, 0, 1 / E};
  for (int c = 0; c < 3; ++c)
    for (int i : {1, 2}) p.dg[c][sym(i, i)] = 2 * df[c] * E;
  for (int c = 0; c < 3; ++c)
    for (int d = c; d < 3; ++d)
      for (int i : {1, 2}) p.d2g[sym(c, d)][sym(i, i)] = (4 * df[c] * df[d] + 2 * d2f[c][d]) * E;
  // R_1212 = K g11 g22 with K = -e^{-2f} lap f
  const double expected = -E * 0.4;
  CHECK(riemann(p, {0, 1, 0}, {0, 0, 1}, {0, 1, 0}, {0, 0, 1}) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(riemann(p, {0, 0, 1}, {0, 1, 0}, {0, 1, 0}, {0, 0, 1}) == doctest::Approx(-expected).epsilon(1e-12));

  PointCurvature flat{};
  flat.gc = {-1, 0, 0, 1, 0, 1};
  flat.gi = flat.gc;
  CHECK(riemann(flat, {1, 2, 3}, {0, 1, 0}, {1, 0, 1}, {2, 1, 0}) == 0.0);
}

TEST_CASE("curvature symmetries with random derivatives") {
  CounterRng rng(8);
  PointCurvature p{};
  p.gc = {-1.2, 0.1, 0.05, 1.1, 0.02, 0.9};
  // inverse by cofactors
  double m[3][3], inv[3][3];
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) m[a][b] = p.gc[sym(a, b)];
  REQUIRE(invert3(m, inv));
  for (int a = 0; a < 3; ++a)
    for (int b = a; b < 3; ++b) p.gi[sym(a, b)] = inv[a][b];
  for (auto& row : p.dg)
    for (auto& x : row) x = rng.uniform(-1, 1);
  for (auto& row : p.d2g)
    for (auto& x : row) x = rng.uniform(-1, 1);
  P3 X{0.3, -1, 0.2}, Y{1, 0.5, -0.4}, Z{-0.7, 0.1, 0.9}, W{0.2, 0.8, 0.3};
  const double r = riemann(p, X, Y, Z, W);
  CHECK(riemann(p, Y, X, Z, W) == doctest::Approx(-r).epsilon(1e-12));
  CHECK(riemann(p, X, Y, W, Z) == doctest::Approx(-r).epsilon(1e-12));
  CHECK(riemann(p, Z, W, X, Y) == doctest::Approx(r).epsilon(1e-12));
  CHECK(std::fabs(r + riemann(p, Y, Z, X, W) + riemann(p, Z, X, Y, W)) <= 1e-12);
  for (int n = 0; n < 3; ++n)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        CHECK(christoffel_first(p, n, a, b) == christoffel_first(p, n, b, a));
        // d_a g_nb = Gamma_{n,ab} + Gamma_{b,an}
        CHECK(christoffel_first(p, n, a, b) + christoffel_first(p, b, a, n) ==
              doctest::Approx(p.dg[a][sym(n, b)]).epsilon(1e-14));
      }
}
