#include <doctest.h>

#include "gv/random_fields.hpp"
#include "gv/state.hpp"
#include "test_util.hpp"

using namespace gv;

namespace {

// h(rho) = int_{rho_ref}^{rho} p'(r) / (p(r) + r) dr for p = r^A, composite Simpson
double h_quadrature(double A, double c0sq, double rho) {
  const double ref = A == 1.0 ? 1.0 : std::pow(c0sq / A, 1.0 / (A - 1.0));
  const int n = 20000;
  const double d = (rho - ref) / n;
  auto f = [A](double r) { return A * std::pow(r, A - 1.0) / (std::pow(r, A) + r); };
  double s = f(ref) + f(rho);
  for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * f(ref + k * d);
  return s * d / 3.0;
}

std::array<std::array<double, 3>, 3> unpack(const double m[3][3]) {
  std::array<std::array<double, 3>, 3> a{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a[i][j] = m[i][j];
  return a;
}

}  // namespace

TEST_CASE("stiff equation of state") {
  EquationOfState eos(1.0);
  CHECK(eos.stiff());
  for (double h = -3; h <= 3; h += 0.25) {
    CHECK(eos.cs(h) == 1.0);
    CHECK(eos.dcs(h) == 0.0);
  }
  for (double rho : {0.2, 1.7, 5.0}) {
    double h = h_quadrature(1.0, 0.5, rho);
    CHECK(eos.rho(h) == doctest::Approx(rho).epsilon(1e-10));
    CHECK(eos.h_of_rho(rho) == doctest::Approx(h).epsilon(1e-10));
  }
}

TEST_CASE("A = 2 sound speed and density round trip") {
  EquationOfState eos(2.0, 0.5);
  double hq = h_quadrature(2.0, 0.5, 0.1);
  double h = eos.h_of_rho(0.1);
  CHECK(h == doctest::Approx(hq).epsilon(1e-10));
  CHECK(eos.cs2(h) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(eos.rho(h) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(eos.cs2(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(eos.p(h) == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(eos.h_of_p(eos.p(0.2)) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("sound speed derivative against central differences") {
  for (double A : {1.5, 2.0, 3.0}) {
    EquationOfState eos(A, 0.4);
    for (double h : {-0.2, 0.0, 0.1}) {
      if (!eos.admissible(h)) continue;
      const double d = 1e-6;
      double fd = (eos.cs(h + d) - eos.cs(h - d)) / (2 * d);
      CHECK(eos.dcs(h) == doctest::Approx(fd).epsilon(1e-7));
    }
  }
}

TEST_CASE("admissibility window and rejections") {
  EquationOfState eos(2.0, 0.5);
  auto [lo, hi] = eos.window();
  CHECK(eos.cs2(hi) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eos.admissible(0.5 * (lo + hi)));
  CHECK_FALSE(eos.admissible(hi + 0.01));
  CHECK_FALSE(eos.admissible(lo - 0.01));
  CHECK_THROWS_AS(eos.check(hi + 0.01), DomainError);
  ClosedForms cf = eos_closed_forms(2.0);
  CHECK(cf.cs(0.0) == doctest::Approx(std::sqrt(0.5)));
  CHECK_THROWS_AS(cf.rho(hi + 0.1), DomainError);
  CHECK_THROWS_AS(EquationOfState(0.5), DomainError);
  CHECK_THROWS_AS(EquationOfState(2.0, 1.5), DomainError);
}

TEST_CASE("velocity lift and constraint") {
  Grid2D g(16, 16);
  CHECK(constant_state(g, 0, 0, 0).v0().max_abs() == 1.0);
  CHECK(constant_state(g, 0, 3, 4).v0()[0] == doctest::Approx(std::sqrt(26.0)).epsilon(1e-15));
  Grid2D big(32, 32);
  FluidState s;
  s.h = random_smooth_field(big, 1, 1.0);
  s.v1 = random_smooth_field(big, 2, 5.0);
  s.v2 = random_smooth_field(big, 3, 5.0);
  // the defect cancels terms of size e^{-2h} v0^2
  double scale = 0;
  {
    Field v0 = s.v0();
    for (std::size_t k = 0; k < v0.size(); ++k) scale = std::max(scale, std::exp(-2 * s.h[k]) * v0[k] * v0[k]);
  }
  CHECK(constraint_defect(s) <= 8 * 2.3e-16 * scale);
  Field v0 = s.v0();
  for (std::size_t k = 0; k < v0.size(); ++k)
    CHECK(min_e2h(s) <= v0[k] * v0[k] - s.v1[k] * s.v1[k] - s.v2[k] * s.v2[k] + 1e-12);
}

TEST_CASE("Theta closed values") {
  EquationOfState eos(2.0, 0.5);
  CHECK(theta_at(0.0, 1.0, eos) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(theta_at(0.0, std::sqrt(26.0), eos) == doctest::Approx(2.0 / 27.0).epsilon(1e-14));
  EquationOfState stiff(1.0);
  CHECK(theta_at(0.7, 9.0, stiff) == 1.0);
}

TEST_CASE("acoustic metric properties on random admissible states") {
  EquationOfState eos(2.0, 0.5);
  CounterRng rng(31);
  for (int n = 0; n < 200; ++n) {
    double h = rng.uniform(-0.4, 0.35), v1 = rng.uniform(-5, 5), v2 = rng.uniform(-5, 5);
    double v0 = std::sqrt(std::exp(2 * h) + v1 * v1 + v2 * v2);
    PointMetric m = metric_at(h, v0, v1, v2, eos);
    CHECK(m.gi[0][0] == -1.0);
    // c_s <= 1 and (v0)^2 >= e^{2h} give 0 < Theta <= 1
    CHECK(m.theta > 0.0);
    CHECK(m.theta <= 1.0 + 1e-15);
    auto e = gvtest::sym_eigenvalues(unpack(m.gc));
    CHECK(e[0] < 0.0);
    CHECK(e[1] > 0.0);
    // gc is the inverse of gi, up to rounding at the scale of the entries
    double gmax = 0, cmax = 0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        gmax = std::max(gmax, std::fabs(m.gi[a][b]));
        cmax = std::max(cmax, std::fabs(m.gc[a][b]));
      }
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        double s = 0;
        for (int c = 0; c < 3; ++c) s += m.gi[a][c] * m.gc[c][b];
        CHECK(std::fabs(s - (a == b)) <= 1e-13 * gmax * cmax);
      }
  }
}

TEST_CASE("metric special cases") {
  SUBCASE("rest background") {
    EquationOfState eos(2.0, 0.5);
    PointMetric m = metric_at(0.0, 1.0, 0.0, 0.0, eos);
    const double c2 = eos.cs2(0.0);
    CHECK(m.gi[1][1] == doctest::Approx(m.theta * c2).epsilon(1e-15));
    CHECK(m.gi[2][2] == doctest::Approx(m.theta * c2).epsilon(1e-15));
    CHECK(m.gi[1][2] == 0.0);
    CHECK(m.gi[0][1] == 0.0);
  }
  SUBCASE("A = 1 is Minkowski") {
    Grid2D g(16, 16);
    FluidState s;
    s.h = random_smooth_field(g, 4, 0.8);
    s.v1 = random_smooth_field(g, 5, 3.0);
    s.v2 = random_smooth_field(g, 6, 3.0);
    AcousticMetric m = acoustic_metric(s, EquationOfState(1.0));
    for (int a = 0; a < 3; ++a)
      for (int b = a; b < 3; ++b)
        for (std::size_t k = 0; k < g.size(); ++k) {
          CHECK(m.ginv[sym(a, b)][k] == minkowski(a, b));
          CHECK(m.gcov[sym(a, b)][k] == minkowski(a, b));
        }
  }
  SUBCASE("continuity as A -> 1 at fixed density") {
    EquationOfState eos(1.0 + 1e-6, 1.0);
    const double h = eos.h_of_rho(0.1);
    REQUIRE(eos.admissible(h));
    const double v1 = 0.6, v2 = -0.3;
    const double v0 = std::sqrt(std::exp(2 * h) + v1 * v1 + v2 * v2);
    PointMetric m = metric_at(h, v0, v1, v2, eos);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) CHECK(std::fabs(m.gi[a][b] - minkowski(a, b)) <= 1e-4);
  }
  SUBCASE("metric fields agree with the pointwise formula") {
    Grid2D g(16, 16);
    EquationOfState eos(2.0, 0.5);
    FluidState s;
    s.h = random_smooth_field(g, 7, 0.2);
    s.v1 = random_smooth_field(g, 8, 1.0);
    s.v2 = random_smooth_field(g, 9, 1.0);
    AcousticMetric m = acoustic_metric(s, eos);
    Field v0 = s.v0(), th = compute_theta(s, eos);
    for (std::size_t k = 0; k < g.size(); ++k) {
      PointMetric p = metric_at(s.h[k], v0[k], s.v1[k], s.v2[k], eos);
      CHECK(m.ginv[sym(1, 2)][k] == p.gi[1][2]);
      CHECK(m.gcov[sym(0, 2)][k] == p.gc[0][2]);
      CHECK(th[k] == p.theta);
    }
  }
}
