#include <doctest.h>

#include "gv/diagnostics.hpp"
#include "gv/norms.hpp"
#include "gv/random_fields.hpp"
#include "gv/scenario.hpp"
#include "gv/spectral.hpp"
#include "gv/vorticity.hpp"
#include "test_util.hpp"

using namespace gv;
using gvtest::kPi;

namespace {

Vec3 zero3(const Grid2D& g) { return {Field(g), Field(g), Field(g)}; }

Mat3F zero33(const Grid2D& g) {
  Mat3F m;
  for (auto& row : m) row = zero3(g);
  return m;
}

Field random(const Grid2D& g, std::uint64_t seed, double amp = 1.0) { return random_smooth_field(g, seed, amp, 3); }

Trajectory steady(const FluidState& s, int n, double dt) {
  Trajectory tr;
  tr.dt = dt;
  for (int k = 0; k < n; ++k) {
    FluidState x = s;
    x.time = k * dt;
    tr.states.push_back(x);
  }
  return tr;
}

}  // namespace

TEST_CASE("energy of the background vanishes") {
  Grid2D g(16, 16);
  EnergyReport r = total_energy(constant_state(g, 0, 0, 0), zero3(g), zero33(g), 1.8, 1.8);
  CHECK(r.E == doctest::Approx(0.0));
}

TEST_CASE("energy parts are homogeneous of degree one") {
  Grid2D g(32, 32);
  FluidState s = constant_state(g, 0, 0, 0);
  s.h = random(g, 1, 0.1);
  Vec3 w = {random(g, 2), random(g, 3), random(g, 4)};
  Mat3F dw = zero33(g);
  for (int c = 0; c < 3; ++c)
    for (int i = 1; i < 3; ++i) dw[c][i] = random(g, 10 + 3 * c + i);
  EnergyReport a = total_energy(s, w, dw, 1.8, 1.8);
  FluidState s2 = s;
  s2.h = 2.5 * s.h;
  Vec3 w2 = w;
  for (auto& f : w2) f = 2.5 * f;
  Mat3F dw2 = dw;
  for (auto& row : dw2)
    for (auto& f : row) f = 2.5 * f;
  EnergyReport b = total_energy(s2, w2, dw2, 1.8, 1.8);
  CHECK(b.parts.h_hs == doctest::Approx(2.5 * a.parts.h_hs).epsilon(1e-13));
  CHECK(b.parts.w_hs == doctest::Approx(2.5 * a.parts.w_hs).epsilon(1e-13));
  CHECK(b.parts.dw_l8 == doctest::Approx(2.5 * a.parts.dw_l8).epsilon(1e-13));
  // v is the lift of zero spatial velocity: only v0 - 1 = e^h - 1 contributes
  CHECK(a.parts.v_hs == doctest::Approx(sobolev_norm(s.v0() - Field(g, 1.0), 1.8)).epsilon(1e-14));
  CHECK(a.E == doctest::Approx(a.parts.h_hs + a.parts.v_hs + a.parts.w_hs + a.parts.dw_l8));
}

TEST_CASE("energy parts against direct oracles") {
  Grid2D g(16, 16);
  FluidState s = constant_state(g, 0, 0, 0);
  Vec3 w = {random(g, 5), Field(g), Field(g)};
  Mat3F dw = zero33(g);
  dw[0][1] = random(g, 6);
  dw[2][2] = random(g, 7);
  dw[1][0] = random(g, 8);  // time derivative: not part of the spatial gradient
  EnergyReport r = total_energy(s, w, dw, 1.8, 1.8);
  double acc = 0;
  for (int a = 0; a < g.nx; ++a)
    for (int b = 0; b < g.ny; ++b) {
      int m1 = gvtest::signed_mode(a, g.nx), m2 = gvtest::signed_mode(b, g.ny);
      acc += std::pow(1.0 + m1 * m1 + m2 * m2, 1.8 - 0.25) * std::norm(gvtest::dft_coefficient(w[0], m1, m2));
    }
  CHECK(r.parts.w_hs == doctest::Approx(2 * kPi * std::sqrt(acc)).epsilon(1e-10));
  double l8 = 0;
  for (std::size_t k = 0; k < g.size(); ++k) l8 += std::pow(dw[0][1][k] * dw[0][1][k] + dw[2][2][k] * dw[2][2][k], 4);
  CHECK(r.parts.dw_l8 == doctest::Approx(std::pow(l8 * g.cell(), 1.0 / 8)).epsilon(1e-12));
}

TEST_CASE("energy exponent window") {
  CHECK_NOTHROW(check_energy_exponents(1.8, 1.8));
  CHECK_THROWS_AS(check_energy_exponents(1.75, 1.75), DomainError);
  CHECK_THROWS_AS(check_energy_exponents(1.9, 1.8), DomainError);
  CHECK_THROWS_AS(check_energy_exponents(1.8, 1.85), DomainError);
}

TEST_CASE("Gronwall audit") {
  EquationOfState eos(2.0, 0.5);
  SUBCASE("constant state: K = 1") {
    GronwallReport r = gronwall_audit(steady(constant_state(Grid2D(16, 16), 0, 0, 0), 6, 0.1), eos, 1.8);
    for (double k : r.K) CHECK(k == 1.0);
    CHECK_FALSE(r.violation);
  }
  SUBCASE("evolved bump stays under the envelope") {
    RunConfig c = build_config({}, {{"scenario", "gaussian-bump"}, {"nx", "32"}});
    Trajectory tr = evolve_preset(c, 32, 0.0, 0);
    GronwallReport r = gronwall_audit(tr, eos, 1.8);
    CHECK(r.K0 == doctest::Approx(1.0));
    CHECK(r.K_max <= 3.0);
    for (std::size_t i = 1; i < r.accum.size(); ++i) CHECK(r.accum[i] >= r.accum[i - 1]);
    auto e = energy_series(tr, eos, 1.8, 1.8);
    REQUIRE(e.size() == std::size_t(tr.size()));
    for (std::size_t i = 1; i < e.size(); ++i) CHECK(e[i].strich_accum >= e[i - 1].strich_accum);
  }
}

TEST_CASE("dyadic Strichartz table") {
  EquationOfState eos(2.0, 0.5);
  SUBCASE("single mode at wavenumber 4 sits in band 2 only") {
    Grid2D g(32, 32);
    FluidState s = constant_state(g, 0, 0, 0);
    for (int i = 0; i < g.nx; ++i)
      for (int j = 0; j < g.ny; ++j) s.h.at(i, j) = 1e-6 * std::sin(4 * g.x1(i));
    StrichartzTable t = dyadic_strichartz_table(steady(s, 6, 0.1), eos);
    double top = 0;
    for (const auto& r : t.rows) top = std::max(top, r.dh);
    for (const auto& r : t.rows) {
      // zeta(|xi| / 2^j) is 1 at |xi| = 2^j and 0 at the neighbouring centres
      if (r.j == 2)
        CHECK(r.dh == top);
      else
        CHECK(r.dh <= 1e-5 * top);
    }
  }
  SUBCASE("evolved bump: positive tail decay") {
    RunConfig c = build_config({}, {{"scenario", "gaussian-bump"}, {"nx", "64"}, {"T", "0.5"}});
    Trajectory tr = evolve_preset(c, 64, 0.0, 0);
    StrichartzTable t = dyadic_strichartz_table(tr, eos, 2);
    MESSAGE("beta_v " << t.beta_v << ", beta_h " << t.beta_h);
    CHECK(t.beta_v > 0.0);
    CHECK(t.beta_h > 0.0);
    double sv = 0;
    for (const auto& r : t.rows) sv += r.dv;
    CHECK(sv >= t.dv_total * (1 - 1e-12));
  }
  CHECK(fit_slope({0, 1, 2, 3}, {1, -1, -3, -5}) == doctest::Approx(-2.0));
}

TEST_CASE("cascade schedule") {
  Grid2D g(64, 64);
  EquationOfState eos(2.0, 0.5);
  const double d1 = (1.8 - 1.75) / 10;
  for (int j = 0; j < 6; ++j)
    CHECK(cascade_time(j + 1, 2.0, d1, 1.0) / cascade_time(j, 2.0, d1, 1.0) ==
          doctest::Approx(std::exp2(-d1)).epsilon(1e-15));
  CHECK(cascade_time(0, 2.0, d1, 0.5) == doctest::Approx(1.0));

  FluidState data = preset_state("vortex", g, 0.1, eos);
  data.h = random_power_law_field(g, 2, 0.05, 2.5, 20);
  CascadeSchedule cs = cascade_prepare(data, eos, 1.0, d1, 20, 1.0, 1.8);
  CHECK(cs.jmax_used < 20);
  CHECK_FALSE(cs.warnings.empty());
  CHECK(cs.bernstein_max <= 1.0);
  // spectral support grows monotonically
  for (std::size_t i = 0; i + 1 < cs.entries.size(); ++i) {
    Spectrum a = fft(cs.entries[i].data.h), b = fft(cs.entries[i + 1].data.h);
    for (std::size_t k = 0; k < a.size(); ++k)
      if (std::abs(a[k]) > 1e-15) CHECK(std::abs(b[k]) > 0.0);
  }
  CHECK(l2_norm(cs.entries.back().w) > 0.0);
  CHECK_THROWS_AS(cascade_prepare(data, eos, 1.0, 0.01, 5), DomainError);
  CHECK_THROWS_AS(cascade_prepare(data, eos, -1.0, d1, 5), DomainError);
}
