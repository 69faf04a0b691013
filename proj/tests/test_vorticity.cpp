#include <doctest.h>

#include "gv/random_fields.hpp"
#include "gv/scenario.hpp"
#include "gv/vorticity.hpp"
#include "test_util.hpp"

using namespace gv;

namespace {

Field fd4(const Field& f, int axis) {
  const Grid2D& g = f.grid();
  Field d(g);
  const double h = axis == 1 ? g.dx() : g.dy();
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      auto at = [&](int m) {
        return axis == 1 ? f.at((i + m + g.nx) % g.nx, j) : f.at(i, (j + m + g.ny) % g.ny);
      };
      d.at(i, j) = (8 * (at(1) - at(-1)) - (at(2) - at(-2))) / (12 * h);
    }
  return d;
}

Field dt4(const Trajectory& tr, int n, const std::function<Field(const FluidState&)>& q) {
  return (8.0 * (q(tr[n + 1]) - q(tr[n - 1])) - (q(tr[n + 2]) - q(tr[n - 2]))) * (1.0 / (12 * tr.dt));
}

Trajectory vortex_run(int nx, int steps, double dt) {
  Grid2D g(nx, nx);
  EquationOfState eos(2.0, 0.5);
  FluidState s0 = preset_state("vortex", g, 0.1, eos);
  s0.h = 0.05 * periodic_gaussian(g, 0.9);
  return evolve(s0, steps * dt, eos, {}, steps);
}

Field random(const Grid2D& g, std::uint64_t seed) { return random_smooth_field(g, seed, 1.0, 3); }

}  // namespace

TEST_CASE("contraction identity table") {
  ContractionReport ok = check_contraction(LeviCivita());
  CHECK(ok.checked == 18);
  CHECK(ok.mismatches == 0);
  CHECK(check_contraction(LeviCivita(true)).mismatches > 0);
  CHECK(LeviCivita::up(0, 1, 2) == 1);
  CHECK(LeviCivita::up(1, 0, 2) == -1);
  CHECK(LeviCivita::up(2, 0, 1) == 1);
  CHECK(LeviCivita::up(1, 1, 2) == 0);
}

TEST_CASE("constant state has no vorticity and trivial identities") {
  Grid2D g(16, 16);
  Trajectory tr;
  tr.dt = 0.1;
  for (int n = 0; n < 9; ++n) {
    FluidState s = constant_state(g, 0.1, 0.3, -0.2);
    s.time = n * tr.dt;
    tr.states.push_back(s);
  }
  Series s(tr);
  VorticitySeries vs(s, EquationOfState(2.0, 0.5));
  CHECK(l2_norm(vs.w(4)) <= 1e-14);
  CHECK(l2_norm(transport_residual_w(vs, 4)) <= 1e-14);
  HodgeReport h = hodge_identity_checks(vs, 4, LeviCivita());
  CHECK(h.div_recon_l2 <= 1e-14);
  CHECK(h.grad_recon_l2 <= 1e-14);
  CHECK_THROWS_AS(vs.w(1), DomainError);
}

TEST_CASE("vorticity matches an explicit expansion with finite differences") {
  double err[2];
  int idx = 0;
  for (int n : {32, 64}) {
    Trajectory tr = random_trajectory(Grid2D(n, n), 5, 0.02, 8, 0.2, 3);
    Series s(tr);
    Vec3 w = vorticity_from(s.kinematics(2, false));
    auto v1 = [](const FluidState& x) { return x.v1; };
    auto v2 = [](const FluidState& x) { return x.v2; };
    const FluidState& c = tr[2];
    // lowered v_0 = -v^0
    Field w0 = fd4(c.v2, 1) - fd4(c.v1, 2);
    Field w1 = (-1.0) * fd4(c.v0(), 2) - dt4(tr, 2, v2);
    Field w2 = dt4(tr, 2, v1) + fd4(c.v0(), 1);
    err[idx++] = std::max({max_diff(w[0], w0), max_diff(w[1], w1), max_diff(w[2], w2)});
  }
  MESSAGE("vorticity vs expansion: " << err[0] << ", " << err[1]);
  CHECK(err[0] / err[1] >= 12.0);
  CHECK(err[1] <= 1e-4);
}

TEST_CASE("modified vorticity against the term-by-term expansion") {
  Grid2D g(32, 32);
  EquationOfState eos(2.0, 0.5);
  Field h = 0.1 * random(g, 1);
  Vec3 dh{random(g, 2), random(g, 3), random(g, 4)};
  Vec3 w{random(g, 5), random(g, 6), random(g, 7)};
  Mat3F dw;
  for (int c = 0; c < 3; ++c)
    for (int b = 0; b < 3; ++b) dw[c][b] = random(g, 10 + 3 * c + b);
  Vec3 W = compute_W(h, dh, w, dw, eos);
  Field coef(g);
  for (std::size_t k = 0; k < g.size(); ++k) coef[k] = 1.0 - 1.0 / eos.cs2(h[k]);
  Field W0 = dw[2][1] - dw[1][2] + coef * (w[2] * dh[1] - w[1] * dh[2]);
  Field W1 = (-1.0) * dw[0][2] - dw[2][0] + coef * ((-1.0) * w[0] * dh[2] - w[2] * dh[0]);
  Field W2 = dw[1][0] + dw[0][1] + coef * (w[1] * dh[0] + w[0] * dh[1]);
  CHECK(max_diff(W[0], W0) <= 1e-10);
  CHECK(max_diff(W[1], W1) <= 1e-10);
  CHECK(max_diff(W[2], W2) <= 1e-10);

  SUBCASE("stiff case is the pure curl") {
    Vec3 Ws = compute_W(h, dh, w, dw, EquationOfState(1.0));
    Vec3 curl = curl_of(dw);
    for (int a = 0; a < 3; ++a) CHECK(max_diff(Ws[a], curl[a]) == 0.0);
  }
  SUBCASE("zero vorticity gives zero W") {
    Vec3 z{Field(g), Field(g), Field(g)};
    Mat3F dz;
    for (auto& row : dz)
      for (auto& f : row) f = Field(g);
    CHECK(l2_norm(compute_W(h, dh, z, dz, eos)) == 0.0);
  }
}

TEST_CASE("divergence of w vanishes on an evolved trajectory") {
  Trajectory tr = vortex_run(64, 12, cfl_dt(Grid2D(64, 64)));
  Series s(tr);
  VorticitySeries vs(s, EquationOfState(2.0, 0.5));
  double d = l2_norm(vs.div_w(6)), w = l2_norm(vs.w(6));
  MESSAGE("div w " << d << ", w " << w);
  CHECK(w > 1e-3);
  CHECK(d <= 1e-11);
}

TEST_CASE("transport residuals self-converge on solutions and not on random fields") {
  const double dt = cfl_dt(Grid2D(32, 32));
  Trajectory a = vortex_run(32, 14, dt), b = vortex_run(64, 28, dt / 2);
  Series sa(a), sb(b);
  EquationOfState eos(2.0, 0.5);
  VorticitySeries va(sa, eos), vb(sb, eos);
  double rw[2] = {l2_norm(transport_residual_w(va, 7)), l2_norm(transport_residual_w(vb, 14))};
  double rW[2] = {l2_norm(transport_residual_W(va, 7)), l2_norm(transport_residual_W(vb, 14))};
  MESSAGE("w residual " << rw[0] << " -> " << rw[1] << ", W residual " << rW[0] << " -> " << rW[1]);
  CHECK(rw[0] / rw[1] >= 8.0);
  CHECK(rW[0] / rW[1] >= 8.0);

  Trajectory r = random_trajectory(Grid2D(32, 32), 9, 0.02, 4, 0.2, 3);
  Series sr(r);
  VorticitySeries vr(sr, eos);
  Kinematics k = sr.kinematics(4, false);
  double scale = 0;
  for (int a2 = 0; a2 < 3; ++a2) {
    Field t(k.grid());
    for (int q = 0; q < 3; ++q) t += k.v[q] * vr.dw(4)[a2][q];
    scale += std::pow(l2_norm(t), 2);
  }
  CHECK(l2_norm(transport_residual_w(vr, 4)) >= 0.1 * std::sqrt(scale));
}

TEST_CASE("hodge reconstructions on an evolved slice") {
  Trajectory tr = vortex_run(64, 12, cfl_dt(Grid2D(64, 64)));
  Series s(tr);
  VorticitySeries vs(s, EquationOfState(2.0, 0.5));
  HodgeReport h = hodge_identity_checks(vs, 6, LeviCivita());
  MESSAGE("reconstructions " << h.div_recon_l2 << ", " << h.grad_recon_l2 << " with |w| " << h.w_l2);
  CHECK(h.contraction.ok());
  CHECK(h.div_recon_l2 <= 1e-6);
  CHECK(h.grad_recon_l2 <= 1e-6);
  CHECK_FALSE(hodge_identity_checks(vs, 6, LeviCivita(true)).contraction.ok());
}
