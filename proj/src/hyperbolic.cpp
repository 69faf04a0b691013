#include "gv/hyperbolic.hpp"

#include <cmath>
#include <string>

#include "gv/simd.hpp"
#include "gv/spectral.hpp"

namespace gv {

SymmetricSystemPoint assemble_point(double h, double v1, double v2, const EquationOfState& eos) {
  const double c2 = eos.cs2(h);
  if (!(c2 > 0)) throw DomainError("sound speed vanishes");
  const double eh = std::exp(-h);
  const double u[3] = {0.0, eh * v1, eh * v2};
  const double u0 = std::sqrt(1.0 + u[1] * u[1] + u[2] * u[2]);
  const double E = eos.rho(h) + eos.p(h);
  const double rp = 1.0 / c2;
  SymmetricSystemPoint m;
  auto fill = [&](Mat3& A, double vc, int i) {
    A[0][0] = rp * vc / (E * E);
    for (int k = 1; k < 3; ++k) {
      double c = (i == 0) ? u[k] / (u0 * E) : (i == k ? 1.0 / E : 0.0);
      A[0][k] = A[k][0] = c;
    }
    for (int j = 1; j < 3; ++j)
      for (int k = 1; k < 3; ++k) A[j][k] = vc * ((j == k ? 1.0 : 0.0) - u[j] * u[k] / (u0 * u0));
  };
  fill(m.A0, u0, 0);
  fill(m.A1, u[1], 1);
  fill(m.A2, u[2], 2);
  return m;
}

std::vector<SymmetricSystemPoint> assemble_matrices(const FluidState& s, const EquationOfState& eos) {
  std::vector<SymmetricSystemPoint> out(s.h.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = assemble_point(s.h[k], s.v1[k], s.v2[k], eos);
  return out;
}

Evolved to_evolved(const FluidState& s, const EquationOfState& eos) {
  const Grid2D& g = s.grid();
  Evolved U{Field(g), Field(g), Field(g)};
  for (std::size_t k = 0; k < s.h.size(); ++k) {
    double eh = std::exp(-s.h[k]);
    U.p[k] = eos.p(s.h[k]);
    U.u1[k] = eh * s.v1[k];
    U.u2[k] = eh * s.v2[k];
  }
  return U;
}

FluidState from_evolved(const Evolved& U, const EquationOfState& eos, double time) {
  const Grid2D& g = U.p.grid();
  FluidState s{Field(g), Field(g), Field(g), time};
  for (std::size_t k = 0; k < U.p.size(); ++k) {
    if (!(U.p[k] > 0) || !std::isfinite(U.p[k])) throw BlowUp("non-positive or non-finite pressure", time);
    double h = eos.h_of_p(U.p[k]);
    if (!eos.admissible(h)) throw BlowUp("state left the hyperbolicity window", time);
    double eh = std::exp(h);
    s.h[k] = h;
    s.v1[k] = eh * U.u1[k];
    s.v2[k] = eh * U.u2[k];
  }
  return s;
}

std::array<Field, 3> rhs(const FluidState& s, const EquationOfState& eos, const EvolutionOptions& opt) {
  const Grid2D& g = s.grid();
  Evolved U = to_evolved(s, eos);
  const Field* comp[3] = {&U.p, &U.u1, &U.u2};
  std::array<Field, 3> d1, d2;
  for (int c = 0; c < 3; ++c) {
    Spectrum sp = fft(*comp[c]);
    d1[c] = derivative_from_spectrum(sp, g, 1);
    d2[c] = derivative_from_spectrum(sp, g, 2);
  }
  std::array<Field, 3> out{Field(g), Field(g), Field(g)};
  for (std::size_t k = 0; k < s.h.size(); ++k) {
    SymmetricSystemPoint m = assemble_point(s.h[k], s.v1[k], s.v2[k], eos);
    double r[3];
    for (int a = 0; a < 3; ++a) {
      r[a] = 0.0;
      for (int b = 0; b < 3; ++b) r[a] -= m.A1[a][b] * d1[b][k] + m.A2[a][b] * d2[b][k];
    }
    double A0[3][3], inv[3][3];
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) A0[a][b] = m.A0[a][b];
    if (!invert3(A0, inv)) throw DomainError("A0 is singular");
    for (int a = 0; a < 3; ++a) out[a][k] = inv[a][0] * r[0] + inv[a][1] * r[1] + inv[a][2] * r[2];
  }
  for (auto& f : out) {
    Spectrum sp = fft(f);
    dealias(sp, g);
    if (opt.filter) exp_filter(sp, g, opt.filter_order, opt.filter_amp);
    f = ifft(sp, g);
  }
  return out;
}

std::array<Field, 3> state_rate(const FluidState& s, const EquationOfState& eos, const EvolutionOptions& opt) {
  auto r = rhs(s, eos, opt);
  const Grid2D& g = s.grid();
  std::array<Field, 3> out{Field(g), Field(g), Field(g)};
  for (std::size_t k = 0; k < s.h.size(); ++k) {
    double h = s.h[k];
    // dp/dh = rho + p
    double ht = r[0][k] / (eos.rho(h) + eos.p(h));
    double eh = std::exp(h);
    out[0][k] = ht;
    out[1][k] = eh * r[1][k] + s.v1[k] * ht;
    out[2][k] = eh * r[2][k] + s.v2[k] * ht;
  }
  return out;
}

namespace {

Evolved axpy(const Evolved& U, double a, const std::array<Field, 3>& k) {
  return {lincomb(1.0, U.p, a, k[0]), lincomb(1.0, U.u1, a, k[1]), lincomb(1.0, U.u2, a, k[2])};
}

}  // namespace

FluidState step_rk4(const FluidState& s, double dt, const EquationOfState& eos, const EvolutionOptions& opt) {
  Evolved U0 = to_evolved(s, eos);
  auto k1 = rhs(s, eos, opt);
  FluidState s1 = from_evolved(axpy(U0, 0.5 * dt, k1), eos, s.time + 0.5 * dt);
  auto k2 = rhs(s1, eos, opt);
  FluidState s2 = from_evolved(axpy(U0, 0.5 * dt, k2), eos, s.time + 0.5 * dt);
  auto k3 = rhs(s2, eos, opt);
  FluidState s3 = from_evolved(axpy(U0, dt, k3), eos, s.time + dt);
  auto k4 = rhs(s3, eos, opt);
  const auto& K = simd::kernels();
  Evolved U = U0;
  Field* dst[3] = {&U.p, &U.u1, &U.u2};
  for (int c = 0; c < 3; ++c) {
    Field acc = lincomb(1.0, k1[c], 2.0, k2[c]);
    K.lincomb(acc.data(), 1.0, acc.data(), 2.0, k3[c].data(), acc.size());
    K.lincomb(acc.data(), 1.0, acc.data(), 1.0, k4[c].data(), acc.size());
    K.lincomb(dst[c]->data(), 1.0, dst[c]->data(), dt / 6.0, acc.data(), acc.size());
  }
  return from_evolved(U, eos, s.time + dt);
}

double cfl_dt(const Grid2D& g, double cfl) { return cfl * std::min(g.dx(), g.dy()); }

Trajectory evolve(const FluidState& s0, double T, const EquationOfState& eos, const EvolutionOptions& opt,
                  int n_steps, const Observer& observer, Trajectory* partial) {
  const double dmax = cfl_dt(s0.grid(), opt.cfl);
  if (n_steps <= 0) n_steps = std::max(1, int(std::ceil(std::fabs(T) / dmax - 1e-12)));
  const double dt = T / n_steps;
  if (std::fabs(dt) > dmax * (1 + 1e-12)) throw DomainError("time step exceeds the CFL bound");
  for (std::size_t k = 0; k < s0.h.size(); ++k) eos.check(s0.h[k]);
  Trajectory tr;
  tr.dt = dt;
  tr.states.reserve(n_steps + 1);
  tr.states.push_back(s0);
  auto finish = [&](const BlowUp& e) {
    if (partial) *partial = tr;
    throw e;
  };
  if (observer && !observer(0, s0.time, s0)) return tr;
  for (int n = 1; n <= n_steps; ++n) {
    FluidState next;
    try {
      next = step_rk4(tr.states.back(), dt, eos, opt);
      if (!next.h.all_finite() || !next.v1.all_finite() || !next.v2.all_finite())
        throw BlowUp("non-finite state", next.time);
      if (min_e2h(next) < opt.min_e2h) throw BlowUp("admissibility guard e^{2h} >= min_e2h violated", next.time);
    } catch (const BlowUp& e) {
      finish(e);
    }
    next.time = s0.time + n * dt;
    tr.states.push_back(std::move(next));
    if (observer && !observer(n, tr.states.back().time, tr.states.back())) break;
  }
  return tr;
}

}  // namespace gv
