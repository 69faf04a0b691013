#include "gv/verify.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "gv/geometry.hpp"
#include "gv/norms.hpp"
#include "gv/random_fields.hpp"
#include "gv/scenario.hpp"
#include "gv/spectral.hpp"
#include "gv/wave.hpp"

namespace gv {

namespace {

CheckResult make(const std::string& name) {
  CheckResult r;
  r.name = name;
  return r;
}

CheckResult skipped(const std::string& name, const std::string& why) {
  CheckResult r = make(name);
  r.passed = true;
  r.skipped = true;
  r.detail = why;
  return r;
}

int central_slice(const Trajectory& tr) { return tr.size() / 2; }

std::string fmt(double x) {
  std::ostringstream o;
  o.precision(3);
  o << x;
  return o.str();
}

}  // namespace

CheckResult check_constraint(const Trajectory& tr, double tol) {
  CheckResult r = make("constraint");
  double worst = 0;
  for (const auto& s : tr.states) worst = std::max(worst, constraint_defect(s));
  r.passed = worst <= tol;
  r.set("max_defect", worst).set("tol", tol).set("slices", tr.size());
  r.detail = "max |e^{-2h} v.v + 1| = " + fmt(worst);
  return r;
}

CheckResult check_energy(const std::vector<EnergyReport>& series) {
  CheckResult r = make("energy");
  bool ok = !series.empty();
  double worst = 0, prev = 0;
  bool mono = true;
  for (const auto& e : series) {
    const auto& p = e.parts;
    double sum = p.h_hs + p.v_hs + p.w_hs + p.dw_l8;
    ok = ok && std::isfinite(e.E) && p.h_hs >= 0 && p.v_hs >= 0 && p.w_hs >= 0 && p.dw_l8 >= 0;
    worst = std::max(worst, std::fabs(e.E - sum));
    if (e.strich_accum < prev) mono = false;
    prev = e.strich_accum;
  }
  r.passed = ok && mono && worst <= 1e-14 * std::max(1.0, series.empty() ? 0.0 : series.back().E);
  r.set("E_initial", series.empty() ? 0.0 : series.front().E)
      .set("E_final", series.empty() ? 0.0 : series.back().E)
      .set("sum_defect", worst)
      .set("strich_accum", prev);
  r.detail = mono ? "parts non-negative, accumulator nondecreasing" : "accumulator decreased";
  return r;
}

CheckResult check_gronwall(const GronwallReport& g) {
  CheckResult r = make("gronwall");
  r.passed = !g.violation && std::isfinite(g.K_max);
  r.set("a", g.a).set("K0", g.K0).set("K_max", g.K_max).set("factor", g.factor);
  r.detail = "max K = " + fmt(g.K_max) + " against " + fmt(g.factor) + " K(0)";
  return r;
}

CheckResult check_minors(const Trajectory& tr, double tol) {
  CheckResult r = make("minors");
  double p1 = INFINITY, p2 = INFINITY, p3 = 0;
  for (const auto& s : tr.states) {
    EllipticMinors m = ellipticity_minors(s);
    for (std::size_t k = 0; k < m.p1.size(); ++k) {
      p1 = std::min(p1, m.p1[k]);
      p2 = std::min(p2, m.p2[k]);
      p3 = std::max(p3, std::fabs(m.p3[k] - 1.0));
    }
  }
  r.passed = p1 >= 1 - tol && p2 >= 1 - tol && p3 <= tol;
  r.set("min_p1", p1).set("min_p2", p2).set("max_p3_defect", p3);
  r.detail = "min p1 " + fmt(p1) + ", min p2 " + fmt(p2) + ", max |p3 - 1| " + fmt(p3);
  return r;
}

CheckResult check_ellipticity_certificate(int count, std::uint64_t seed, double hmax, double vmax, double tol) {
  CheckResult r = make("ellipticity-certificate");
  auto t0 = std::chrono::steady_clock::now();
  CounterRng rng(seed);
  double p1 = INFINITY, p2 = INFINITY, p3 = 0, oracle = 0;
  for (int i = 0; i < count; ++i) {
    RandomPoint pt = random_point(rng, hmax, vmax);
    Minors m = minors_at(pt.h, pt.v1, pt.v2);
    p1 = std::min(p1, m.p1);
    p2 = std::min(p2, m.p2);
    p3 = std::max(p3, std::fabs(m.p3 - 1.0));
    // explicit matrix P = m + 2 e^{-2h} v v and its leading minors
    const double e = std::exp(-2.0 * pt.h);
    const double v[3] = {std::sqrt(std::exp(2.0 * pt.h) + pt.v1 * pt.v1 + pt.v2 * pt.v2), pt.v1, pt.v2};
    long double P[3][3];
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) P[a][b] = minkowski(a, b) + 2.0L * e * v[a] * v[b];
    long double d1 = P[0][0];
    long double d2 = P[0][0] * P[1][1] - P[0][1] * P[1][0];
    long double d3 = P[0][0] * (P[1][1] * P[2][2] - P[1][2] * P[2][1]) -
                     P[0][1] * (P[1][0] * P[2][2] - P[1][2] * P[2][0]) +
                     P[0][2] * (P[1][0] * P[2][1] - P[1][1] * P[2][0]);
    long double scale = P[0][0] * P[0][0] * P[0][0];
    oracle = std::max({oracle, double(std::fabs(d1 - m.p1) / P[0][0]),
                       double(std::fabs(d2 - m.p2) / (P[0][0] * P[0][0])), double(std::fabs(d3 - m.p3) / scale)});
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.passed = p1 >= 1.0 && p2 >= 1.0 && p3 <= tol && oracle <= 1e-12 && secs < 1.0;
  r.set("count", count).set("min_p1", p1).set("min_p2", p2).set("max_p3_defect", p3).set("oracle_rel", oracle);
  r.set("seconds", secs);
  r.detail = "min p1 " + fmt(p1) + ", min p2 " + fmt(p2) + ", max |p3 - 1| " + fmt(p3) + ", oracle " + fmt(oracle);
  return r;
}

CheckResult check_hodge(const Trajectory& tr, const EquationOfState& eos, bool flipped) {
  const std::string name = flipped ? "hodge (flipped eps)" : "hodge";
  const int n = central_slice(tr);
  if (n < 4 || n + 4 >= tr.size()) return skipped(name, "trajectory too short (needs 9 slices)");
  Series s(tr);
  VorticitySeries vs(s, eos);
  LeviCivita eps(flipped);
  HodgeReport h = hodge_identity_checks(vs, n, eps);
  CheckResult r = make(name);
  // reconstructions hold up to the time discretization; scale by |w| and a floor
  const double tol = 1e-6 + 1e-3 * h.w_l2;
  r.passed = h.contraction.ok() && h.div_recon_l2 <= tol && h.grad_recon_l2 <= tol;
  r.set("contraction_mismatches", h.contraction.mismatches)
      .set("div_recon_l2", h.div_recon_l2)
      .set("grad_recon_l2", h.grad_recon_l2)
      .set("w_l2", h.w_l2)
      .set("tol", tol);
  r.detail = std::to_string(h.contraction.mismatches) + " contraction mismatches, reconstruction residuals " +
             fmt(h.div_recon_l2) + ", " + fmt(h.grad_recon_l2);
  return r;
}

CheckResult check_divergence_free(const Trajectory& tr, const EquationOfState& eos, double tol) {
  const int n = central_slice(tr);
  if (n < 4 || n + 4 >= tr.size()) return skipped("div-w", "trajectory too short (needs 9 slices)");
  Series s(tr);
  VorticitySeries vs(s, eos);
  double w = l2_norm(vs.w(n)), d = l2_norm(vs.div_w(n));
  // irrotational data: w is time-stencil truncation error, the ratio would compare noise with noise
  const FluidState& c = tr[n];
  double grad = 0;
  for (const Field* f : {&c.v1, &c.v2})
    for (int a = 1; a <= 2; ++a) grad = std::max(grad, l2_norm(spectral_derivative(*f, a)));
  if (w < 1e-10 || w < 1e-6 * grad) {
    CheckResult r = skipped("div-w", "vorticity at truncation level (" + fmt(w) + " vs |dv| " + fmt(grad) + ")");
    r.set("w_l2", w).set("div_l2", d).set("grad_v_l2", grad);
    return r;
  }
  CheckResult r = make("div-w");
  r.passed = d / w <= tol;
  r.set("ratio", d / w).set("w_l2", w).set("div_l2", d).set("tol", tol);
  r.detail = "||d_a w^a|| / ||w|| = " + fmt(d / w);
  return r;
}

CheckResult check_stiff(const Trajectory& tr, const EquationOfState& eos, bool irrotational) {
  if (!eos.stiff()) return skipped("stiff", "requires A = 1");
  const int n = central_slice(tr);
  if (n < 2 || n + 2 >= tr.size()) return skipped("stiff", "trajectory too short");
  Series s(tr);
  StiffReport st = stiff_checks(s, n, eos);
  CheckResult r = make("stiff");
  Kinematics k = s.kinematics(n, true);
  double lap = 0;
  for (int a = 0; a < 3; ++a) {
    double x = l2_norm(k.d2v[a][1][1] + k.d2v[a][2][2]);
    lap += x * x;
  }
  lap = std::sqrt(lap);
  const double box_rel = lap > 0 ? st.boxv_l2 / lap : st.boxv_l2;
  r.passed = st.D_agreement <= 1e-10 && st.Q_max <= 1e-12 && st.metric_minkowski;
  if (irrotational) r.passed = r.passed && box_rel <= 1e-4;
  r.set("D_agreement", st.D_agreement)
      .set("Q_max", st.Q_max)
      .set("metric_minkowski", st.metric_minkowski)
      .set("boxv_l2", st.boxv_l2)
      .set("boxv_relative", box_rel)
      .set("divv_l2", st.divv_l2)
      .set("w_l2", st.w_l2);
  r.detail = "D agreement " + fmt(st.D_agreement) + ", max |Q| " + fmt(st.Q_max) +
             (st.metric_minkowski ? ", metric Minkowski" : ", metric NOT Minkowski") +
             (irrotational ? ", ||box v|| / ||lap v|| " + fmt(box_rel) : "");
  return r;
}

CheckResult check_frame(const Trajectory& tr, const EquationOfState& eos, double r0, double tol) {
  CheckResult r = make("frame");
  if (tr.size() < 3) return skipped("frame", "trajectory too short");
  double gram = 0, nulld = 0, chi = 0, audit = 0;
  int folios = 0;
  for (int axis : {1, 2})
    for (int sign : {1, -1}) {
      Direction d{axis, sign};
      NullFoliation f = evolve_foliation(tr, eos, d, r0);
      NullFrame fr = build_null_frame(tr, eos, f);
      gram = std::max(gram, fr.gram_defect);
      nulld = std::max(nulld, f.null_defect);
      ChiReport c = connection_chi(tr, eos, f, fr);
      chi = std::max(chi, c.chi_max);
      for (std::size_t i = 0; i < c.audit_l2.size(); ++i)
        if (c.audit_scale[i] > 0) audit = std::max(audit, c.audit_l2[i] / c.audit_scale[i]);
      ++folios;
    }
  r.passed = gram <= tol && nulld <= tol;
  r.set("foliations", folios).set("gram_defect", gram).set("null_defect", nulld).set("chi_max", chi);
  r.set("chi_audit_relative", audit);
  r.detail = "Gram defect " + fmt(gram) + ", null defect " + fmt(nulld) + ", chi audit (reported) " + fmt(audit);
  return r;
}

CheckResult check_plane_speeds(double c0sq, double tol) {
  CheckResult r = make("plane-speeds");
  Grid2D g(16, 16);
  const double r0 = 2.0;
  // A = 1: any state gives the Minkowski metric
  EquationOfState stiff(1.0);
  Trajectory a = random_trajectory(g, 9, 0.05, 11, 0.2);
  double dev1 = 0;
  for (int axis : {1, 2})
    for (int sign : {1, -1}) {
      NullFoliation f = evolve_foliation(a, stiff, Direction{axis, sign}, r0);
      for (std::size_t k = 0; k < f.t.size(); ++k)
        for (std::size_t j = 0; j < f.phi[k].size(); ++j) {
          dev1 = std::max(dev1, std::fabs(f.phi_t[k][j] - 1.0));
          dev1 = std::max(dev1, std::fabs(f.phi[k][j] - (r0 + f.t[k])));
        }
    }
  // rest background with c_s(0)^2 = c0sq
  EquationOfState eos(2.0, c0sq);
  Trajectory b;
  b.dt = 0.05;
  for (int n = 0; n < 9; ++n) {
    FluidState s = constant_state(g, 0.0, 0.0, 0.0);
    s.time = n * b.dt;
    b.states.push_back(s);
  }
  const double c = eos.cs(0.0);
  double dev2 = 0, gram = 0;
  for (int axis : {1, 2})
    for (int sign : {1, -1}) {
      NullFoliation f = evolve_foliation(b, eos, Direction{axis, sign}, r0);
      for (std::size_t k = 0; k < f.t.size(); ++k)
        for (double v : f.phi_t[k]) dev2 = std::max(dev2, std::fabs(v - c));
      gram = std::max(gram, build_null_frame(b, eos, f).gram_defect);
    }
  r.passed = dev1 <= 1e-12 && dev2 <= tol && gram <= 1e-8;
  r.set("minkowski_deviation", dev1).set("background_speed", c).set("background_deviation", dev2);
  r.set("background_gram", gram);
  r.detail = "Minkowski plane deviation " + fmt(dev1) + ", speed " + fmt(c) + " deviation " + fmt(dev2);
  return r;
}

CheckResult check_phase_speed(const Trajectory& tr, const EquationOfState& eos, double tol) {
  CheckResult r = make("phase-speed");
  const Grid2D& g = tr.grid();
  Spectrum a = fft(tr[0].h), b = fft(tr[tr.size() - 1].h);
  const std::size_t idx = std::size_t(1) * g.nyc();
  const double T = tr.time(tr.size() - 1) - tr.time(0);
  if (std::abs(a[idx]) == 0 || T <= 0) return skipped("phase-speed", "no (1,0) mode");
  const double k = kTwoPi / g.lx;
  const double dphase = std::arg(b[idx] / a[idx]);
  const double speed = -dphase / (k * T), c = eos.cs(0.0);
  r.passed = std::fabs(speed - c) <= tol * c;
  r.set("speed", speed).set("cs0", c).set("relative_error", std::fabs(speed - c) / c);
  r.detail = "phase speed " + fmt(speed) + " against c_s(0) = " + fmt(c);
  return r;
}

CheckResult check_strichartz(const Trajectory& tr, const EquationOfState& eos, int stride) {
  CheckResult r = make("strichartz");
  StrichartzTable t = dyadic_strichartz_table(tr, eos, stride);
  double sv = 0, sh = 0;
  bool finite = true;
  for (const auto& row : t.rows) {
    sv += row.dv;
    sh += row.dh;
    finite = finite && std::isfinite(row.dv) && std::isfinite(row.dh);
  }
  r.passed = finite && sv >= t.dv_total * (1 - 1e-12) && sh >= t.dh_total * (1 - 1e-12);
  r.set("bands", t.rows.size()).set("beta_v", t.beta_v).set("beta_h", t.beta_h);
  r.set("dv_total", t.dv_total).set("dv_band_sum", sv).set("dh_total", t.dh_total).set("dh_band_sum", sh);
  r.detail = "tail exponents beta_v " + fmt(t.beta_v) + ", beta_h " + fmt(t.beta_h) + " (reported)";
  return r;
}

CheckResult check_elliptic_oracle(double tol) {
  CheckResult r = make("elliptic-oracle");
  Grid2D g(16, 16);
  const int nt = 16;
  const double dt = 0.1;
  const double h = 0.2, v1 = 0.5, v2 = -0.3;
  const double e = std::exp(-2.0 * h);
  const double v[3] = {std::sqrt(std::exp(2.0 * h) + v1 * v1 + v2 * v2), v1, v2};
  std::array<double, 6> P;
  for (int a = 0; a < 3; ++a)
    for (int b = a; b < 3; ++b) P[sym(a, b)] = minkowski(a, b) + 2.0 * e * v[a] * v[b];
  SlabOperator op(constant_coefficients(g, nt, dt, P), TimeScheme::Spectral);
  const double tau = kTwoPi * 3 / (nt * dt), xi1 = 2.0, xi2 = -1.0;
  const double zeta[3] = {tau, xi1, xi2};
  double symbol = 1.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) symbol += P[sym(a, b)] * zeta[a] * zeta[b];
  std::vector<double> rhs(op.size()), exact(op.size()), x(op.size(), 0.0);
  for (int k = 0; k < nt; ++k)
    for (int i = 0; i < g.nx; ++i)
      for (int j = 0; j < g.ny; ++j) {
        const std::size_t idx = (std::size_t(k) * g.nx + i) * g.ny + j;
        rhs[idx] = std::cos(tau * k * dt + xi1 * g.x1(i) + xi2 * g.x2(j));
        exact[idx] = rhs[idx] / symbol;
      }
  SolverOptions opt;
  opt.tol = 1e-13;
  opt.scheme = TimeScheme::Spectral;
  SolverDiagnostics d = gmres_solve(op, rhs, x, opt);
  double err = 0, mx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    err = std::max(err, std::fabs(x[i] - exact[i]));
    mx = std::max(mx, std::fabs(exact[i]));
  }
  r.passed = err <= tol * mx && d.converged;
  r.set("max_error_relative", err / mx).set("symbol", symbol).set("iterations", d.iterations);
  r.set("symbol_min", op.symbol_min());
  r.detail = "single mode vs symbol inverse, relative error " + fmt(err / mx);
  return r;
}

CheckResult check_cascade(const FluidState& data, const EquationOfState& eos, double s, double delta1, double M0) {
  CheckResult r = make("cascade");
  const Grid2D& g = data.grid();
  BandRange br = band_range(g);
  CascadeSchedule cs = cascade_prepare(data, eos, M0, delta1, br.jmax + 2, 1.0, s);
  const double q = std::exp2(-delta1);
  double ulps = 0;
  bool decreasing = true;
  for (std::size_t i = 0; i + 1 < cs.entries.size(); ++i) {
    double ratio = cs.entries[i + 1].T / cs.entries[i].T;
    ulps = std::max(ulps, std::fabs(ratio - q) / (q * std::numeric_limits<double>::epsilon()));
    decreasing = decreasing && cs.entries[i + 1].T < cs.entries[i].T;
  }
  // largest |xi| carried by the data
  Spectrum sp = fft(data.h);
  const auto& mag = wavenumber_magnitude(g);
  double amax = 0, kmax = 0;
  for (const auto& c : sp) amax = std::max(amax, std::abs(c));
  for (std::size_t i = 0; i < sp.size(); ++i)
    if (std::abs(sp[i]) > 1e-14 * amax) kmax = std::max(kmax, mag[i]);
  const int jsat = int(std::ceil(std::log2(std::max(kmax, 1.0))));
  double sat = 0;
  for (const auto& e : cs.entries)
    if (e.j >= jsat) sat = std::max(sat, (e.data.h - data.h).max_abs());
  r.passed = ulps <= 2.0 && decreasing && sat <= 1e-12 && cs.bernstein_max <= 1.0;
  r.set("ratio_ulps", ulps).set("saturation_defect", sat).set("saturation_from", jsat);
  r.set("bernstein_max", cs.bernstein_max).set("entries", cs.entries.size()).set("jmax_used", cs.jmax_used);
  r.detail = "T ratio within " + fmt(ulps) + " ulp, Bernstein constant " + fmt(cs.bernstein_max) +
             ", saturation " + fmt(sat) + (cs.warnings.empty() ? "" : "; " + cs.warnings.front());
  return r;
}

namespace {

struct Level {
  const Trajectory* tr;
  int scale;  // slices per coarse slice
};

void study_pair(ConvergenceStudy& st, const std::string& name, const Trajectory& coarse, const Trajectory& fine,
                const EquationOfState& eos, bool with_vplus) {
  const Level levels[2] = {{&coarse, 1}, {&fine, 2}};
  std::vector<std::array<double, 4>> res(2), box(2);
  for (int L = 0; L < 2; ++L) {
    const Trajectory& tr = *levels[L].tr;
    const int f = levels[L].scale;
    Series s(tr);
    std::unique_ptr<VMinusSolution> sol;
    VMinusView view;
    if (with_vplus) {
      sol = std::make_unique<VMinusSolution>(solve_vminus(s, 2 * f, 8 * f));
      view = sol->view();
      for (const auto& d : sol->diag) {
        st.solver.push_back(d);
        st.solver_converged = st.solver_converged && d.converged;
        st.solver_residual = std::max(st.solver_residual, d.final_residual);
      }
    }
    std::array<double, 4> sq{}, bq{};
    int count = 0;
    for (int m = 4; m <= 8; ++m) {
      WaveResiduals w = wave_residuals(s, m * f, eos, with_vplus ? &view : nullptr);
      double rh = l2_norm(w.res_h), rv = l2_norm(w.res_v);
      sq[0] += rh * rh;
      sq[1] += rv * rv;
      bq[0] += w.box_h_l2 * w.box_h_l2;
      bq[1] += w.box_v_l2 * w.box_v_l2;
      if (with_vplus) {
        double rp = l2_norm(w.res_vplus), rt = l2_norm(w.res_vplus_tt);
        sq[2] += rp * rp;
        sq[3] += rt * rt;
        bq[2] += w.box_vplus_l2 * w.box_vplus_l2;
        bq[3] += w.box_vplus_l2 * w.box_vplus_l2;
      }
      ++count;
    }
    for (int e = 0; e < 4; ++e) {
      res[L][e] = std::sqrt(sq[e] / count);
      box[L][e] = std::sqrt(bq[e] / count);
    }
  }
  const char* eq[4] = {"h", "v", "vplus", "vplus_tt"};
  for (int e = 0; e < (with_vplus ? 4 : 2); ++e)
    for (int L = 0; L < 2; ++L) {
      ConvergenceRow row;
      row.scenario = name;
      row.nx = levels[L].tr->grid().nx;
      row.dt = levels[L].tr->dt;
      row.equation = eq[e];
      row.l2 = res[L][e];
      row.relative = box[L][e] > 0 ? res[L][e] / box[L][e] : 0.0;
      row.order = L == 1 && res[1][e] > 0 ? std::log2(res[0][e] / res[1][e]) : 0.0;
      st.rows.push_back(row);
    }
}

}  // namespace

ConvergenceStudy residual_convergence(const RunConfig& c, int nx_coarse, bool with_vplus) {
  auto t0 = std::chrono::steady_clock::now();
  ConvergenceStudy st;
  const double dt = c.cfl * kTwoPi / nx_coarse * std::min(1.0, double(c.ny) / c.nx);
  Trajectory coarse = evolve_preset(c, nx_coarse, dt, 12);
  Trajectory fine = evolve_preset(c, 2 * nx_coarse, dt / 2, 24);
  study_pair(st, c.scenario, coarse, fine, config_eos(c), with_vplus);
  st.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return st;
}

ConvergenceStudy random_convergence(std::uint64_t seed, int nx_coarse, bool with_vplus, double A) {
  auto t0 = std::chrono::steady_clock::now();
  ConvergenceStudy st;
  const double dt = 0.4 * kTwoPi / nx_coarse;
  Trajectory coarse = random_trajectory(Grid2D(nx_coarse, nx_coarse), 13, dt, seed);
  Trajectory fine = random_trajectory(Grid2D(2 * nx_coarse, 2 * nx_coarse), 25, dt / 2, seed);
  study_pair(st, "random", coarse, fine, EquationOfState(A), with_vplus);
  st.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return st;
}

CheckResult check_convergence(const ConvergenceStudy& st, const std::string& name, double min_order) {
  CheckResult r = make(name);
  bool ok = true;
  std::string detail;
  for (const auto& row : st.rows) {
    if (row.nx == st.rows.front().nx) continue;
    r.set("order_" + row.equation, row.order).set("l2_" + row.equation, row.l2);
    if (row.equation != "vplus_tt") {
      ok = ok && row.order >= min_order;
      detail += (detail.empty() ? "" : ", ") + row.equation + " order " + fmt(row.order);
    }
  }
  if (!st.solver.empty()) {
    ok = ok && st.solver_converged && st.solver_residual <= 1e-9;
    r.set("solver_residual", st.solver_residual).set("solver_converged", st.solver_converged);
    detail += ", solver residual " + fmt(st.solver_residual);
  }
  r.set("seconds", st.seconds);
  r.passed = ok;
  r.detail = detail;
  return r;
}

CheckResult check_negative_control(const ConvergenceStudy& st, const std::string& name) {
  CheckResult r = make(name);
  bool ok = true;
  double min_rel = INFINITY, max_order = -INFINITY;
  for (const auto& row : st.rows) {
    if (row.equation == "vplus_tt") continue;
    min_rel = std::min(min_rel, row.relative);
    if (row.nx != st.rows.front().nx) max_order = std::max(max_order, row.order);
  }
  ok = min_rel >= 0.1 && max_order < 1.0;
  r.passed = ok;
  r.set("min_relative_residual", min_rel).set("max_order", max_order);
  r.detail = "random fields: min relative residual " + fmt(min_rel) + ", max observed order " + fmt(max_order);
  return r;
}

std::string convergence_csv(const ConvergenceStudy& st) {
  std::ostringstream o;
  o << "scenario,nx,dt,equation,L2_residual,relative_residual,observed_order\n";
  for (const auto& r : st.rows)
    o << r.scenario << ',' << r.nx << ',' << format_double(r.dt) << ',' << r.equation << ',' << format_double(r.l2)
      << ',' << format_double(r.relative) << ',' << format_double(r.order) << '\n';
  return o.str();
}

bool Verdict::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::vector<std::string> Verdict::failures() const {
  std::vector<std::string> f;
  for (const auto& c : checks)
    if (!c.passed) f.push_back(c.name);
  return f;
}

Verdict verify_all(const RunConfig& c, bool flip_eps) {
  Verdict v;
  const EquationOfState eos = config_eos(c);
  v.checks.push_back(check_ellipticity_certificate(1000, c.seed));
  Trajectory tr = evolve_preset(c, c.nx, 0.0, 0);
  v.checks.push_back(check_minors(tr));
  v.checks.push_back(check_constraint(tr));
  v.checks.push_back(check_hodge(tr, eos, flip_eps));
  v.checks.push_back(check_divergence_free(tr, eos));
  if (eos.stiff()) v.checks.push_back(check_stiff(tr, eos, preset_irrotational(c.scenario)));
  const bool vortical = !preset_irrotational(c.scenario);
  ConvergenceStudy st = residual_convergence(c, c.nx / 2, vortical);
  v.checks.push_back(check_convergence(st, "wave-residuals"));
  v.checks.push_back(check_frame(tr, eos));
  v.checks.push_back(check_gronwall(gronwall_audit(tr, eos, c.s, 3.0, config_options(c))));
  return v;
}

namespace {

nlohmann::json to_json(const CheckResult& r) {
  nlohmann::json j;
  j["name"] = r.name;
  j["passed"] = r.passed;
  j["skipped"] = r.skipped;
  j["detail"] = r.detail;
  nlohmann::json m = nlohmann::json::object();
  for (const auto& [k, x] : r.metrics) m[k] = std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
  j["metrics"] = m;
  return j;
}

}  // namespace

std::string check_json(const CheckResult& r) { return to_json(r).dump(2); }

std::string verdict_json(const Verdict& v) {
  nlohmann::json j;
  j["passed"] = v.passed();
  j["failures"] = v.failures();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : v.checks) j["checks"].push_back(to_json(c));
  return j.dump(2);
}

}  // namespace gv
