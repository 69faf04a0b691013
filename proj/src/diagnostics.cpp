#include "gv/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "gv/norms.hpp"
#include "gv/spectral.hpp"
#include "gv/vorticity.hpp"

namespace gv {

namespace {

double hs_pair(const FluidState& s, double a) {
  const Grid2D& g = s.grid();
  Field one(g, 1.0);
  double h = sobolev_norm(s.h, a);
  double v0 = sobolev_norm(s.v0() - one, a);
  double v1 = sobolev_norm(s.v1, a), v2 = sobolev_norm(s.v2, a);
  return std::sqrt(h * h + v0 * v0 + v1 * v1 + v2 * v2);
}

Mat3F spatial_gradient(const Vec3& w) {
  Mat3F dw;
  const Grid2D& g = w[0].grid();
  for (int c = 0; c < 3; ++c) {
    Spectrum sp = fft(w[c]);
    dw[c][0] = Field(g);
    dw[c][1] = derivative_from_spectrum(sp, g, 1);
    dw[c][2] = derivative_from_spectrum(sp, g, 2);
  }
  return dw;
}

}  // namespace

void check_energy_exponents(double s, double s_prime) {
  if (!(s > 1.75 && s <= 1.875)) throw DomainError("s must lie in (7/4, 15/8]");
  if (!(s_prime >= 1.75 && s_prime <= s)) throw DomainError("s_prime must satisfy 7/4 <= s_prime <= s");
}

EnergyReport total_energy(const FluidState& state, const Vec3& w, const Mat3F& dw, double s, double s_prime) {
  check_energy_exponents(s, s_prime);
  const Grid2D& g = state.grid();
  EnergyReport r;
  r.t = state.time;
  r.parts.h_hs = sobolev_norm(state.h, s);
  Field one(g, 1.0);
  double v0 = sobolev_norm(state.v0() - one, s), v1 = sobolev_norm(state.v1, s), v2 = sobolev_norm(state.v2, s);
  r.parts.v_hs = std::sqrt(v0 * v0 + v1 * v1 + v2 * v2);
  double sq = 0;
  for (int a = 0; a < 3; ++a) {
    double n = sobolev_norm(w[a], s_prime - 0.25);
    sq += n * n;
  }
  r.parts.w_hs = std::sqrt(sq);
  Field mag(g);
  for (std::size_t p = 0; p < g.size(); ++p) {
    double m = 0;
    for (int c = 0; c < 3; ++c)
      for (int i = 1; i < 3; ++i) m += dw[c][i][p] * dw[c][i][p];
    mag[p] = std::sqrt(m);
  }
  r.parts.dw_l8 = lp_norm(mag, 8.0);
  r.E = r.parts.h_hs + r.parts.v_hs + r.parts.w_hs + r.parts.dw_l8;
  return r;
}

Kinematics rate_kinematics(const FluidState& s, const EquationOfState& eos, const EvolutionOptions& opt) {
  return kinematics_from_rates(s, state_rate(s, eos, opt));
}

double derivative_sup(const Kinematics& k) {
  double m = 0;
  for (int a = 0; a < 3; ++a) {
    m = std::max(m, k.dh[a].max_abs());
    for (int c = 0; c < 3; ++c) m = std::max(m, k.dv[c][a].max_abs());
  }
  return m;
}

std::vector<EnergyReport> energy_series(const Trajectory& tr, const EquationOfState& eos, double s, double s_prime,
                                        const EvolutionOptions& opt) {
  check_energy_exponents(s, s_prime);
  std::vector<EnergyReport> out;
  double acc = 0, prev = 0;
  for (int n = 0; n < tr.size(); ++n) {
    Kinematics k = rate_kinematics(tr[n], eos, opt);
    Vec3 w = vorticity_from(k);
    EnergyReport r = total_energy(tr[n], w, spatial_gradient(w), s, s_prime);
    r.deriv_sup = derivative_sup(k);
    if (n > 0) acc += 0.5 * tr.dt * (prev + r.deriv_sup);
    prev = r.deriv_sup;
    r.strich_accum = acc;
    out.push_back(r);
  }
  return out;
}

GronwallReport gronwall_audit(const Trajectory& tr, const EquationOfState& eos, double a, double factor,
                              const EvolutionOptions& opt) {
  GronwallReport r;
  r.a = a;
  r.factor = factor;
  const double base = hs_pair(tr[0], a);
  double acc = 0, prev = 0;
  for (int n = 0; n < tr.size(); ++n) {
    double sup = derivative_sup(rate_kinematics(tr[n], eos, opt));
    if (n > 0) acc += 0.5 * tr.dt * (prev + sup);
    prev = sup;
    double den = base * std::exp(acc);
    double K = den == 0.0 ? 1.0 : hs_pair(tr[n], a) / den;
    r.t.push_back(tr.time(n));
    r.K.push_back(K);
    r.accum.push_back(acc);
  }
  r.K0 = r.K.front();
  r.K_max = *std::max_element(r.K.begin(), r.K.end());
  r.violation = r.K_max > factor * r.K0;
  return r;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2) return 0.0;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) mx += x[i], my += y[i];
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx == 0 ? 0.0 : sxy / sxx;
}

namespace {

double l4_time(const std::vector<double>& sup, double h) {
  if (sup.size() < 2) return sup.empty() ? 0.0 : sup[0];
  std::vector<double> p(sup.size());
  for (std::size_t i = 0; i < sup.size(); ++i) p[i] = std::pow(sup[i], 4);
  return std::pow(std::max(simpson(p, h), 0.0), 0.25);
}

double tail_beta(const std::vector<StrichartzRow>& rows, double StrichartzRow::*m, int from) {
  double peak = 0;
  for (const auto& r : rows) peak = std::max(peak, r.*m);
  std::vector<double> x, y;
  for (const auto& r : rows)
    if (r.j >= from && r.*m > 1e-13 * peak) {
      x.push_back(r.j);
      y.push_back(std::log2(r.*m));
    }
  return -fit_slope(x, y);
}

}  // namespace

StrichartzTable dyadic_strichartz_table(const Trajectory& tr, const EquationOfState& eos, int stride,
                                        const EvolutionOptions& opt) {
  if (stride < 1) throw DomainError("stride must be positive");
  const Grid2D& g = tr.grid();
  BandRange br = band_range(g);
  const int nb = br.jmax - br.jmin + 1;
  std::vector<std::vector<double>> sv(nb), sh(nb);
  std::vector<double> tv, th;
  for (int n = 0; n < tr.size(); n += stride) {
    Kinematics k = rate_kinematics(tr[n], eos, opt);
    double fv = 0, fh = 0;
    std::vector<double> bv(nb, 0.0), bh(nb, 0.0);
    for (int a = 0; a < 3; ++a) {
      fh = std::max(fh, k.dh[a].max_abs());
      for (int b = 0; b < nb; ++b) bh[b] = std::max(bh[b], lp_project(k.dh[a], br.jmin + b).field.max_abs());
      for (int c = 0; c < 3; ++c) {
        fv = std::max(fv, k.dv[c][a].max_abs());
        for (int b = 0; b < nb; ++b) bv[b] = std::max(bv[b], lp_project(k.dv[c][a], br.jmin + b).field.max_abs());
      }
    }
    tv.push_back(fv);
    th.push_back(fh);
    for (int b = 0; b < nb; ++b) {
      sv[b].push_back(bv[b]);
      sh[b].push_back(bh[b]);
    }
  }
  const double h = tr.dt * stride;
  StrichartzTable t;
  t.dv_total = l4_time(tv, h);
  t.dh_total = l4_time(th, h);
  int peak = br.jmin;
  double best = -1;
  for (int b = 0; b < nb; ++b) {
    StrichartzRow r{br.jmin + b, l4_time(sv[b], h), l4_time(sh[b], h)};
    if (r.dv + r.dh > best) best = r.dv + r.dh, peak = r.j;
    t.rows.push_back(r);
  }
  t.tail_from = peak;
  t.beta_v = tail_beta(t.rows, &StrichartzRow::dv, peak);
  t.beta_h = tail_beta(t.rows, &StrichartzRow::dh, peak);
  return t;
}

double cascade_time(int j, double M0, double delta1, double C) {
  return std::exp2(-delta1 * j) / std::pow(C * M0, 3);
}

CascadeSchedule cascade_prepare(const FluidState& data, const EquationOfState& eos, double M0, double delta1, int jmax,
                                double C, double s) {
  if (!(delta1 > 0 && delta1 <= 1.0 / 80)) throw DomainError("delta1 must lie in (0, 1/80]");
  if (std::fabs(delta1 - (s - 1.75) / 10) > 1e-12) throw DomainError("delta1 must equal (s - 7/4)/10");
  if (!(M0 > 0) || !(C > 0)) throw DomainError("M0 and C must be positive");
  const Grid2D& g = data.grid();
  BandRange br = band_range(g);
  CascadeSchedule cs;
  cs.M0 = M0;
  cs.delta1 = delta1;
  cs.C = C;
  cs.s = s;
  cs.jmax_requested = jmax;
  cs.jmax_used = jmax;
  if (jmax > br.jmax) {
    cs.jmax_used = br.jmax;
    cs.warnings.push_back("jmax " + std::to_string(jmax) + " beyond grid band range, clamped to " +
                          std::to_string(br.jmax));
  }
  if (cs.jmax_used < br.jmin) {
    cs.warnings.push_back("jmax " + std::to_string(jmax) + " below grid band range, raised to " +
                          std::to_string(br.jmin));
    cs.jmax_used = br.jmin;
  }
  const double hdot = homogeneous_sobolev_norm(data.h, s);
  for (int j = br.jmin; j <= cs.jmax_used; ++j) {
    CascadeEntry e;
    e.j = j;
    e.T = cascade_time(j, M0, delta1, C);
    FluidState d;
    d.time = data.time;
    d.h = lp_low(data.h, j);
    d.v1 = lp_low(data.v1, j);
    d.v2 = lp_low(data.v2, j);
    e.data = std::move(d);
    e.w = vorticity_from(rate_kinematics(e.data, eos));
    cs.entries.push_back(std::move(e));
  }
  for (std::size_t i = 0; i + 1 < cs.entries.size(); ++i) {
    auto& e = cs.entries[i];
    e.diff_l2 = l2_norm(cs.entries[i + 1].data.h - e.data.h);
    e.bernstein = hdot > 0 ? e.diff_l2 * std::exp2(s * e.j) / hdot : 0.0;
    cs.bernstein_max = std::max(cs.bernstein_max, e.bernstein);
  }
  return cs;
}

}  // namespace gv
