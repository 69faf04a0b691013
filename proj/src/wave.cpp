#include "gv/wave.hpp"

#include <cmath>

#include "gv/spectral.hpp"

namespace gv {

namespace {

constexpr double md(int a) { return minkowski(a, a); }

struct Coeffs {
  Field e2, th, c2, c, cp;
};

Coeffs coefficients(const Kinematics& k, const EquationOfState& eos) {
  const Grid2D& g = k.grid();
  Coeffs C{Field(g), Field(g), Field(g), Field(g), Field(g)};
  for (std::size_t i = 0; i < g.size(); ++i) {
    double h = k.h[i];
    C.e2[i] = std::exp(-2.0 * h);
    C.c2[i] = eos.cs2(h);
    C.c[i] = eos.cs(h);
    C.cp[i] = eos.dcs(h);
    C.th[i] = theta_at(h, k.v[0][i], eos);
  }
  return C;
}

MetricFields metric_fields(const Kinematics& k, const EquationOfState& eos) {
  const Grid2D& g = k.grid();
  MetricFields m;
  for (auto& f : m) f = Field(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    PointMetric pm = metric_at(k.h[i], k.v[0][i], k.v[1][i], k.v[2][i], eos);
    for (int a = 0; a < 3; ++a)
      for (int b = a; b < 3; ++b) m[sym(a, b)][i] = pm.gi[a][b];
  }
  return m;
}

}  // namespace

QuadraticSources quadratic_sources(const Kinematics& k, const EquationOfState& eos) {
  const Grid2D& g = k.grid();
  Coeffs C = coefficients(k, eos);
  Field vdh(g), dvdv(g), dhdh(g), divv = k.divv();
  for (int a = 0; a < 3; ++a) {
    vdh += k.v[a] * k.dh[a];
    dhdh += md(a) * (k.dh[a] * k.dh[a]);
    for (int b = 0; b < 3; ++b) dvdv += k.dv[b][a] * k.dv[a][b];
  }
  QuadraticSources q;
  q.D = Field(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    q.D[i] = -2.0 * C.e2[i] * C.th[i] * (C.cp[i] / C.c[i]) * vdh[i] * vdh[i] -
             C.e2[i] * C.th[i] * C.c2[i] * dvdv[i] - C.th[i] * (1.0 + C.c2[i]) * dhdh[i];
  }
  for (int a = 0; a < 3; ++a) {
    Field vdvdv(g), dva_dh(g);
    for (int b = 0; b < 3; ++b) {
      for (int kk = 0; kk < 3; ++kk) vdvdv += k.v[b] * k.dv[kk][b] * k.dv[a][kk];
      dva_dh += k.dv[b][a] * k.dh[b];
    }
    Field Q(g);
    const double ma = md(a);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double th = C.th[i], c2m1 = C.c2[i] - 1.0, ccp = C.c[i] * C.cp[i];
      const double up_dh = ma * k.dh[a][i];
      Q[i] = -C.e2[i] * c2m1 * th * vdvdv[i] - 2.0 * c2m1 * th * vdh[i] * up_dh - 2.0 * th * ccp * up_dh * divv[i] +
             c2m1 * th * ma * dva_dh[i] + 2.0 * th * ccp * vdh[i] * up_dh;
    }
    q.Q[a] = std::move(Q);
  }
  return q;
}

QuadraticSources quadratic_sources(const Series& s, int n, const EquationOfState& eos) {
  return quadratic_sources(s.kinematics(n, false), eos);
}

Field stiff_D(const Kinematics& k) {
  const Grid2D& g = k.grid();
  Vec3 w = vorticity_from(k);
  Field ww(g), dd(g), hh(g);
  for (int a = 0; a < 3; ++a) {
    ww += md(a) * (w[a] * w[a]);
    hh += md(a) * (k.dh[a] * k.dh[a]);
    for (int b = 0; b < 3; ++b) dd += (md(a) * md(b)) * (k.dv[b][a] * k.dv[b][a]);
  }
  Field D(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    double e2 = std::exp(-2.0 * k.h[i]);
    D[i] = -e2 * ww[i] - e2 * dd[i] - 2.0 * hh[i];
  }
  return D;
}

Field box_g(const Mat3F& d2f, const MetricFields& ginv) {
  const Grid2D& g = d2f[0][0].grid();
  Field out(g);
  for (int a = 0; a < 3; ++a)
    for (int b = a; b < 3; ++b) out += ginv[sym(a, b)] * ((a == b ? 1.0 : 2.0) * d2f[a][b]);
  return out;
}

Mat3F second_derivatives(const SliceFn& f, int n, double dt) {
  Field f0 = f(n);
  const Grid2D& g = f0.grid();
  Mat3F m;
  Spectrum sp = fft(f0);
  m[0][0] = stencil_d2(f, n, dt);
  for (int a = 1; a < 3; ++a)
    for (int b = a; b < 3; ++b) m[a][b] = m[b][a] = derivative2_from_spectrum(sp, g, a, b);
  Spectrum st = fft(stencil_d1(f, n, dt));
  for (int a = 1; a < 3; ++a) m[0][a] = m[a][0] = derivative_from_spectrum(st, g, a);
  return m;
}

Field box_g(const SliceFn& f, int n, double dt, const MetricFields& ginv) {
  return box_g(second_derivatives(f, n, dt), ginv);
}

Vec3 curl_w_from(const Kinematics& k) {
  if (!k.second) throw DomainError("curl_w_from needs second derivatives");
  // dw[c][b] = d_b w^c = eps^{cpq} m_qq d_b d_p v^q
  const Grid2D& g = k.grid();
  Mat3F dw;
  for (int c = 0; c < 3; ++c)
    for (int b = 0; b < 3; ++b) {
      Field s(g);
      for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) {
          int e = LeviCivita::up(c, p, q);
          if (e) s += (e * md(q)) * k.d2v[q][b][p];
        }
      dw[c][b] = std::move(s);
    }
  return curl_of(dw);
}

WaveResiduals wave_residuals(const Series& s, int n, const EquationOfState& eos, const VMinusView* vminus) {
  Kinematics k = s.kinematics(n, true);
  const Grid2D& g = k.grid();
  MetricFields gi = metric_fields(k, eos);
  QuadraticSources q = quadratic_sources(k, eos);
  Coeffs C = coefficients(k, eos);
  WaveResiduals r;
  Field boxh = box_g(k.d2h, gi);
  r.box_h_l2 = l2_norm(boxh);
  r.res_h = boxh - q.D;
  Vec3 cw = curl_w_from(k);
  Field c2th = C.c2 * C.th;
  Vec3 boxv;
  for (int a = 0; a < 3; ++a) {
    boxv[a] = box_g(k.d2v[a], gi);
    r.res_v[a] = boxv[a] - c2th * cw[a] - q.Q[a];
  }
  r.box_v_l2 = l2_norm(boxv);
  if (!vminus) return r;
  r.has_vplus = true;
  // u^i = v^i / v0 and T u^i = d_t u^i + u^j d_j u^i
  Vec3 u, Tu;
  for (int i = 1; i < 3; ++i) {
    u[i] = Field(g);
    for (std::size_t p = 0; p < g.size(); ++p) u[i][p] = k.v[i][p] / k.v[0][p];
  }
  for (int i = 1; i < 3; ++i) {
    Tu[i] = Field(g);
    for (std::size_t p = 0; p < g.size(); ++p) {
      double v0 = k.v[0][p];
      double dtu = (k.dv[i][0][p] * v0 - k.v[i][p] * k.dv[0][0][p]) / (v0 * v0);
      double adv = 0;
      for (int j = 1; j < 3; ++j) adv += u[j][p] * (k.dv[i][j][p] * v0 - k.v[i][p] * k.dv[0][j][p]) / (v0 * v0);
      Tu[i][p] = dtu + adv;
    }
  }
  double bp = 0;
  for (int a = 0; a < 3; ++a) {
    const SliceFn& f = vminus->comp[a];
    Mat3F d2 = second_derivatives(f, n, s.dt());
    Field vm = f(n);
    Field box_vm = box_g(d2, gi);
    Field md2(g), vvd2(g);
    for (int b = 0; b < 3; ++b) {
      md2 += md(b) * d2[b][b];
      for (int c = 0; c < 3; ++c) vvd2 += k.v[b] * k.v[c] * d2[b][c];
    }
    Field base = boxv[a] - box_vm - q.Q[a];
    Field lin(g), lin_tt(g);
    for (std::size_t p = 0; p < g.size(); ++p) {
      double c2 = C.c2[p], th = C.th[p], e2 = C.e2[p];
      lin[p] = c2 * th * vm[p] - 2.0 * c2 * th * md2[p] + th * e2 * (1.0 - 3.0 * c2) * vvd2[p];
    }
    Spectrum sp = fft(vm);
    Field d1 = derivative_from_spectrum(sp, g, 1), d2x = derivative_from_spectrum(sp, g, 2);
    for (std::size_t p = 0; p < g.size(); ++p) {
      double c2 = C.c2[p], th = C.th[p], e2 = C.e2[p], v0 = k.v[0][p];
      double tt = vvd2[p] + v0 * v0 * (Tu[1][p] * d1[p] + Tu[2][p] * d2x[p]);
      lin_tt[p] = c2 * th * vm[p] - 2.0 * c2 * th * md2[p] + th * e2 * (1.0 - 3.0 * c2) * tt;
    }
    r.res_vplus[a] = base - lin;
    r.res_vplus_tt[a] = base - lin_tt;
    double b = l2_norm(boxv[a] - box_vm);
    bp += b * b;
  }
  r.box_vplus_l2 = std::sqrt(bp);
  return r;
}

StiffReport stiff_algebra(const Kinematics& k, const EquationOfState& eos) {
  if (!eos.stiff()) throw DomainError("stiff checks require A = 1");
  StiffReport r;
  QuadraticSources q = quadratic_sources(k, eos);
  Field Ds = stiff_D(k);
  r.D_agreement = (q.D - Ds).max_abs();
  for (int a = 0; a < 3; ++a) r.Q_max = std::max(r.Q_max, q.Q[a].max_abs());
  r.divv_l2 = l2_norm(k.divv());
  r.w_l2 = l2_norm(vorticity_from(k));
  bool mink = true;
  for (std::size_t i = 0; i < k.h.size() && mink; ++i) {
    PointMetric pm = metric_at(k.h[i], k.v[0][i], k.v[1][i], k.v[2][i], eos);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        if (pm.gi[a][b] != minkowski(a, b)) mink = false;
  }
  r.metric_minkowski = mink;
  return r;
}

StiffReport stiff_checks(const Series& s, int n, const EquationOfState& eos) {
  if (!eos.stiff()) throw DomainError("stiff checks require A = 1");
  Kinematics k = s.kinematics(n, true);
  StiffReport r = stiff_algebra(k, eos);
  double sq = 0;
  for (int a = 0; a < 3; ++a) {
    MetricFields mk;
    for (int p = 0; p < 6; ++p) mk[p] = Field(k.grid(), 0.0);
    mk[sym(0, 0)] = Field(k.grid(), -1.0);
    mk[sym(1, 1)] = Field(k.grid(), 1.0);
    mk[sym(2, 2)] = Field(k.grid(), 1.0);
    double b = l2_norm(box_g(k.d2v[a], mk));
    sq += b * b;
  }
  r.boxv_l2 = std::sqrt(sq);
  return r;
}

}  // namespace gv
