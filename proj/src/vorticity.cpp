#include "gv/vorticity.hpp"

#include <cmath>

#include "gv/spectral.hpp"

namespace gv {

namespace {

constexpr double mdiag(int a) { return a == 0 ? -1.0 : 1.0; }

void axpy(Field& y, double a, const Field& x) { y = lincomb(1.0, y, a, x); }

}  // namespace

ContractionReport check_contraction(const LeviCivita& eps) {
  ContractionReport r;
  for (int i = 1; i < 3; ++i)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        int lhs = 0;
        for (int a = 0; a < 3; ++a) lhs += eps.down(a, i, 0) * LeviCivita::up(a, b, c);
        int rhs = (b == i && c == 0 ? 1 : 0) - (b == 0 && c == i ? 1 : 0);
        ++r.checked;
        if (lhs != rhs) ++r.mismatches;
      }
  return r;
}

Vec3 curl_of(const Mat3F& D) {
  const Grid2D& g = D[0][0].grid();
  Vec3 out{Field(g), Field(g), Field(g)};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        int e = LeviCivita::up(a, b, c);
        if (e) axpy(out[a], e * mdiag(c), D[c][b]);
      }
  return out;
}

Vec3 vorticity_from(const Kinematics& k) { return curl_of(k.dv); }

Vec3 compute_W(const Field& h, const Vec3& dh, const Vec3& w, const Mat3F& dw, const EquationOfState& eos) {
  Vec3 W = curl_of(dw);
  if (eos.stiff()) return W;
  const Grid2D& g = h.grid();
  Field coef(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    double c2 = eos.cs2(h[k]);
    if (!(c2 > 0)) throw DomainError("compute_W: sound speed vanishes");
    coef[k] = 1.0 - 1.0 / c2;
  }
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        int e = LeviCivita::up(a, b, c);
        if (e) W[a] += (e * mdiag(c)) * (coef * w[c] * dh[b]);
      }
  return W;
}

const Vec3& VorticitySeries::w(int n) const {
  auto it = w_.find(n);
  if (it != w_.end()) return it->second;
  s_->require_interior(n, 2, "vorticity");
  return w_.emplace(n, vorticity_from(s_->kinematics(n, false))).first->second;
}

const Mat3F& VorticitySeries::dw(int n) const {
  auto it = dw_.find(n);
  if (it != dw_.end()) return it->second;
  s_->require_interior(n, 4, "vorticity derivative");
  const Grid2D& g = s_->grid();
  Mat3F d;
  for (int c = 0; c < 3; ++c) {
    Spectrum sp = fft(w(n)[c]);
    d[c][0] = s_->ddt([this, c](int m) { return w(m)[c]; }, n);
    d[c][1] = derivative_from_spectrum(sp, g, 1);
    d[c][2] = derivative_from_spectrum(sp, g, 2);
  }
  return dw_.emplace(n, std::move(d)).first->second;
}

const Vec3& VorticitySeries::W(int n) const {
  auto it = W_.find(n);
  if (it != W_.end()) return it->second;
  Kinematics k = s_->kinematics(n, false);
  return W_.emplace(n, compute_W(k.h, k.dh, w(n), dw(n), eos_)).first->second;
}

Mat3F VorticitySeries::dW(int n) const {
  s_->require_interior(n, 6, "modified vorticity derivative");
  const Grid2D& g = s_->grid();
  Mat3F d;
  for (int c = 0; c < 3; ++c) {
    Spectrum sp = fft(W(n)[c]);
    d[c][0] = s_->ddt([this, c](int m) { return W(m)[c]; }, n);
    d[c][1] = derivative_from_spectrum(sp, g, 1);
    d[c][2] = derivative_from_spectrum(sp, g, 2);
  }
  return d;
}

Field VorticitySeries::div_w(int n) const {
  const Mat3F& d = dw(n);
  return d[0][0] + d[1][1] + d[2][2];
}

Vec3 transport_residual_w(const Kinematics& k, const Vec3& w, const Mat3F& dw) {
  const Grid2D& g = k.grid();
  Field divv = k.divv();
  Vec3 R{Field(g), Field(g), Field(g)};
  for (int a = 0; a < 3; ++a) {
    for (int q = 0; q < 3; ++q) {
      R[a] += k.v[q] * dw[a][q];
      // w^q d^a v_q
      R[a] -= (mdiag(a) * mdiag(q)) * (w[q] * k.dv[q][a]);
    }
    R[a] += w[a] * divv;
  }
  return R;
}

Vec3 transport_residual_w(const VorticitySeries& vs, int n) {
  return transport_residual_w(vs.series().kinematics(n, false), vs.w(n), vs.dw(n));
}

Vec3 transport_residual_W(const VorticitySeries& vs, int n) {
  const Series& s = vs.series();
  const Grid2D& g = s.grid();
  Kinematics k = s.kinematics(n, false);
  const Vec3& w = vs.w(n);
  const Mat3F& dw = vs.dw(n);
  Mat3F dW = vs.dW(n);
  const EquationOfState& eos = vs.eos();
  Field divv = k.divv();

  // pointwise coefficients: kk = c^{-2} - 1, dk_b = d_b kk, cc = 2 c' / c^3
  Field kk(g), dkdh(g), cc(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    double h = k.h[i];
    double c = eos.cs(h), cp = eos.dcs(h);
    kk[i] = 1.0 / (c * c) - 1.0;
    dkdh[i] = -2.0 * cp / (c * c * c);
    cc[i] = 2.0 * cp / (c * c * c);
  }
  Field vdh(g);
  for (int q = 0; q < 3; ++q) vdh += k.v[q] * k.dh[q];

  Vec3 R{Field(g), Field(g), Field(g)};
  for (int a = 0; a < 3; ++a) {
    for (int q = 0; q < 3; ++q) R[a] += k.v[q] * dW[a][q];
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        int e = LeviCivita::up(a, b, c);
        if (!e) continue;
        const double mc = mdiag(c);
        Field t(g);
        for (int q = 0; q < 3; ++q) {
          t -= k.dv[q][b] * (mc * dw[c][q]);
          t += dw[q][b] * (mdiag(q) * k.dv[q][c]);
        }
        t -= (mc * dw[c][b]) * divv;
        if (!eos.stiff()) {
          Field s1(g), s2(g);
          for (int q = 0; q < 3; ++q) {
            s1 += (dkdh * k.dh[b] * k.v[q] + kk * k.dv[q][b]) * k.dh[q];
            s2 += k.v[q] * dw[c][q];
          }
          t += (mc * w[c]) * s1;
          t -= kk * (mc * s2) * k.dh[b];
          t += cc * vdh * (mc * w[c]) * k.dh[b];
        }
        R[a] -= double(e) * t;
      }
  }
  return R;
}

HodgeReport hodge_identity_checks(const VorticitySeries& vs, int n, const LeviCivita& eps) {
  HodgeReport r;
  r.contraction = check_contraction(eps);
  const Series& s = vs.series();
  const Grid2D& g = s.grid();
  Kinematics k = s.kinematics(n, false);
  const Vec3& w = vs.w(n);
  const Mat3F& dw = vs.dw(n);
  const Vec3& W = vs.W(n);
  const EquationOfState& eos = vs.eos();
  Field divv = k.divv();
  r.w_l2 = l2_norm(w);

  // div of spatial w from the transport law at a = 0
  Field rhs(g);
  for (int i = 1; i < 3; ++i) rhs += k.v[i] * dw[0][i];
  for (int q = 0; q < 3; ++q) rhs += (mdiag(q) * w[q]) * k.dv[q][0];
  rhs += w[0] * divv;
  Field lhs = dw[1][1] + dw[2][2];
  Field inv_v0(g);
  for (std::size_t i = 0; i < g.size(); ++i) inv_v0[i] = 1.0 / k.v[0][i];
  r.div_recon_l2 = l2_norm(lhs - inv_v0 * rhs);

  Field coef(g);
  for (std::size_t i = 0; i < g.size(); ++i) coef[i] = 1.0 - 1.0 / eos.cs2(k.h[i]);
  double worst = 0;
  for (int i = 1; i < 3; ++i) {
    Field lhs_i = (-1.0) * dw[0][i];  // d_i w_0
    Field rhs_i(g);
    for (int a = 0; a < 3; ++a) {
      int e = eps.down(a, i, 0);
      if (e) rhs_i += double(e) * W[a];
    }
    // w_i d_t h - w_0 d_i h with w_0 = -w^0
    rhs_i += coef * (w[i] * k.dh[0] + w[0] * k.dh[i]);
    Field tr(g);
    for (int j = 1; j < 3; ++j) tr -= k.v[j] * dw[i][j];
    for (int q = 0; q < 3; ++q) tr += (mdiag(q) * w[q]) * k.dv[q][i];
    tr -= w[i] * divv;
    rhs_i += inv_v0 * tr;
    worst = std::max(worst, l2_norm(lhs_i - rhs_i));
  }
  r.grad_recon_l2 = worst;
  return r;
}

double l2_norm(const Vec3& F) {
  double s = 0;
  for (const auto& f : F) {
    double n = gv::l2_norm(f);
    s += n * n;
  }
  return std::sqrt(s);
}

}  // namespace gv
