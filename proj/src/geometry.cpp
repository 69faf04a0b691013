#include "gv/geometry.hpp"

#include <cmath>
#include <string>

#include "gv/norms.hpp"
#include "gv/series.hpp"
#include "gv/spectral.hpp"

namespace gv {

namespace {

int line_length(const Grid2D& g, int axis) { return axis == 1 ? g.nx : g.ny; }
double line_period(const Grid2D& g, int axis) { return axis == 1 ? g.lx : g.ly; }

// Trigonometric interpolation of several fields along grid lines of one axis.
class LineSpectra {
 public:
  LineSpectra(const Grid2D& g, int axis, const std::vector<const Field*>& fields)
      : g_(g), axis_(axis), n_(line_length(g, axis)), L_(line_period(g, axis)) {
    const int nlines = line_length(g, axis == 1 ? 2 : 1);
    coef_.assign(fields.size(), std::vector<std::vector<cplx>>(nlines));
    std::vector<double> line(n_);
    for (std::size_t f = 0; f < fields.size(); ++f)
      for (int j = 0; j < nlines; ++j) {
        for (int i = 0; i < n_; ++i) line[i] = axis == 1 ? fields[f]->at(i, j) : fields[f]->at(j, i);
        coef_[f][j] = fft1d(line);
      }
  }

  std::size_t count() const { return coef_.size(); }

  void eval(int j, double x, std::vector<double>& out) const {
    const int nh = n_ / 2;
    phase_.resize(nh + 1);
    const cplx step = std::polar(1.0, kTwoPi * x / L_);
    cplx z = 1.0;
    for (int k = 0; k <= nh; ++k) {
      phase_[k] = z;
      z *= step;
      if (k % 16 == 15) z = std::polar(1.0, kTwoPi * x / L_ * (k + 1));
    }
    out.resize(coef_.size());
    for (std::size_t f = 0; f < coef_.size(); ++f) {
      const auto& c = coef_[f][j];
      double s = c[0].real();
      for (int k = 1; k < nh; ++k) s += 2.0 * (c[k] * phase_[k]).real();
      s += (c[nh] * phase_[nh]).real();
      out[f] = s;
    }
  }

 private:
  Grid2D g_;
  int axis_;
  int n_;
  double L_;
  std::vector<std::vector<std::vector<cplx>>> coef_;
  mutable std::vector<cplx> phase_;
};

std::array<double, 6> invert_packed(const std::array<double, 6>& p) {
  double m[3][3], o[3][3];
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) m[a][b] = p[sym(a, b)];
  if (!invert3(m, o)) throw DomainError("singular metric on the foliation");
  std::array<double, 6> out;
  for (int a = 0; a < 3; ++a)
    for (int b = a; b < 3; ++b) out[sym(a, b)] = o[a][b];
  return out;
}

P3 raise(const std::array<double, 6>& gi, const P3& w) {
  P3 v{};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) v[a] += gi[sym(a, b)] * w[b];
  return v;
}

}  // namespace

double gdot(const std::array<double, 6>& gc, const P3& a, const P3& b) {
  double s = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += gc[sym(i, j)] * a[i] * b[j];
  return s;
}

LineMetric::LineMetric(const FluidState& s, const EquationOfState& eos, int axis) : g_(s.grid()), axis_(axis) {
  AcousticMetric m = acoustic_metric(s, eos);
  const int n = line_length(g_, axis), nlines = line_length(g_, axis == 1 ? 2 : 1);
  for (int p = 0; p < 6; ++p) {
    coef_[p].resize(nlines);
    std::vector<double> line(n);
    for (int j = 0; j < nlines; ++j) {
      for (int i = 0; i < n; ++i) line[i] = axis == 1 ? m.ginv[p].at(i, j) : m.ginv[p].at(j, i);
      coef_[p][j] = fft1d(line);
    }
  }
}

std::array<double, 6> LineMetric::ginv(int j, double x) const {
  const int n = line_length(g_, axis_), nh = n / 2;
  const double L = line_period(g_, axis_);
  std::array<double, 6> out{};
  for (int p = 0; p < 6; ++p) {
    const auto& c = coef_[p][j];
    double s = c[0].real();
    for (int k = 1; k <= nh; ++k) {
      cplx e = std::polar(1.0, kTwoPi * k * x / L);
      s += (k < nh ? 2.0 : 1.0) * (c[k] * e).real();
    }
    out[p] = s;
  }
  out[sym(0, 0)] = -1.0;
  return out;
}

namespace {

struct FoliationStepper {
  const Trajectory& tr;
  const EquationOfState& eos;
  Direction dir;
  std::map<int, std::unique_ptr<LineMetric>> cache;

  const LineMetric& metric(int n) {
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, std::make_unique<LineMetric>(tr[n], eos, dir.axis)).first;
    return *it->second;
  }

  void forget_before(int n) {
    while (!cache.empty() && cache.begin()->first < n) cache.erase(cache.begin());
  }

  // phi_t from the null condition; also returns max |g(dr,dr)| at the result
  std::vector<double> rate(const std::vector<double>& phi, int n, double* defect = nullptr) {
    const Grid2D& g = tr.grid();
    const int A = dir.axis;
    const double LB = line_period(g, dir.other());
    std::vector<double> dphi = derivative1d(phi, LB);
    const LineMetric& lm = metric(n);
    std::vector<double> out(phi.size());
    double worst = 0;
    for (std::size_t j = 0; j < phi.size(); ++j) {
      const double xA = dir.sign * phi[j];
      auto gi = lm.ginv(int(j), xA);
      double xi[3] = {0, 0, 0};
      xi[A] = dir.sign;
      xi[dir.other()] = -dphi[j];
      double b = gi[sym(0, 1)] * xi[1] + gi[sym(0, 2)] * xi[2];
      double c = gi[sym(1, 1)] * xi[1] * xi[1] + 2.0 * gi[sym(1, 2)] * xi[1] * xi[2] + gi[sym(2, 2)] * xi[2] * xi[2];
      double disc = b * b + c;
      if (!(disc >= 0))
        throw DomainError("foliation: negative discriminant at slice " + std::to_string(n) + ", transverse index " +
                          std::to_string(j));
      out[j] = -b + std::sqrt(disc);
      if (defect) {
        double q = -out[j] * out[j] - 2.0 * b * out[j] + c;
        worst = std::max(worst, std::fabs(q) / std::max(1.0, std::fabs(c)));
      }
    }
    if (defect) *defect = std::max(*defect, worst);
    return out;
  }
};

std::vector<double> axpy(const std::vector<double>& y, double a, const std::vector<double>& x) {
  std::vector<double> o(y);
  for (std::size_t i = 0; i < o.size(); ++i) o[i] += a * x[i];
  return o;
}

}  // namespace

NullFoliation evolve_foliation(const Trajectory& tr, const EquationOfState& eos, Direction dir, double r, int n_start,
                               int n_end) {
  if (dir.axis != 1 && dir.axis != 2) throw DomainError("foliation axis must be 1 or 2");
  if (dir.sign != 1 && dir.sign != -1) throw DomainError("foliation sign must be +-1");
  if (n_end < 0) n_end = tr.size() - 1;
  if (n_start < 0 || n_end >= tr.size() || n_end - n_start < 2) throw DomainError("foliation slice range");
  const Grid2D& g = tr.grid();
  NullFoliation f;
  f.dir = dir;
  f.r = r;
  f.c_bg = eos.cs(0.0);
  f.n_transverse = line_length(g, dir.other());
  f.l_transverse = line_period(g, dir.other());
  f.l_normal = line_period(g, dir.axis);
  FoliationStepper st{tr, eos, dir, {}};
  const double dt = tr.dt;
  std::vector<double> phi(f.n_transverse, r);
  int n = n_start;
  for (;;) {
    std::vector<double> k1 = st.rate(phi, n, &f.null_defect);
    f.slices.push_back(n);
    f.t.push_back(tr.time(n));
    f.phi.push_back(phi);
    f.phi_t.push_back(k1);
    if (n + 2 > n_end) break;
    auto k2 = st.rate(axpy(phi, dt, k1), n + 1);
    auto k3 = st.rate(axpy(phi, dt, k2), n + 1);
    auto k4 = st.rate(axpy(phi, 2.0 * dt, k3), n + 2);
    for (std::size_t j = 0; j < phi.size(); ++j) phi[j] += (2.0 * dt / 6.0) * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    n += 2;
    st.forget_before(n);
  }
  return f;
}

NullFrame build_null_frame(const Trajectory& tr, const EquationOfState& eos, const NullFoliation& f) {
  NullFrame fr;
  const Direction d = f.dir;
  const int A = d.axis, B = d.other();
  for (std::size_t k = 0; k < f.slices.size(); ++k) {
    LineMetric lm(tr[f.slices[k]], eos, A);
    std::vector<double> dphi = derivative1d(f.phi[k], f.l_transverse);
    FrameSample s;
    const std::size_t nB = f.phi[k].size();
    for (std::size_t j = 0; j < nB; ++j) {
      auto gi = lm.ginv(int(j), d.sign * f.phi[k][j]);
      auto gc = invert_packed(gi);
      P3 dr{-f.phi_t[k][j], 0, 0};
      dr[A] = d.sign;
      dr[B] = -dphi[j];
      P3 V = raise(gi, dr);
      const double sigma = V[0];
      if (!(sigma > 0))
        throw DomainError("null frame: degenerate foliation (sigma <= 0) at sample " + std::to_string(k));
      P3 l{V[0] / sigma, V[1] / sigma, V[2] / sigma};
      P3 X{0, 0, 0};
      X[A] = d.tau() * d.sign * dphi[j];
      X[B] = d.tau();
      const double xn = std::sqrt(gdot(gc, X, X));
      P3 e1{X[0] / xn, X[1] / xn, X[2] / xn};
      P3 Y{1, 0, 0};
      const double ye = gdot(gc, Y, e1);
      P3 Yp{Y[0] - ye * e1[0], Y[1] - ye * e1[1], Y[2] - ye * e1[2]};
      const double lY = gdot(gc, l, Yp), YY = gdot(gc, Yp, Yp);
      const double beta = 2.0 / lY, alpha = -beta * YY / (2.0 * lY);
      P3 lb{alpha * l[0] + beta * Yp[0], alpha * l[1] + beta * Yp[1], alpha * l[2] + beta * Yp[2]};
      const P3* v[3] = {&l, &lb, &e1};
      const double target[3][3] = {{0, 2, 0}, {2, 0, 0}, {0, 0, 1}};
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          s.gram_defect = std::max(s.gram_defect, std::fabs(gdot(gc, *v[a], *v[b]) - target[a][b]));
      s.dt_l_defect = std::max(s.dt_l_defect, std::fabs(l[0] - 1.0));
      s.l.push_back(l);
      s.lbar.push_back(lb);
      s.e1.push_back(e1);
      s.X.push_back(X);
      s.sigma.push_back(sigma);
      s.xnorm.push_back(xn);
      s.gi.push_back(gi);
      s.gc.push_back(gc);
    }
    fr.gram_defect = std::max(fr.gram_defect, s.gram_defect);
    fr.samples.push_back(std::move(s));
  }
  return fr;
}

double christoffel_first(const PointCurvature& p, int n, int a, int b) {
  return 0.5 * (p.dg[a][sym(n, b)] + p.dg[b][sym(n, a)] - p.dg[n][sym(a, b)]);
}

double riemann(const PointCurvature& p, const P3& X, const P3& Y, const P3& Z, const P3& W) {
  // R_{abcd} = 1/2 (g_{ad,bc} + g_{bc,ad} - g_{ac,bd} - g_{bd,ac}) + g_{mn}(G^m_{bc} G^n_{ad} - G^m_{bd} G^n_{ac})
  auto d2 = [&](int i, int j, int c, int dd) { return p.d2g[sym(c, dd)][sym(i, j)]; };
  double r2 = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int dd = 0; dd < 3; ++dd) {
          double w = X[a] * Y[b] * Z[c] * W[dd];
          if (w == 0) continue;
          r2 += 0.5 * w * (d2(a, dd, b, c) + d2(b, c, a, dd) - d2(a, c, b, dd) - d2(b, dd, a, c));
        }
  // Gamma_{n}(U, V) first kind contracted
  auto G = [&](const P3& U, const P3& V) {
    P3 o{};
    for (int n = 0; n < 3; ++n)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) o[n] += christoffel_first(p, n, a, b) * U[a] * V[b];
    return o;
  };
  auto ginner = [&](const P3& u, const P3& v) {
    double s = 0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) s += p.gi[sym(a, b)] * u[a] * v[b];
    return s;
  };
  return r2 + ginner(G(Y, Z), G(X, W)) - ginner(G(Y, W), G(X, Z));
}

ChiReport connection_chi(const Trajectory& tr, const EquationOfState& eos, const NullFoliation& f,
                         const NullFrame& frame) {
  const Grid2D& g = tr.grid();
  const int A = f.dir.axis, B = f.dir.other();
  const std::size_t K = f.slices.size();
  const std::size_t nB = f.n_transverse;
  ChiReport rep;
  rep.valid.assign(K, false);
  rep.chi.assign(K, {});
  rep.lsigma.assign(K, {});
  rep.chi_sup.assign(K, 0.0);
  std::vector<std::vector<PointCurvature>> pc(K);
  std::map<int, AcousticMetric> metrics;
  auto metric = [&](int n) -> const AcousticMetric& {
    auto it = metrics.find(n);
    if (it == metrics.end()) it = metrics.emplace(n, acoustic_metric(tr[n], eos)).first;
    return it->second;
  };
  const double dt = tr.dt;

  for (std::size_t k = 0; k < K; ++k) {
    const int n = f.slices[k];
    if (n < 2 || n + 2 >= tr.size()) continue;
    while (!metrics.empty() && metrics.begin()->first < n - 2) metrics.erase(metrics.begin());
    // gcov and its derivatives on the grid
    std::vector<Field> fields;
    fields.reserve(60);
    for (int p = 0; p < 6; ++p) fields.push_back(metric(n).gcov[p]);
    std::array<Field, 6> gt;
    for (int p = 0; p < 6; ++p) {
      SliceFn q = [&, p](int m) { return metric(m).gcov[p]; };
      gt[p] = stencil_d1(q, n, dt);
      Spectrum sp = fft(fields[p]);
      Spectrum st = fft(gt[p]);
      fields.push_back(gt[p]);
      fields.push_back(derivative_from_spectrum(sp, g, 1));
      fields.push_back(derivative_from_spectrum(sp, g, 2));
      fields.push_back(stencil_d2(q, n, dt));
      fields.push_back(derivative_from_spectrum(st, g, 1));
      fields.push_back(derivative_from_spectrum(st, g, 2));
      fields.push_back(derivative2_from_spectrum(sp, g, 1, 1));
      fields.push_back(derivative2_from_spectrum(sp, g, 1, 2));
      fields.push_back(derivative2_from_spectrum(sp, g, 2, 2));
    }
    std::vector<const Field*> ptr;
    for (auto& x : fields) ptr.push_back(&x);
    LineSpectra ls(g, A, ptr);
    std::vector<double> val;
    const FrameSample& s = frame.samples[k];
    pc[k].resize(nB);
    for (std::size_t j = 0; j < nB; ++j) {
      ls.eval(int(j), f.dir.sign * f.phi[k][j], val);
      PointCurvature& P = pc[k][j];
      P.gc = s.gc[j];
      P.gi = s.gi[j];
      for (int p = 0; p < 6; ++p) {
        const double* v = &val[6 + 9 * p];
        P.dg[0][p] = v[0];
        P.dg[1][p] = v[1];
        P.dg[2][p] = v[2];
        P.d2g[sym(0, 0)][p] = v[3];
        P.d2g[sym(0, 1)][p] = v[4];
        P.d2g[sym(0, 2)][p] = v[5];
        P.d2g[sym(1, 1)][p] = v[6];
        P.d2g[sym(1, 2)][p] = v[7];
        P.d2g[sym(2, 2)][p] = v[8];
      }
    }
    // chi = <e1(l), e1> + Gamma_{n a b} e1^n e1^a l^b, with e1(F) = tau f' / |X|
    std::array<std::vector<double>, 3> lc, dl;
    for (int m = 0; m < 3; ++m) {
      lc[m].resize(nB);
      for (std::size_t j = 0; j < nB; ++j) lc[m][j] = s.l[j][m];
      dl[m] = derivative1d(lc[m], f.l_transverse);
    }
    rep.chi[k].resize(nB);
    for (std::size_t j = 0; j < nB; ++j) {
      P3 el;
      for (int m = 0; m < 3; ++m) el[m] = f.dir.tau() * dl[m][j] / s.xnorm[j];
      double chi = gdot(s.gc[j], el, s.e1[j]);
      for (int nn = 0; nn < 3; ++nn)
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b)
            chi += christoffel_first(pc[k][j], nn, a, b) * s.e1[j][nn] * s.e1[j][a] * s.l[j][b];
      rep.chi[k][j] = chi;
      rep.chi_sup[k] = std::max(rep.chi_sup[k], std::fabs(chi));
    }
    rep.valid[k] = true;
    rep.chi_max = std::max(rep.chi_max, rep.chi_sup[k]);
  }

  // derivative along Sigma at fixed transverse coordinate, 4th order over samples
  const double hs = f.stride * dt;
  auto dt_sigma = [&](auto&& get, std::size_t k, std::size_t j) {
    double s = 0;
    for (int q = 0; q < 5; ++q) s += kStencilD1[q] * get(k + q - 2, j);
    return s / hs;
  };
  auto lderiv = [&](auto&& get, const std::vector<double>& along, std::size_t k, std::size_t j) {
    return dt_sigma(get, k, j) + frame.samples[k].l[j][B] * along[j];
  };

  for (std::size_t k = 2; k + 2 < K; ++k) {
    if (!rep.valid[k]) continue;
    const FrameSample& s = frame.samples[k];
    // l(ln sigma) = <D_l lbar, l>/2
    std::array<std::vector<double>, 3> lb, dlb;
    for (int m = 0; m < 3; ++m) {
      lb[m].resize(nB);
      for (std::size_t j = 0; j < nB; ++j) lb[m][j] = s.lbar[j][m];
      dlb[m] = derivative1d(lb[m], f.l_transverse);
    }
    rep.lsigma[k].resize(nB);
    for (std::size_t j = 0; j < nB; ++j) {
      P3 Dl;
      for (int m = 0; m < 3; ++m)
        Dl[m] = lderiv([&](std::size_t kk, std::size_t jj) { return frame.samples[kk].lbar[jj][m]; }, dlb[m], k, j);
      double v = gdot(s.gc[j], Dl, s.l[j]);
      for (int nn = 0; nn < 3; ++nn)
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b)
            v += christoffel_first(pc[k][j], nn, a, b) * s.l[j][nn] * s.l[j][a] * s.lbar[j][b];
      rep.lsigma[k][j] = 0.5 * v;
    }
  }

  for (std::size_t k = 4; k + 4 < K; ++k) {
    bool ok = true;
    for (int q = -2; q <= 2; ++q) ok = ok && rep.valid[k + q];
    if (!ok || rep.lsigma[k].empty()) continue;
    const FrameSample& s = frame.samples[k];
    std::vector<double> dchi = derivative1d(rep.chi[k], f.l_transverse);
    double sq = 0, scale = 0;
    for (std::size_t j = 0; j < nB; ++j) {
      double lchi = lderiv([&](std::size_t kk, std::size_t jj) { return rep.chi[kk][jj]; }, dchi, k, j);
      double chi = rep.chi[k][j];
      double R = riemann(pc[k][j], s.e1[j], s.l[j], s.l[j], s.e1[j]);
      double res = lchi + chi * chi + rep.lsigma[k][j] * chi - R;
      sq += res * res;
      double sc = std::fabs(lchi) + chi * chi + std::fabs(R);
      scale += sc * sc;
    }
    const double w = f.l_transverse / double(nB);
    rep.audit_samples.push_back(int(k));
    rep.audit_l2.push_back(std::sqrt(sq * w));
    rep.audit_scale.push_back(std::sqrt(scale * w));
    rep.audit_max = std::max(rep.audit_max, rep.audit_l2.back());
  }
  return rep;
}

namespace {

double sobolev1d(const std::vector<double>& f, double L, double s) {
  auto c = fft1d(f);
  const int n = int(f.size()), nh = n / 2;
  double sum = 0;
  for (int k = 0; k <= nh; ++k) {
    double xi = kTwoPi * k / L;
    double w = (k == 0 || k == nh) ? 1.0 : 2.0;
    sum += w * std::pow(1.0 + xi * xi, s) * std::norm(c[k]);
  }
  return std::sqrt(sum * L);
}

}  // namespace

std::vector<FoliationNorm> foliation_norms(const NullFoliation& f, const std::vector<double>& s0) {
  const std::size_t K = f.slices.size();
  const double hs = f.t.size() > 1 ? f.t[1] - f.t[0] : 0.0;
  std::vector<std::vector<double>> f0(K), f1(K);
  for (std::size_t k = 0; k < K; ++k) {
    f0[k] = f.phi_t[k];
    for (double& x : f0[k]) x -= f.c_bg;
    f1[k] = derivative1d(f.phi[k], f.l_transverse);
    for (double& x : f1[k]) x *= f.dir.tau();
  }
  std::vector<FoliationNorm> out;
  for (double s : s0) {
    const double a = s - 0.25;
    std::vector<double> i0(K);
    for (std::size_t k = 0; k < K; ++k) {
      double n0 = sobolev1d(f0[k], f.l_transverse, a), n1 = sobolev1d(f1[k], f.l_transverse, a);
      i0[k] = n0 * n0 + n1 * n1;
    }
    double best = K >= 2 ? simpson(i0, hs) : (K ? i0[0] : 0.0);
    if (K >= 6) {
      std::vector<double> i1;
      for (std::size_t k = 2; k + 2 < K; ++k) {
        std::vector<double> d0(f0[k].size()), d1(f1[k].size());
        for (std::size_t j = 0; j < d0.size(); ++j)
          for (int q = 0; q < 5; ++q) {
            d0[j] += kStencilD1[q] * f0[k + q - 2][j] / hs;
            d1[j] += kStencilD1[q] * f1[k + q - 2][j] / hs;
          }
        double n0 = sobolev1d(d0, f.l_transverse, a - 1.0), n1 = sobolev1d(d1, f.l_transverse, a - 1.0);
        i1.push_back(n0 * n0 + n1 * n1);
      }
      best = std::max(best, simpson(i1, hs));
    }
    out.push_back({s, std::sqrt(std::max(best, 0.0))});
  }
  return out;
}

}  // namespace gv
