#include "gv/elliptic.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

#include "gv/norms.hpp"
#include "gv/spectral.hpp"

namespace gv {

Minors minors_at(double h, double v1, double v2) {
  const double e = std::exp(-2.0 * h);
  const double v0sq = std::exp(2.0 * h) + v1 * v1 + v2 * v2;
  Minors m;
  m.p1 = -1.0 + 2.0 * e * v0sq;
  m.p2 = -1.0 + 2.0 * e * (v0sq - v1 * v1);
  // det(m + 2e vv) = det(m) (1 + 2e v.m^{-1}.v)
  m.p3 = -(1.0 + 2.0 * e * (-v0sq + v1 * v1 + v2 * v2));
  return m;
}

EllipticMinors ellipticity_minors(const FluidState& s) {
  const Grid2D& g = s.grid();
  EllipticMinors out{Field(g), Field(g), Field(g)};
  for (std::size_t k = 0; k < g.size(); ++k) {
    Minors m = minors_at(s.h[k], s.v1[k], s.v2[k]);
    out.p1[k] = m.p1;
    out.p2[k] = m.p2;
    out.p3[k] = m.p3;
  }
  return out;
}

Field SlabField::slice(int k) const {
  k = ((k % nt) + nt) % nt;
  auto b = v.begin() + std::ptrdiff_t(k) * std::ptrdiff_t(grid.size());
  return Field(grid, std::vector<double>(b, b + grid.size()));
}

void SlabField::set_slice(int k, const Field& f) {
  std::copy(f.data(), f.data() + grid.size(), v.begin() + std::ptrdiff_t(k) * std::ptrdiff_t(grid.size()));
}

SlabCoefficients constant_coefficients(const Grid2D& g, int nt, double dt, const std::array<double, 6>& P) {
  SlabCoefficients c{g, nt, dt, {}};
  for (int p = 0; p < 6; ++p) c.P[p].assign(std::size_t(nt) * g.size(), P[p]);
  return c;
}

namespace {

struct Plans3D {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

const Plans3D& plans3d(int nt, int nx, int ny) {
  static std::mutex m;
  static std::map<std::tuple<int, int, int>, Plans3D> cache;
  std::lock_guard<std::mutex> lock(m);
  auto key = std::make_tuple(nt, nx, ny);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::size_t n = std::size_t(nt) * nx * ny, nc = std::size_t(nt) * nx * (ny / 2 + 1);
  double* r = fftw_alloc_real(n);
  fftw_complex* c = fftw_alloc_complex(nc);
  Plans3D p;
  p.fwd = fftw_plan_dft_r2c_3d(nt, nx, ny, r, c, FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.bwd = fftw_plan_dft_c2r_3d(nt, nx, ny, c, r, FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(r);
  fftw_free(c);
  return cache.emplace(key, p).first->second;
}

void fft3(const SlabCoefficients& c, const std::vector<double>& u, std::vector<cplx>& U) {
  const Plans3D& p = plans3d(c.nt, c.grid.nx, c.grid.ny);
  U.resize(std::size_t(c.nt) * c.grid.spec_size());
  fftw_execute_dft_r2c(p.fwd, const_cast<double*>(u.data()), reinterpret_cast<fftw_complex*>(U.data()));
  const double s = 1.0 / double(u.size());
  for (auto& z : U) z *= s;
}

void ifft3(const SlabCoefficients& c, std::vector<cplx>& U, std::vector<double>& u) {
  const Plans3D& p = plans3d(c.nt, c.grid.nx, c.grid.ny);
  u.resize(std::size_t(c.nt) * c.grid.size());
  // c2r destroys its input
  std::vector<cplx> tmp(U);
  fftw_execute_dft_c2r(p.bwd, reinterpret_cast<fftw_complex*>(tmp.data()), u.data());
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

}  // namespace

SlabOperator::SlabOperator(SlabCoefficients c, TimeScheme scheme) : c_(std::move(c)), scheme_(scheme) {
  if (c_.nt < 3) throw DomainError("slab needs at least 3 time slices");
  for (int p = 0; p < 6; ++p) {
    if (c_.P[p].size() != std::size_t(c_.nt) * c_.grid.size()) throw DomainError("slab coefficient size mismatch");
    double s = 0;
    for (double x : c_.P[p]) s += x;
    Pbar_[p] = s / double(c_.P[p].size());
  }
  const Grid2D& g = c_.grid;
  const auto& k1 = deriv_wavenumbers(g, 1);
  const auto& k2 = deriv_wavenumbers(g, 2);
  symbol_.resize(std::size_t(c_.nt) * g.spec_size());
  symbol_min_ = INFINITY;
  for (int m = 0; m < c_.nt; ++m) {
    double a, b;
    time_symbols(m, a, b);
    for (std::size_t q = 0; q < g.spec_size(); ++q) {
      double s = 1.0 - Pbar_[sym(0, 0)] * b + 2.0 * a * (Pbar_[sym(0, 1)] * k1[q] + Pbar_[sym(0, 2)] * k2[q]) +
                 Pbar_[sym(1, 1)] * k1[q] * k1[q] + 2.0 * Pbar_[sym(1, 2)] * k1[q] * k2[q] +
                 Pbar_[sym(2, 2)] * k2[q] * k2[q];
      symbol_[std::size_t(m) * g.spec_size() + q] = s;
      symbol_min_ = std::min(symbol_min_, s);
    }
  }
  if (!(symbol_min_ > 0)) throw DomainError("frozen elliptic symbol is not positive");
}

void SlabOperator::time_symbols(int m, double& a, double& b) const {
  const int nt = c_.nt;
  const int mt = m <= nt / 2 ? m : m - nt;
  const double dt = c_.dt;
  const double th = kTwoPi * mt / nt;
  switch (scheme_) {
    case TimeScheme::Spectral: {
      double tau = th / dt;
      bool nyq = (nt % 2 == 0) && (2 * m == nt);
      a = nyq ? 0.0 : tau;
      b = -a * a;
      break;
    }
    case TimeScheme::Centered2:
      a = std::sin(th) / dt;
      b = -(2.0 - 2.0 * std::cos(th)) / (dt * dt);
      break;
    case TimeScheme::Centered4:
      a = (8.0 * std::sin(th) - std::sin(2.0 * th)) / (6.0 * dt);
      b = -(30.0 - 32.0 * std::cos(th) + 2.0 * std::cos(2.0 * th)) / (12.0 * dt * dt);
      break;
  }
}

void SlabOperator::apply(const std::vector<double>& u, std::vector<double>& out) const {
  const Grid2D& g = c_.grid;
  const std::size_t ns = g.spec_size();
  const auto& k1 = deriv_wavenumbers(g, 1);
  const auto& k2 = deriv_wavenumbers(g, 2);
  std::vector<cplx> U, D;
  fft3(c_, u, U);
  D.resize(U.size());
  std::vector<double> d;
  out = u;
  for (int a = 0; a < 3; ++a)
    for (int b = a; b < 3; ++b) {
      for (int m = 0; m < c_.nt; ++m) {
        double ta, tb;
        time_symbols(m, ta, tb);
        const cplx* src = U.data() + std::size_t(m) * ns;
        cplx* dst = D.data() + std::size_t(m) * ns;
        for (std::size_t q = 0; q < ns; ++q) {
          // symbols: d_t -> i ta, d_i -> i k_i
          cplx sym_ab;
          double ka = a == 1 ? k1[q] : k2[q], kb = b == 1 ? k1[q] : k2[q];
          if (a == 0 && b == 0)
            sym_ab = tb;
          else if (a == 0)
            sym_ab = -ta * kb;
          else
            sym_ab = -ka * kb;
          dst[q] = sym_ab * src[q];
        }
      }
      ifft3(c_, D, d);
      const std::vector<double>& P = c_.P[sym(a, b)];
      const double mult = a == b ? 1.0 : 2.0;
      for (std::size_t p = 0; p < out.size(); ++p) out[p] -= mult * P[p] * d[p];
    }
}

void SlabOperator::precondition(const std::vector<double>& u, std::vector<double>& out) const {
  std::vector<cplx> U;
  fft3(c_, u, U);
  for (std::size_t q = 0; q < U.size(); ++q) U[q] /= symbol_[q];
  ifft3(c_, U, out);
}

SolverDiagnostics gmres_solve(const SlabOperator& op, const std::vector<double>& b, std::vector<double>& x,
                              const SolverOptions& opt) {
  SolverDiagnostics dg;
  const auto& c = op.coefficients();
  dg.slab_extent = c.nt * c.dt;
  dg.preconditioner_symbol_min = op.symbol_min();
  const std::size_t n = b.size();
  if (x.size() != n) x.assign(n, 0.0);
  const int max_iter = opt.max_iter > 0 ? opt.max_iter : 10 * (c.nt + c.grid.nx);
  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    dg.converged = true;
    return dg;
  }
  const int mr = std::max(2, opt.restart);
  std::vector<double> r(n), Ax(n), z(n), w(n);
  auto residual = [&] {
    op.apply(x, Ax);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - Ax[i];
    return norm2(r);
  };
  double rn = residual();
  dg.history.push_back(rn / bnorm);
  while (dg.iterations < max_iter && rn / bnorm > opt.tol) {
    std::vector<std::vector<double>> V(mr + 1, std::vector<double>(n));
    std::vector<std::vector<double>> H(mr + 1, std::vector<double>(mr, 0.0));
    std::vector<double> cs(mr), sn(mr), gvec(mr + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) V[0][i] = r[i] / rn;
    gvec[0] = rn;
    int j = 0;
    for (; j < mr && dg.iterations < max_iter; ++j) {
      op.precondition(V[j], z);
      op.apply(z, w);
      for (int i = 0; i <= j; ++i) {
        H[i][j] = dot(w, V[i]);
        for (std::size_t p = 0; p < n; ++p) w[p] -= H[i][j] * V[i][p];
      }
      H[j + 1][j] = norm2(w);
      if (H[j + 1][j] > 0)
        for (std::size_t p = 0; p < n; ++p) V[j + 1][p] = w[p] / H[j + 1][j];
      for (int i = 0; i < j; ++i) {
        double t = cs[i] * H[i][j] + sn[i] * H[i + 1][j];
        H[i + 1][j] = -sn[i] * H[i][j] + cs[i] * H[i + 1][j];
        H[i][j] = t;
      }
      double den = std::hypot(H[j][j], H[j + 1][j]);
      cs[j] = H[j][j] / den;
      sn[j] = H[j + 1][j] / den;
      H[j][j] = den;
      H[j + 1][j] = 0.0;
      gvec[j + 1] = -sn[j] * gvec[j];
      gvec[j] = cs[j] * gvec[j];
      ++dg.iterations;
      double est = std::fabs(gvec[j + 1]) / bnorm;
      if (est > dg.history.back() * (1 + 1e-12)) dg.monotone = false;
      dg.history.push_back(est);
      if (est <= 0.1 * opt.tol) {
        ++j;
        break;
      }
    }
    // back substitution and update x += M^{-1} V y
    std::vector<double> y(j, 0.0);
    for (int i = j - 1; i >= 0; --i) {
      double s = gvec[i];
      for (int k = i + 1; k < j; ++k) s -= H[i][k] * y[k];
      y[i] = s / H[i][i];
    }
    std::fill(w.begin(), w.end(), 0.0);
    for (int i = 0; i < j; ++i)
      for (std::size_t p = 0; p < n; ++p) w[p] += y[i] * V[i][p];
    op.precondition(w, z);
    for (std::size_t p = 0; p < n; ++p) x[p] += z[p];
    rn = residual();
  }
  dg.final_residual = rn / bnorm;
  dg.converged = dg.final_residual <= opt.tol;
  return dg;
}

Field VMinusSolution::at(int a, int n) const { return v[a].slice(index(n)); }

VMinusView VMinusSolution::view() const {
  VMinusView vw;
  for (int a = 0; a < 3; ++a) vw.comp[a] = [this, a](int n) { return at(a, n); };
  return vw;
}

int taper_source(int k, int N) {
  if (k < N) return N - k;
  if (k <= 2 * N) return k - N;
  return 3 * N - k;
}

double taper_ramp(int k, int N) {
  if (k < N) return double(k) / N;
  if (k <= 2 * N) return 1.0;
  return double(3 * N - k) / N;
}

VMinusSolution solve_vminus(const Series& s, int n0, int N, const SolverOptions& opt, double scale) {
  if (N < 7) throw DomainError("solve_vminus: slab needs at least 8 slices");
  s.require_interior(n0, 2, "solve_vminus");
  s.require_interior(n0 + N, 2, "solve_vminus");
  const Grid2D& g = s.grid();
  const int M = 3 * N;
  const double dt = s.dt();
  VMinusSolution sol;
  sol.n0 = n0;
  sol.N = N;

  // original-slice source and state
  std::vector<Vec3> F(N + 1);
  for (int q = 0; q <= N; ++q) F[q] = curl_w_from(s.kinematics(n0 + q, true));

  SlabCoefficients coef{g, M, dt, {}};
  for (auto& P : coef.P) P.resize(std::size_t(M) * g.size());
  for (int a = 0; a < 3; ++a) sol.rhs[a] = SlabField(g, M, dt);
  for (int k = 0; k < M; ++k) {
    const int src = taper_source(k, N);
    const double ramp = taper_ramp(k, N);
    const FluidState& st = s.trajectory()[n0 + src];
    for (std::size_t p = 0; p < g.size(); ++p) {
      const double h = ramp * st.h[p], v1 = ramp * st.v1[p], v2 = ramp * st.v2[p];
      const double e = std::exp(-2.0 * h);
      const double v[3] = {std::sqrt(std::exp(2.0 * h) + v1 * v1 + v2 * v2), v1, v2};
      const std::size_t idx = std::size_t(k) * g.size() + p;
      for (int a = 0; a < 3; ++a)
        for (int b = a; b < 3; ++b) coef.P[sym(a, b)][idx] = minkowski(a, b) + 2.0 * e * v[a] * v[b];
    }
    for (int a = 0; a < 3; ++a) sol.rhs[a].set_slice(k, (scale * ramp) * F[src][a]);
  }
  SlabOperator op(std::move(coef), opt.scheme);
  for (int a = 0; a < 3; ++a) {
    sol.v[a] = SlabField(g, M, dt);
    sol.diag[a] = gmres_solve(op, sol.rhs[a].v, sol.v[a].v, opt);
  }
  return sol;
}

Vec3 vplus(const Series& s, const VMinusSolution& sol, int n) {
  Vec3 out;
  for (int a = 0; a < 3; ++a) out[a] = s.v(n, a) - sol.at(a, n);
  return out;
}

DecompositionReport decompose(const Series& s, const VMinusSolution& sol) {
  DecompositionReport r;
  const int n = sol.n0 + sol.N / 2;
  r.slice = n;
  Vec3 w = vorticity_from(s.kinematics(n, false));
  auto vec_norm = [](const Vec3& F, double sp) {
    double q = 0;
    for (const auto& f : F) {
      double x = sobolev_norm(f, sp);
      q += x * x;
    }
    return std::sqrt(q);
  };
  Vec3 vm, dvm;
  for (int a = 0; a < 3; ++a) {
    vm[a] = sol.at(a, n);
    dvm[a] = stencil_d1([&sol, a](int m) { return sol.at(a, m); }, n, s.dt());
  }
  r.vminus_l2 = l2_norm(vm);
  r.w_l2 = l2_norm(w);
  for (double a : {0.0, 0.25, 0.5}) {
    r.a.push_back(a);
    double wn = vec_norm(w, 1.0 + a);
    r.ratio_v.push_back(wn > 0 ? vec_norm(vm, 2.0 + a) / wn : 0.0);
    r.ratio_dtv.push_back(wn > 0 ? vec_norm(dvm, 1.0 + a) / wn : 0.0);
  }
  return r;
}

}  // namespace gv
