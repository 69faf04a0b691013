#include "gv/series.hpp"

#include <cmath>
#include <string>

#include "gv/spectral.hpp"

namespace gv {

namespace {

Field stencil(const SliceFn& q, int n, const double* c, double scale) {
  Field acc;
  for (int s = 0; s < 5; ++s) {
    if (c[s] == 0.0) continue;
    Field f = q(n + s - 2);
    if (acc.size() == 0) acc = Field(f.grid());
    acc = lincomb(1.0, acc, c[s] * scale, f);
  }
  return acc;
}

}  // namespace

Field stencil_d1(const SliceFn& q, int n, double dt) { return stencil(q, n, kStencilD1, 1.0 / dt); }
Field stencil_d2(const SliceFn& q, int n, double dt) { return stencil(q, n, kStencilD2, 1.0 / (dt * dt)); }

Field Kinematics::divv() const { return dv[0][0] + dv[1][1] + dv[2][2]; }

const Field& Series::v(int n, int a) const {
  if (n < 0 || n >= size()) throw DomainError("slice " + std::to_string(n) + " outside the trajectory");
  const FluidState& s = (*tr_)[n];
  if (a == 1) return s.v1;
  if (a == 2) return s.v2;
  auto it = v0_.find(n);
  if (it == v0_.end()) it = v0_.emplace(n, s.v0()).first;
  return it->second;
}

void Series::require_interior(int n, int radius, const char* what) const {
  if (n < radius || n > size() - 1 - radius)
    throw DomainError(std::string(what) + ": slice " + std::to_string(n) + " needs " + std::to_string(radius) +
                      " slices on each side (trajectory has " + std::to_string(size()) + ")");
}

Field Series::ddt(const SliceFn& q, int n) const {
  require_interior(n, 2, "time derivative");
  return stencil_d1(q, n, dt());
}

Field Series::d2dt2(const SliceFn& q, int n) const {
  require_interior(n, 2, "time derivative");
  return stencil_d2(q, n, dt());
}

Kinematics Series::kinematics(int n, bool second) const {
  require_interior(n, 2, "kinematics");
  const Grid2D& g = grid();
  Kinematics k;
  k.time = (*tr_)[n].time;
  k.second = second;
  k.h = h(n);
  for (int a = 0; a < 3; ++a) k.v[a] = v(n, a);

  auto fill = [&](const SliceFn& q, const Field& f0, Vec3& d1, Mat3F* d2) {
    Spectrum sp = fft(f0);
    d1[1] = derivative_from_spectrum(sp, g, 1);
    d1[2] = derivative_from_spectrum(sp, g, 2);
    d1[0] = ddt(q, n);
    if (!d2) return;
    Mat3F& m = *d2;
    m[0][0] = d2dt2(q, n);
    for (int a = 1; a < 3; ++a)
      for (int b = a; b < 3; ++b) m[a][b] = m[b][a] = derivative2_from_spectrum(sp, g, a, b);
    Spectrum st = fft(d1[0]);
    for (int a = 1; a < 3; ++a) m[0][a] = m[a][0] = derivative_from_spectrum(st, g, a);
  };

  fill([this](int m) { return h(m); }, k.h, k.dh, second ? &k.d2h : nullptr);
  for (int c = 0; c < 3; ++c) {
    Vec3 d;
    fill([this, c](int m) { return v(m, c); }, k.v[c], d, second ? &k.d2v[c] : nullptr);
    k.dv[c] = d;
  }
  return k;
}

Kinematics kinematics_from_rates(const FluidState& s, const std::array<Field, 3>& rate) {
  const Grid2D& g = s.grid();
  Kinematics k;
  k.time = s.time;
  k.h = s.h;
  k.v = {s.v0(), s.v1, s.v2};
  Field e2h(g);
  for (std::size_t i = 0; i < g.size(); ++i) e2h[i] = std::exp(2.0 * s.h[i]);
  Field v0t(g);
  for (std::size_t i = 0; i < g.size(); ++i)
    v0t[i] = (e2h[i] * rate[0][i] + s.v1[i] * rate[1][i] + s.v2[i] * rate[2][i]) / k.v[0][i];
  const Field* src[4] = {&s.h, &k.v[0], &s.v1, &s.v2};
  const Field* tdot[4] = {&rate[0], &v0t, &rate[1], &rate[2]};
  for (int q = 0; q < 4; ++q) {
    Spectrum sp = fft(*src[q]);
    Vec3& d = q == 0 ? k.dh : k.dv[q - 1];
    d[0] = *tdot[q];
    d[1] = derivative_from_spectrum(sp, g, 1);
    d[2] = derivative_from_spectrum(sp, g, 2);
  }
  return k;
}

}  // namespace gv
