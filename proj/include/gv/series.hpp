#pragma once

#include <array>
#include <functional>
#include <map>

#include "gv/hyperbolic.hpp"

namespace gv {

// 4th-order centered stencils on slices n-2..n+2
inline constexpr double kStencilD1[5] = {1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12};
inline constexpr double kStencilD2[5] = {-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12};

using SliceFn = std::function<Field(int)>;

Field stencil_d1(const SliceFn& q, int n, double dt);
Field stencil_d2(const SliceFn& q, int n, double dt);

using Vec3 = std::array<Field, 3>;
using Mat3F = std::array<Vec3, 3>;

// Space-time derivatives of (h, v^a) at one slice. Index 0 is time.
struct Kinematics {
  double time = 0;
  Field h;
  Vec3 v;
  Vec3 dh;  // d_a h
  Mat3F dv;  // dv[k][a] = d_a v^k
  bool second = false;
  Mat3F d2h;  // d2h[a][b]
  std::array<Mat3F, 3> d2v;  // d2v[k][a][b]

  const Grid2D& grid() const { return h.grid(); }
  Field divv() const;
};

// Derivatives taken from a trajectory: spectral in space, stencils in time.
class Series {
 public:
  explicit Series(const Trajectory& tr) : tr_(&tr) {}

  const Trajectory& trajectory() const { return *tr_; }
  int size() const { return tr_->size(); }
  double dt() const { return tr_->dt; }
  const Grid2D& grid() const { return tr_->grid(); }

  // v^a at slice n (a = 0 lifted)
  const Field& v(int n, int a) const;
  const Field& h(int n) const { return (*tr_)[n].h; }

  // d_t of q at n; requires 2 <= n <= size-3
  Field ddt(const SliceFn& q, int n) const;
  Field d2dt2(const SliceFn& q, int n) const;
  void require_interior(int n, int radius, const char* what) const;

  Kinematics kinematics(int n, bool second = true) const;

 private:
  const Trajectory* tr_;
  mutable std::map<int, Field> v0_;
};

// Same quantities at a single slice with d_t supplied externally (e.g. from the evolution rhs).
Kinematics kinematics_from_rates(const FluidState& s, const std::array<Field, 3>& rate);

}  // namespace gv
