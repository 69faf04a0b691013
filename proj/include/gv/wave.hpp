#pragma once

#include "gv/series.hpp"
#include "gv/vorticity.hpp"

namespace gv {

struct QuadraticSources {
  Field D;
  Vec3 Q;
};

QuadraticSources quadratic_sources(const Kinematics& k, const EquationOfState& eos);
QuadraticSources quadratic_sources(const Series& s, int n, const EquationOfState& eos);

// -e^{-2h} w^b w_b - e^{-2h} d_a v^b d^a v_b - 2 d_a h d^a h
Field stiff_D(const Kinematics& k);

using MetricFields = std::array<Field, 6>;  // packed by sym()

// g^{ab} d_ab f from a table of second derivatives
Field box_g(const Mat3F& d2f, const MetricFields& ginv);
// spectral in space, 4th-order stencils in time; requires 2 <= n <= len-3
Field box_g(const SliceFn& f, int n, double dt, const MetricFields& ginv);

// d_a d_b of a slice function at n
Mat3F second_derivatives(const SliceFn& f, int n, double dt);

// eps^{abc} d_b w_c computed from second derivatives of v at the slice
Vec3 curl_w_from(const Kinematics& k);

struct WaveResiduals {
  Field res_h;
  Vec3 res_v;
  bool has_vplus = false;
  Vec3 res_vplus;  // exact second-order form v^b v^c d_bc v_-
  Vec3 res_vplus_tt;  // (v0)^2 TT v_- variant
  // L2 sizes of box_g h, box_g v, box_g v_+ (scales for relative residuals)
  double box_h_l2 = 0, box_v_l2 = 0, box_vplus_l2 = 0;
};

// v_- given as per-component slice functions over the same slices as the series
struct VMinusView {
  std::array<SliceFn, 3> comp;
};

WaveResiduals wave_residuals(const Series& s, int n, const EquationOfState& eos, const VMinusView* vminus = nullptr);

struct StiffReport {
  double divv_l2 = 0;  // d_k v^k
  double D_agreement = 0;  // max pointwise |D general - D stiff|
  double Q_max = 0;
  double boxv_l2 = 0;  // || box v || (Minkowski)
  double w_l2 = 0;
  bool metric_minkowski = false;
};
StiffReport stiff_checks(const Series& s, int n, const EquationOfState& eos);
// pure algebraic part on a single slice with externally supplied time derivatives
StiffReport stiff_algebra(const Kinematics& k, const EquationOfState& eos);

}  // namespace gv
