#pragma once

#include <map>

#include "gv/series.hpp"

namespace gv {

// eps^{012} = +1. The lowered symbol is numerically equal to the raised one;
// flipped() lowers with the Minkowski metric instead (negative control).
class LeviCivita {
 public:
  explicit LeviCivita(bool flipped = false) : flipped_(flipped) {}
  static int up(int a, int b, int c) {
    if (a == b || b == c || a == c) return 0;
    return ((b - a + 3) % 3 == 1) ? 1 : -1;
  }
  int down(int a, int b, int c) const { return flipped_ ? -up(a, b, c) : up(a, b, c); }
  bool flipped() const { return flipped_; }

 private:
  bool flipped_;
};

struct ContractionReport {
  int checked = 0;
  int mismatches = 0;
  bool ok() const { return mismatches == 0; }
};
// eps_{a i 0} eps^{a b c} == delta^b_i delta^c_0 - delta^b_0 delta^c_i for i in {1,2}
ContractionReport check_contraction(const LeviCivita& eps);

// eps^{abc} d_b X_c with X given by contravariant components and D[c][b] = d_b X^c
Vec3 curl_of(const Mat3F& D);

Vec3 vorticity_from(const Kinematics& k);

// W^a = eps^{abc} d_b w_c + (1 - c_s^{-2}) eps^{abc} w_c d_b h; dw[c][b] = d_b w^c
Vec3 compute_W(const Field& h, const Vec3& dh, const Vec3& w, const Mat3F& dw, const EquationOfState& eos);

struct VorticityPair {
  Vec3 w, W;
};

// Memoized w, dw, W on the slices of a trajectory.
class VorticitySeries {
 public:
  VorticitySeries(const Series& s, const EquationOfState& eos) : s_(&s), eos_(eos) {}

  const Series& series() const { return *s_; }
  const EquationOfState& eos() const { return eos_; }
  const Vec3& w(int n) const;  // needs slices n-2..n+2
  const Mat3F& dw(int n) const;  // needs n-4..n+4
  const Vec3& W(int n) const;  // needs n-4..n+4
  Mat3F dW(int n) const;  // needs n-6..n+6
  Field div_w(int n) const;

 private:
  const Series* s_;
  EquationOfState eos_;
  mutable std::map<int, Vec3> w_, W_;
  mutable std::map<int, Mat3F> dw_;
};

// v^k d_k w^a - w^k d^a v_k + w^a d_k v^k
Vec3 transport_residual_w(const VorticitySeries& vs, int n);
Vec3 transport_residual_w(const Kinematics& k, const Vec3& w, const Mat3F& dw);
// v^k d_k W^a minus the full right side (reduces to the two-term form when c_s = 1)
Vec3 transport_residual_W(const VorticitySeries& vs, int n);

struct HodgeReport {
  ContractionReport contraction;
  double div_recon_l2 = 0;  // residual of the div(w spatial) reconstruction
  double grad_recon_l2 = 0;  // residual of the d_i w_0 reconstruction (max over i)
  double w_l2 = 0;
};
HodgeReport hodge_identity_checks(const VorticitySeries& vs, int n, const LeviCivita& eps);

// sqrt(sum_a ||F^a||^2)
double l2_norm(const Vec3& F);

}  // namespace gv
