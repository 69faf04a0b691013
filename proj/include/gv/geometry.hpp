#pragma once

#include <array>
#include <map>
#include <memory>
#include <vector>

#include "gv/hyperbolic.hpp"
#include "gv/spectral.hpp"

namespace gv {

// theta = sign * e_axis, axis in {1,2}; theta_perp = (theta2, -theta1)
struct Direction {
  int axis = 2;
  int sign = 1;

  int other() const { return axis == 1 ? 2 : 1; }
  // theta_perp = tau * e_other
  int tau() const { return axis == 1 ? -sign : sign; }
};

using P3 = std::array<double, 3>;

// Graph hypersurface {theta.x = phi(t, x')} sampled every `stride` slices on the transverse grid line.
struct NullFoliation {
  Direction dir;
  double r = 0;
  double c_bg = 1;  // background plane speed
  int stride = 2;
  std::vector<int> slices;
  std::vector<double> t;
  std::vector<std::vector<double>> phi;  // phi[k][j], j along the transverse axis
  std::vector<std::vector<double>> phi_t;
  double null_defect = 0;  // max |g(dr, dr)| over samples
  int n_transverse = 0;
  double l_transverse = 0;
  double l_normal = 0;
};

// Per-slice metric data interpolated onto arbitrary points of grid lines along one axis.
class LineMetric {
 public:
  LineMetric(const FluidState& s, const EquationOfState& eos, int axis);
  // g^{ab} at the point x_axis = x on the line with transverse index j
  std::array<double, 6> ginv(int j, double x) const;

 private:
  Grid2D g_;
  int axis_;
  std::array<std::vector<std::vector<cplx>>, 6> coef_;
};

NullFoliation evolve_foliation(const Trajectory& tr, const EquationOfState& eos, Direction dir, double r,
                               int n_start = 0, int n_end = -1);

struct FrameSample {
  std::vector<P3> l, lbar, e1, X;
  std::vector<double> sigma, xnorm;
  std::vector<std::array<double, 6>> gi, gc;
  double gram_defect = 0;
  double dt_l_defect = 0;  // |dt(l) - 1|
};

struct NullFrame {
  std::vector<FrameSample> samples;
  double gram_defect = 0;
};

NullFrame build_null_frame(const Trajectory& tr, const EquationOfState& eos, const NullFoliation& f);

struct ChiReport {
  std::vector<bool> valid;  // chi available at sample k
  std::vector<std::vector<double>> chi;
  std::vector<std::vector<double>> lsigma;  // l(ln sigma) = <D_l lbar, l>/2
  std::vector<double> chi_sup;
  std::vector<int> audit_samples;
  std::vector<double> audit_l2;  // per audited sample
  std::vector<double> audit_scale;  // l2 of |l(chi)| + chi^2 + |curvature term| at the same samples
  double audit_max = 0;
  double chi_max = 0;
};

ChiReport connection_chi(const Trajectory& tr, const EquationOfState& eos, const NullFoliation& f,
                         const NullFrame& frame);

// R_{abcd} X^a Y^b Z^c W^d from metric values, first and second derivatives at a point
struct PointCurvature {
  std::array<double, 6> gc, gi;
  std::array<std::array<double, 6>, 3> dg;  // dg[c][sym] = d_c g_{..}
  std::array<std::array<double, 6>, 6> d2g;  // d2g[sym(c,d)][sym(a,b)]
};
double christoffel_first(const PointCurvature& p, int n, int a, int b);
double riemann(const PointCurvature& p, const P3& X, const P3& Y, const P3& Z, const P3& W);

struct FoliationNorm {
  double s0 = 0;
  double value = 0;
};
std::vector<FoliationNorm> foliation_norms(const NullFoliation& f, const std::vector<double>& s0 = {1.8, 1.85});

// g-inner product with packed covariant metric
double gdot(const std::array<double, 6>& gc, const P3& a, const P3& b);

}  // namespace gv
