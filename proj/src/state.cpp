#include "gv/state.hpp"

#include <cmath>
#include <string>

#include "gv/simd.hpp"

namespace gv {

Field FluidState::v0() const { return lift_velocity(h, v1, v2); }

FluidState constant_state(const Grid2D& g, double h, double v1, double v2) {
  return {Field(g, h), Field(g, v1), Field(g, v2), 0.0};
}

Field lift_velocity(const Field& h, const Field& v1, const Field& v2) {
  Field e2h(h.grid()), v0(h.grid());
  for (std::size_t k = 0; k < h.size(); ++k) e2h[k] = std::exp(2.0 * h[k]);
  simd::kernels().lift_v0(v0.data(), e2h.data(), v1.data(), v2.data(), h.size());
  return v0;
}

double constraint_defect(const FluidState& s) {
  Field v0 = s.v0();
  double m = 0.0;
  for (std::size_t k = 0; k < v0.size(); ++k) {
    double c = std::exp(-2.0 * s.h[k]) * (-v0[k] * v0[k] + s.v1[k] * s.v1[k] + s.v2[k] * s.v2[k]);
    m = std::max(m, std::fabs(c + 1.0));
  }
  return m;
}

double min_e2h(const FluidState& s) {
  double m = INFINITY;
  for (std::size_t k = 0; k < s.h.size(); ++k) m = std::min(m, std::exp(2.0 * s.h[k]));
  return m;
}

double theta_at(double h, double v0, const EquationOfState& eos) {
  double c2 = eos.cs2(h);
  double den = c2 - std::exp(-2.0 * h) * (c2 - 1.0) * v0 * v0;
  if (!(den > 0)) throw DomainError("Theta denominator <= 0 (hyperbolicity violated)");
  return 1.0 / den;
}

bool invert3(const double m[3][3], double out[3][3]) {
  double c00 = m[1][1] * m[2][2] - m[1][2] * m[2][1];
  double c01 = m[1][2] * m[2][0] - m[1][0] * m[2][2];
  double c02 = m[1][0] * m[2][1] - m[1][1] * m[2][0];
  double det = m[0][0] * c00 + m[0][1] * c01 + m[0][2] * c02;
  double scale = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) scale = std::max(scale, std::fabs(m[a][b]));
  if (!(std::fabs(det) > 1e-14 * scale * scale * scale)) return false;
  double id = 1.0 / det;
  out[0][0] = c00 * id;
  out[1][0] = c01 * id;
  out[2][0] = c02 * id;
  out[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) * id;
  out[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) * id;
  out[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) * id;
  out[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) * id;
  out[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) * id;
  out[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) * id;
  return true;
}

PointMetric metric_at(double h, double v0, double v1, double v2, const EquationOfState& eos) {
  PointMetric pm;
  const double c2 = eos.cs2(h);
  const double e = std::exp(-2.0 * h);
  const double th = theta_at(h, v0, eos);
  const double v[3] = {v0, v1, v2};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) pm.gi[a][b] = th * (c2 * minkowski(a, b) + e * (c2 - 1.0) * v[a] * v[b]);
  pm.gi[0][0] = -1.0;  // exact by the choice of Theta
  pm.theta = th;
  if (!invert3(pm.gi, pm.gc)) throw DomainError("acoustic metric is singular");
  return pm;
}

Field compute_theta(const FluidState& s, const EquationOfState& eos) {
  Field v0 = s.v0(), th(s.grid());
  for (std::size_t k = 0; k < th.size(); ++k) th[k] = theta_at(s.h[k], v0[k], eos);
  return th;
}

AcousticMetric acoustic_metric(const FluidState& s, const EquationOfState& eos) {
  const Grid2D& g = s.grid();
  AcousticMetric m;
  for (int c = 0; c < 6; ++c) {
    m.ginv[c] = Field(g);
    m.gcov[c] = Field(g);
  }
  m.theta = Field(g);
  Field v0 = s.v0();
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      std::size_t k = std::size_t(i) * g.ny + j;
      PointMetric pm;
      try {
        pm = metric_at(s.h[k], v0[k], s.v1[k], s.v2[k], eos);
      } catch (const DomainError& e) {
        throw DomainError(std::string(e.what()) + " at grid point (" + std::to_string(i) + ", " +
                          std::to_string(j) + ")");
      }
      for (int a = 0; a < 3; ++a)
        for (int b = a; b < 3; ++b) {
          m.ginv[sym(a, b)][k] = pm.gi[a][b];
          m.gcov[sym(a, b)][k] = pm.gc[a][b];
        }
      m.theta[k] = pm.theta;
    }
  return m;
}

}  // namespace gv
