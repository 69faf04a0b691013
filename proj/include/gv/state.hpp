#pragma once

#include <array>

#include "gv/eos.hpp"
#include "gv/grid.hpp"

namespace gv {

// Good variables: log-enthalpy h and spatial rescaled velocity (v1, v2).
// v0 is never stored; it is lifted from e^{-2h} v^a v_a = -1.
struct FluidState {
  Field h, v1, v2;
  double time = 0.0;

  const Grid2D& grid() const { return h.grid(); }
  Field v0() const;
};

FluidState constant_state(const Grid2D& g, double h, double v1, double v2);

Field lift_velocity(const Field& h, const Field& v1, const Field& v2);
// max over the grid of |e^{-2h} v^a v_a + 1|
double constraint_defect(const FluidState& s);
// min over the grid of e^{2h} = (v0)^2 - |v|^2
double min_e2h(const FluidState& s);

// index of (a,b) in the packed symmetric order 00,01,02,11,12,22
constexpr int sym(int a, int b) {
  if (a > b) { int t = a; a = b; b = t; }
  return a == 0 ? b : (a == 1 ? 2 + b : 5);
}

constexpr double minkowski(int a, int b) { return a != b ? 0.0 : (a == 0 ? -1.0 : 1.0); }

double theta_at(double h, double v0, const EquationOfState& eos);

struct PointMetric {
  double gi[3][3];  // contravariant
  double gc[3][3];  // covariant
  double theta;
};

PointMetric metric_at(double h, double v0, double v1, double v2, const EquationOfState& eos);
// Cofactor inverse of a symmetric 3x3; returns false when |det| is tiny relative to the entries.
bool invert3(const double m[3][3], double out[3][3]);

struct AcousticMetric {
  std::array<Field, 6> ginv;  // packed by sym()
  std::array<Field, 6> gcov;
  Field theta;
};

Field compute_theta(const FluidState& s, const EquationOfState& eos);
AcousticMetric acoustic_metric(const FluidState& s, const EquationOfState& eos);

}  // namespace gv
