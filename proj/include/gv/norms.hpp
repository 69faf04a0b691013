#pragma once

#include <vector>

#include "gv/grid.hpp"

namespace gv {

// Smooth radial bump: 1 on r <= 1/2, 0 on r >= 1.
double lp_bump(double r);
// zeta(r) = bump(r/2) - bump(r), supported in [1/2, 2]
double lp_zeta(double r);

struct BandRange {
  int jmin;
  int jmax;
};
// Bands whose multipliers sum to the identity on every nonzero grid mode.
BandRange band_range(const Grid2D& g);

struct DyadicBand {
  int j;
  Field field;
};

DyadicBand lp_project(const Field& f, int j);
std::vector<DyadicBand> lp_decompose(const Field& f);
// P_{<=j}: multiplier bump(|xi| / 2^{j+1}), zero mode included
Field lp_low(const Field& f, int j);

// Bessel-potential H^s norm with continuum cell weight.
double sobolev_norm(const Field& f, double s);
// sum over nonzero modes of |xi|^{2s}|f^|^2, continuum weight
double homogeneous_sobolev_norm(const Field& f, double s);
// (sum_j (2^{js} ||P_j f||_inf)^q)^{1/q}; q <= 0 means q = infinity
double besov_norm(const Field& f, double s, double q);
// sup_j 2^{j delta} ||P_j f||_inf + ||f||_inf
double holder_proxy(const Field& f, double delta);
// (int |f|^p dx)^{1/p} by grid quadrature
double lp_norm(const Field& f, double p);

// Composite Simpson on uniform samples; a 3/8 panel closes an odd interval count.
double simpson(const std::vector<double>& y, double dt);

struct MixedNorms {
  double l4t_linfx = 0;
  double l4t_besov = 0;
  double linft_hs = 0;
  std::vector<double> l8x;  // per time sample
};

MixedNorms mixed_norms(const std::vector<Field>& series, double dt, double delta, double s);

}  // namespace gv
