#pragma once

#include <string>
#include <vector>

#include "gv/series.hpp"

namespace gv {

struct EnergyParts {
  double h_hs = 0;  // ||h||_{H^s}
  double v_hs = 0;  // ||v - (1,0,0)||_{H^s}
  double w_hs = 0;  // ||w||_{H^{s'-1/4}}
  double dw_l8 = 0;  // || |grad w| ||_{L^8}
};

struct EnergyReport {
  double t = 0;
  double E = 0;
  EnergyParts parts;
  double strich_accum = 0;  // int_0^t ||dh, dv||_inf
  double deriv_sup = 0;  // ||dh, dv||_inf at t
};

void check_energy_exponents(double s, double s_prime);

// grad w is the spatial gradient, dw[c][i] = d_i w^c for i = 1, 2 (index 0 unused)
EnergyReport total_energy(const FluidState& state, const Vec3& w, const Mat3F& dw, double s, double s_prime);

// w at a single state with d_t taken from the evolution right-hand side
Kinematics rate_kinematics(const FluidState& s, const EquationOfState& eos, const EvolutionOptions& opt = {});
double derivative_sup(const Kinematics& k);

std::vector<EnergyReport> energy_series(const Trajectory& tr, const EquationOfState& eos, double s, double s_prime,
                                        const EvolutionOptions& opt = {});

struct GronwallReport {
  double a = 0;
  double factor = 3;
  std::vector<double> t, K, accum;
  double K0 = 1;
  double K_max = 1;  // fitted envelope constant
  bool violation = false;
};

// K(t) = ||(h, v-(1,0,0))(t)||_{H^a} / (||(h, v-(1,0,0))(0)||_{H^a} exp(int ||dh,dv||_inf))
GronwallReport gronwall_audit(const Trajectory& tr, const EquationOfState& eos, double a, double factor = 3.0,
                              const EvolutionOptions& opt = {});

struct StrichartzRow {
  int j = 0;
  double dv = 0;  // ||P_j dv||_{L^4_t L^inf_x}
  double dh = 0;
};

struct StrichartzTable {
  std::vector<StrichartzRow> rows;
  double dv_total = 0;  // ||dv||_{L^4 L^inf}
  double dh_total = 0;
  double beta_v = 0;  // tail decay exponent, log2 norm ~ -beta j
  double beta_h = 0;
  int tail_from = 0;
};

// slices 0, stride, 2 stride, ...; time derivatives from the right-hand side
StrichartzTable dyadic_strichartz_table(const Trajectory& tr, const EquationOfState& eos, int stride = 1,
                                        const EvolutionOptions& opt = {});
// least-squares slope of y on x
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

struct CascadeEntry {
  int j = 0;
  double T = 0;
  FluidState data;
  Vec3 w;
  double diff_l2 = 0;  // ||h0_{j+1} - h0_j||_{L^2} (0 for the last entry)
  double bernstein = 0;  // diff_l2 2^{s j} / ||h0||_{Hdot^s}
};

struct CascadeSchedule {
  double M0 = 1;
  double delta1 = 0.005;
  double C = 1;
  double s = 1.8;
  int jmax_requested = 0;
  int jmax_used = 0;
  std::vector<CascadeEntry> entries;
  std::vector<std::string> warnings;
  double bernstein_max = 0;
};

double cascade_time(int j, double M0, double delta1, double C);

// h0j = P_{<=j} h0, v0j = P_{<=j} v0 (spatial parts; v^0 re-lifted), w0j from the curl of v0j
CascadeSchedule cascade_prepare(const FluidState& data, const EquationOfState& eos, double M0, double delta1, int jmax,
                                double C = 1.0, double s = 1.8);

}  // namespace gv
