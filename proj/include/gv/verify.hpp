#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gv/check.hpp"
#include "gv/config.hpp"
#include "gv/diagnostics.hpp"
#include "gv/elliptic.hpp"

namespace gv {

CheckResult check_constraint(const Trajectory& tr, double tol = 1e-14);
CheckResult check_energy(const std::vector<EnergyReport>& series);
CheckResult check_gronwall(const GronwallReport& g);

// minors of P over every slice of a trajectory
CheckResult check_minors(const Trajectory& tr, double tol = 1e-12);
// random constrained points |h| <= hmax, |v| <= vmax against an explicit 3x3 determinant oracle
CheckResult check_ellipticity_certificate(int count = 1000, std::uint64_t seed = 7, double hmax = 1.0,
                                          double vmax = 5.0, double tol = 1e-12);

// eps contraction and the two vorticity reconstructions at the central slice; `flipped` is the negative-control hook
CheckResult check_hodge(const Trajectory& tr, const EquationOfState& eos, bool flipped = false);
// ||d_a w^a|| / ||w|| at the central slice
CheckResult check_divergence_free(const Trajectory& tr, const EquationOfState& eos, double tol = 1e-8);

// D two-formula agreement, Q = 0, Minkowski metric; box v = 0 when irrotational
CheckResult check_stiff(const Trajectory& tr, const EquationOfState& eos, bool irrotational);

// foliations in the four axis directions through r: Gram defect, null defect, chi audit
CheckResult check_frame(const Trajectory& tr, const EquationOfState& eos, double r = 3.141592653589793,
                        double tol = 1e-8);
// exact planes at speed 1 (A = 1) and speed c_s(0) on the rest background
CheckResult check_plane_speeds(double c0sq = 0.5, double tol = 1e-6);

// phase speed of the (1,0) mode of h against c_s(0)
CheckResult check_phase_speed(const Trajectory& tr, const EquationOfState& eos, double tol = 0.01);
CheckResult check_strichartz(const Trajectory& tr, const EquationOfState& eos, int stride = 1);

// single space-time mode on frozen coefficients vs the closed-form symbol inverse
CheckResult check_elliptic_oracle(double tol = 1e-9);

// ladder ratios, saturation, Bernstein shape (constant <= 1)
CheckResult check_cascade(const FluidState& data, const EquationOfState& eos, double s, double delta1,
                          double M0 = 1.0);

struct ConvergenceRow {
  std::string scenario;
  int nx = 0;
  double dt = 0;
  std::string equation;
  double l2 = 0;  // root mean square over the common interior times
  double relative = 0;  // l2 / size of the box term
  double order = 0;  // observed order (fine row only)
};

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
  std::vector<SolverDiagnostics> solver;  // v_- solves, coarse then fine
  bool solver_converged = true;
  double solver_residual = 0;
  double seconds = 0;
};

// Preset data on nx_coarse and 2 nx_coarse with paired dt (0.4 dx and half of it) over one slab.
// Slab: coarse slices 2..10 (N = 8), fine 4..20 (N = 16); residuals at coarse slices 4..8 and their fine twins.
ConvergenceStudy residual_convergence(const RunConfig& c, int nx_coarse, bool with_vplus);
// Same pairing on random fields that solve nothing
ConvergenceStudy random_convergence(std::uint64_t seed, int nx_coarse, bool with_vplus, double A = 2.0);
// passes when every equation's observed order >= min_order and the elliptic solves converged
CheckResult check_convergence(const ConvergenceStudy& st, const std::string& name, double min_order = 3.0);
// passes when the random fields fail the contract: relative residuals >= 0.1 and orders < 1
CheckResult check_negative_control(const ConvergenceStudy& st, const std::string& name);

std::string convergence_csv(const ConvergenceStudy& st);

struct Verdict {
  std::vector<CheckResult> checks;
  bool passed() const;
  std::vector<std::string> failures() const;
};

// Identity suite: minors, hodge, stiff (automatic when A = 1), residual convergence pair, frame Gram, Gronwall.
Verdict verify_all(const RunConfig& c, bool flip_eps = false);

std::string check_json(const CheckResult& r);
std::string verdict_json(const Verdict& v);

}  // namespace gv
