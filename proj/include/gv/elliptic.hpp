#pragma once

#include <array>
#include <vector>

#include "gv/wave.hpp"

namespace gv {

struct Minors {
  double p1, p2, p3;
};
// leading principal minors of P = m + 2 e^{-2h} v v at one point (v0 lifted)
Minors minors_at(double h, double v1, double v2);

struct EllipticMinors {
  Field p1, p2, p3;
};
EllipticMinors ellipticity_minors(const FluidState& s);

enum class TimeScheme { Spectral, Centered2, Centered4 };

// nt slices of a grid, index (k*nx + i)*ny + j; periodic in time with period nt*dt
struct SlabField {
  Grid2D grid;
  int nt = 0;
  double dt = 0;
  std::vector<double> v;

  SlabField() = default;
  SlabField(const Grid2D& g, int nt_, double dt_) : grid(g), nt(nt_), dt(dt_), v(std::size_t(nt_) * g.size(), 0.0) {}
  std::size_t slice_size() const { return grid.size(); }
  Field slice(int k) const;
  void set_slice(int k, const Field& f);
  double extent() const { return nt * dt; }
};

// P^{bc} on the slab, packed by sym()
struct SlabCoefficients {
  Grid2D grid;
  int nt = 0;
  double dt = 0;
  std::array<std::vector<double>, 6> P;
};

SlabCoefficients constant_coefficients(const Grid2D& g, int nt, double dt, const std::array<double, 6>& P);

// u -> u - P^{bc} d_bc u; space spectral, time by `scheme` on the periodic slab
class SlabOperator {
 public:
  SlabOperator(SlabCoefficients c, TimeScheme scheme);

  void apply(const std::vector<double>& u, std::vector<double>& out) const;
  // inverse of the frozen (slab-averaged) symbol
  void precondition(const std::vector<double>& u, std::vector<double>& out) const;
  double symbol_min() const { return symbol_min_; }
  const std::array<double, 6>& mean_coefficients() const { return Pbar_; }
  std::size_t size() const { return std::size_t(c_.nt) * c_.grid.size(); }
  const SlabCoefficients& coefficients() const { return c_; }
  TimeScheme scheme() const { return scheme_; }

  // symbol factors for time mode m: d_t -> i*a, d_tt -> b
  void time_symbols(int m, double& a, double& b) const;

 private:
  SlabCoefficients c_;
  TimeScheme scheme_;
  std::array<double, 6> Pbar_{};
  std::vector<double> symbol_;  // frozen symbol per half-spectrum entry
  double symbol_min_ = 0;
};

struct SolverOptions {
  double tol = 1e-9;
  int restart = 20;
  int max_iter = 0;  // 0 -> 10 * (nt + nx)
  TimeScheme scheme = TimeScheme::Centered4;
};

struct SolverDiagnostics {
  int iterations = 0;
  double final_residual = 0;  // relative, recomputed from the operator
  double slab_extent = 0;
  double preconditioner_symbol_min = 0;
  bool converged = false;
  bool monotone = true;
  std::vector<double> history;
};

// Restarted GMRES with right preconditioning. x holds the initial guess on entry.
SolverDiagnostics gmres_solve(const SlabOperator& op, const std::vector<double>& b, std::vector<double>& x,
                              const SolverOptions& opt);

struct VMinusSolution {
  int n0 = 0;  // first original slice
  int N = 0;  // original slab spans n0..n0+N
  std::array<SlabField, 3> v;  // extended slab of 3N slices
  std::array<SlabField, 3> rhs;
  std::array<SolverDiagnostics, 3> diag;

  // slab index of original slice n
  int index(int n) const { return N + (n - n0); }
  Field at(int a, int n) const;
  VMinusView view() const;
  bool converged() const { return diag[0].converged && diag[1].converged && diag[2].converged; }
};

// Taper-extended source: ramp k/N, 1, (3N-k)/N with even reflection about the slab ends.
int taper_source(int k, int N);
double taper_ramp(int k, int N);

// Solves (Id - P) v_- = eps^{abc} d_b w_c on slices n0..n0+N (needs trajectory slices n0-2..n0+N+2).
// `scale` multiplies the source (linearity checks).
VMinusSolution solve_vminus(const Series& s, int n0, int N, const SolverOptions& opt = {}, double scale = 1.0);

struct DecompositionReport {
  std::vector<double> a;  // 0, 1/4, 1/2
  std::vector<double> ratio_v;  // ||v_-||_{H^{2+a}} / ||w||_{H^{1+a}}
  std::vector<double> ratio_dtv;  // ||d_t v_-||_{H^{1+a}} / ||w||_{H^{1+a}}
  double vminus_l2 = 0;
  double w_l2 = 0;
  int slice = 0;
};
// v_+ = v - v_- and the estimate ratios at the central original slice
DecompositionReport decompose(const Series& s, const VMinusSolution& sol);
Vec3 vplus(const Series& s, const VMinusSolution& sol, int n);

}  // namespace gv
