#pragma once

#include <array>
#include <functional>
#include <vector>

#include "gv/state.hpp"

namespace gv {

using Mat3 = std::array<std::array<double, 3>, 3>;

struct SymmetricSystemPoint {
  Mat3 A0, A1, A2;
};

// Coefficients for U = (p, e^{-h} v1, e^{-h} v2): A0 dt U + A1 d1 U + A2 d2 U = 0.
SymmetricSystemPoint assemble_point(double h, double v1, double v2, const EquationOfState& eos);
std::vector<SymmetricSystemPoint> assemble_matrices(const FluidState& s, const EquationOfState& eos);

struct Evolved {
  Field p, u1, u2;
};
Evolved to_evolved(const FluidState& s, const EquationOfState& eos);
FluidState from_evolved(const Evolved& U, const EquationOfState& eos, double time);

struct EvolutionOptions {
  double cfl = 0.4;
  bool filter = false;
  double filter_order = 36.0;
  double filter_amp = 36.0;
  double min_e2h = 0.1;  // runtime admissibility guard
};

// dt U, dealiased (and filtered when enabled)
std::array<Field, 3> rhs(const FluidState& s, const EquationOfState& eos, const EvolutionOptions& opt = {});
// dt (h, v1, v2) implied by rhs
std::array<Field, 3> state_rate(const FluidState& s, const EquationOfState& eos, const EvolutionOptions& opt = {});

FluidState step_rk4(const FluidState& s, double dt, const EquationOfState& eos, const EvolutionOptions& opt = {});

double cfl_dt(const Grid2D& g, double cfl = 0.4);

struct Trajectory {
  double dt = 0.0;
  std::vector<FluidState> states;

  int size() const { return int(states.size()); }
  const Grid2D& grid() const { return states.front().grid(); }
  const FluidState& operator[](int n) const { return states[n]; }
  double time(int n) const { return states[n].time; }
};

// (step, time, state) -> continue?
using Observer = std::function<bool(int, double, const FluidState&)>;

// Uniform steps reaching T exactly; n_steps = 0 picks ceil(T / cfl_dt).
// Throws BlowUp on non-finite or inadmissible states (the partial trajectory is in `partial` when given).
Trajectory evolve(const FluidState& s0, double T, const EquationOfState& eos, const EvolutionOptions& opt = {},
                  int n_steps = 0, const Observer& observer = nullptr, Trajectory* partial = nullptr);

}  // namespace gv
