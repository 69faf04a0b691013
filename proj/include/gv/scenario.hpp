#pragma once

#include <string>
#include <vector>

#include "gv/check.hpp"
#include "gv/config.hpp"
#include "gv/hyperbolic.hpp"

namespace gv {

enum ExitCode : int { kExitOk = 0, kExitCheckFailure = 1, kExitConfigError = 2, kExitBlowUp = 3 };

// exp(-(2 sin^2((x1-pi)/2) + 2 sin^2((x2-pi)/2)) / sigma^2): periodic, Gaussian near the center
Field periodic_gaussian(const Grid2D& g, double sigma = 0.7);

FluidState preset_state(const std::string& name, const Grid2D& g, double amplitude, const EquationOfState& eos);
bool preset_irrotational(const std::string& name);

Grid2D config_grid(const RunConfig& c);
EquationOfState config_eos(const RunConfig& c);
EvolutionOptions config_options(const RunConfig& c);

// Preset initial data on an nx x nx (ny scaled alike) grid evolved for n_steps of dt
Trajectory evolve_preset(const RunConfig& c, int nx, double dt, int n_steps, Trajectory* partial = nullptr);

struct RunResult {
  std::string dir;
  int exit_code = kExitOk;
  std::string message;
  std::vector<CheckResult> checks;
};

// <output_dir>/<scenario>-<YYYYmmdd-HHMMSS>[-k]
std::string make_run_dir(const std::string& output_dir, const std::string& scenario);

// Evolves the preset, runs the enabled checks and writes the run directory.
RunResult run_scenario(const RunConfig& c);

}  // namespace gv
