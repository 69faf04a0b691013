#include "gv/scenario.hpp"

#include <fftw3.h>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "gv/diagnostics.hpp"
#include "gv/simd.hpp"
#include "gv/snapshot.hpp"
#include "gv/spectral.hpp"
#include "gv/verify.hpp"
#include "gv/wave.hpp"

namespace gv {

namespace fs = std::filesystem;
using nlohmann::json;

Field periodic_gaussian(const Grid2D& g, double sigma) {
  Field f(g);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      double a = std::sin(0.5 * (g.x1(i) - 0.5 * g.lx)), b = std::sin(0.5 * (g.x2(j) - 0.5 * g.ly));
      f.at(i, j) = std::exp(-2.0 * (a * a + b * b) / (sigma * sigma));
    }
  return f;
}

bool preset_irrotational(const std::string& name) {
  return name == "gaussian-bump" || name == "stiff-irrotational" || name == "plane-acoustic";
}

FluidState preset_state(const std::string& name, const Grid2D& g, double amplitude, const EquationOfState& eos) {
  FluidState s = constant_state(g, 0.0, 0.0, 0.0);
  if (name == "gaussian-bump" || name == "stiff-irrotational") {
    s.h = amplitude * periodic_gaussian(g);
  } else if (name == "vortex" || name == "stiff-vortex") {
    // v = (d2 psi, -d1 psi): divergence free
    Field psi = amplitude * periodic_gaussian(g);
    s.v1 = spectral_derivative(psi, 2);
    s.v2 = (-1.0) * spectral_derivative(psi, 1);
  } else if (name == "plane-acoustic") {
    // right-moving linear wave: u = h / c_s
    const double c = eos.cs(0.0);
    for (int i = 0; i < g.nx; ++i)
      for (int j = 0; j < g.ny; ++j) {
        double x = std::sin(kTwoPi / g.lx * g.x1(i));
        s.h.at(i, j) = amplitude * x;
        s.v1.at(i, j) = amplitude * x / c;
      }
  } else {
    throw DomainError("unknown scenario '" + name + "'");
  }
  return s;
}

Grid2D config_grid(const RunConfig& c) { return Grid2D(c.nx, c.ny); }

EquationOfState config_eos(const RunConfig& c) { return EquationOfState(c.A, c.c0sq); }

EvolutionOptions config_options(const RunConfig& c) {
  EvolutionOptions o;
  o.cfl = c.cfl;
  o.filter = c.filter;
  return o;
}

Trajectory evolve_preset(const RunConfig& c, int nx, double dt, int n_steps, Trajectory* partial) {
  const int ny = int(std::lround(double(nx) * c.ny / c.nx));
  Grid2D g(nx, ny);
  EquationOfState eos = config_eos(c);
  FluidState s0 = preset_state(c.scenario, g, c.amplitude, eos);
  EvolutionOptions opt = config_options(c);
  if (n_steps == 0) return evolve(s0, c.T_final, eos, opt, c.steps, nullptr, partial);
  return evolve(s0, n_steps * dt, eos, opt, n_steps, nullptr, partial);
}

std::string make_run_dir(const std::string& output_dir, const std::string& scenario) {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream o;
  o << scenario << '-' << std::put_time(&tm, "%Y%m%d-%H%M%S");
  fs::path base = fs::path(output_dir) / o.str();
  fs::path p = base;
  for (int k = 1; fs::exists(p); ++k) p = base.string() + "-" + std::to_string(k);
  fs::create_directories(p / "snapshots");
  return p.string();
}

namespace {

void write_text(const fs::path& p, const std::string& s) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << s;
}

json manifest(const RunConfig& c) {
  json m;
  m["program"] = "gvlab";
  m["version"] = "1.0.0";
#ifdef __VERSION__
  m["compiler"] = __VERSION__;
#endif
  m["cxx_standard"] = long(__cplusplus);
  m["fftw"] = std::string(fftw_version);
  m["simd"] = simd::isa_name(simd::kernels().isa);
  m["rng"] = "splitmix64 counter hash";
  m["seed"] = c.seed;
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  m["started"] = buf;
  return m;
}

std::string energy_csv(const std::vector<EnergyReport>& e, const GronwallReport& g) {
  std::ostringstream o;
  o << "t,E,h_Hs,v_Hs,w_Hs,grad_w_L8,strich_accum,K\n";
  for (std::size_t i = 0; i < e.size(); ++i) {
    const auto& r = e[i];
    o << format_double(r.t) << ',' << format_double(r.E) << ',' << format_double(r.parts.h_hs) << ','
      << format_double(r.parts.v_hs) << ',' << format_double(r.parts.w_hs) << ',' << format_double(r.parts.dw_l8)
      << ',' << format_double(r.strich_accum) << ',' << format_double(i < g.K.size() ? g.K[i] : 0.0) << '\n';
  }
  return o.str();
}

bool enabled(const RunConfig& c, const std::string& name) {
  return std::find(c.checks.begin(), c.checks.end(), name) != c.checks.end();
}

json residuals_at_center(const Trajectory& tr, const EquationOfState& eos) {
  json j;
  const int n = tr.size() / 2;
  if (n < 2 || n + 2 >= tr.size()) return j;
  Series s(tr);
  WaveResiduals w = wave_residuals(s, n, eos);
  j["slice"] = n;
  j["time"] = tr.time(n);
  j["res_h_l2"] = l2_norm(w.res_h);
  j["res_v_l2"] = l2_norm(w.res_v);
  j["box_h_l2"] = w.box_h_l2;
  j["box_v_l2"] = w.box_v_l2;
  return j;
}

json check_to_json(const CheckResult& r) { return json::parse(check_json(r)); }

}  // namespace

RunResult run_scenario(const RunConfig& c) {
  RunResult res;
  res.dir = make_run_dir(c.output_dir, c.scenario);
  const fs::path dir(res.dir);
  {
    std::ostringstream o;
    for (const auto& [k, v] : c.echo()) o << k << " = " << v << '\n';
    write_text(dir / "config.txt", o.str());
  }
  write_text(dir / "manifest.json", manifest(c).dump(2) + "\n");

  const EquationOfState eos = config_eos(c);
  const EvolutionOptions opt = config_options(c);
  Trajectory tr;
  std::string status = "ok";
  try {
    tr = evolve_preset(c, c.nx, 0.0, 0, &tr);
  } catch (const BlowUp& e) {
    status = "blow-up";
    res.exit_code = kExitBlowUp;
    res.message = std::string(e.what()) + " at t = " + format_double(e.time);
  }

  json files = json::array({"config.txt", "manifest.json"});
  // snapshots
  for (int n = 0; n < tr.size(); ++n) {
    bool keep = n == 0 || n == tr.size() - 1 || (c.snapshot_every > 0 && n % c.snapshot_every == 0);
    if (!keep) continue;
    const FluidState& s = tr[n];
    std::ostringstream tag;
    tag << std::setw(6) << std::setfill('0') << n;
    for (auto [name, f] : {std::pair<const char*, const Field*>{"h", &s.h}, {"v1", &s.v1}, {"v2", &s.v2}}) {
      std::string rel = std::string("snapshots/") + name + "_" + tag.str() + ".bin";
      write_snapshot((dir / rel).string(), *f, name, s.time);
      files.push_back(rel);
    }
  }

  std::vector<CheckResult> checks;
  json residuals = json::object();
  if (tr.size() > 0) {
    std::vector<EnergyReport> energy;
    GronwallReport gr;
    try {
      energy = energy_series(tr, eos, c.s, c.s_prime, opt);
      gr = gronwall_audit(tr, eos, c.s, 3.0, opt);
    } catch (const std::exception& e) {
      if (status == "ok") throw;
    }
    write_text(dir / "energy.csv", energy_csv(energy, gr));
    files.push_back("energy.csv");

    if (status == "ok") {
      residuals["center"] = residuals_at_center(tr, eos);
      if (enabled(c, "constraint")) checks.push_back(check_constraint(tr));
      if (enabled(c, "energy")) checks.push_back(check_energy(energy));
      if (enabled(c, "gronwall")) checks.push_back(check_gronwall(gr));
      if (enabled(c, "minors")) checks.push_back(check_minors(tr));
      if (enabled(c, "hodge")) {
        checks.push_back(check_hodge(tr, eos));
        checks.push_back(check_divergence_free(tr, eos));
      }
      if (enabled(c, "stiff") || eos.stiff()) checks.push_back(check_stiff(tr, eos, preset_irrotational(c.scenario)));
      if (enabled(c, "residuals") || enabled(c, "vplus")) {
        ConvergenceStudy st = residual_convergence(c, c.nx / 2, enabled(c, "vplus"));
        checks.push_back(check_convergence(st, "wave-residuals"));
        write_text(dir / "residuals.csv", convergence_csv(st));
        files.push_back("residuals.csv");
        json rows = json::array();
        for (const auto& r : st.rows)
          rows.push_back({{"scenario", r.scenario}, {"nx", r.nx}, {"dt", r.dt}, {"equation", r.equation},
                          {"L2_residual", r.l2}, {"relative", r.relative}, {"observed_order", r.order}});
        residuals["convergence"] = rows;
        if (!st.solver.empty()) {
          json sj = json::array();
          for (const auto& d : st.solver)
            sj.push_back({{"iterations", d.iterations}, {"final_residual", d.final_residual},
                          {"slab_extent", d.slab_extent}, {"preconditioner_symbol_min", d.preconditioner_symbol_min},
                          {"converged", d.converged}});
          residuals["solver"] = sj;
        }
      }
      if (enabled(c, "frame")) checks.push_back(check_frame(tr, eos));
      if (enabled(c, "strichartz")) {
        StrichartzTable t = dyadic_strichartz_table(tr, eos, std::max(1, tr.size() / 32));
        json bands = json::array();
        for (const auto& r : t.rows) bands.push_back({{"j", r.j}, {"dv_L4Linf", r.dv}, {"dh_L4Linf", r.dh}});
        json tj = {{"bands", bands}, {"dv_total", t.dv_total}, {"dh_total", t.dh_total},
                   {"beta_v", t.beta_v}, {"beta_h", t.beta_h}, {"tail_from", t.tail_from}};
        write_text(dir / "strichartz.json", tj.dump(2) + "\n");
        files.push_back("strichartz.json");
        checks.push_back(check_strichartz(tr, eos, std::max(1, tr.size() / 32)));
      }
      if (enabled(c, "phase-speed")) {
        if (c.scenario == "plane-acoustic") checks.push_back(check_phase_speed(tr, eos));
        else checks.push_back(CheckResult{"phase-speed", true, true, "plane-acoustic only", {}});
      }
    }
  }
  write_text(dir / "residuals.json", residuals.dump(2) + "\n");
  files.push_back("residuals.json");

  bool all = true;
  for (const auto& ch : checks) all = all && ch.passed;
  if (status == "ok" && !all) {
    status = "check-failure";
    res.exit_code = kExitCheckFailure;
  }
  json summary;
  summary["scenario"] = c.scenario;
  summary["status"] = status;
  summary["exit_code"] = res.exit_code;
  summary["message"] = res.message;
  summary["steps"] = std::max(0, tr.size() - 1);
  summary["final_time"] = tr.size() ? tr.time(tr.size() - 1) : 0.0;
  summary["dt"] = tr.dt;
  json cj = json::array();
  for (const auto& ch : checks) cj.push_back(check_to_json(ch));
  summary["checks"] = cj;
  files.push_back("summary.json");
  summary["files"] = files;
  write_text(dir / "summary.json", summary.dump(2) + "\n");
  res.checks = std::move(checks);
  return res;
}

}  // namespace gv
