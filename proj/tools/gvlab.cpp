#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "gv/diagnostics.hpp"
#include "gv/geometry.hpp"
#include "gv/norms.hpp"
#include "gv/scenario.hpp"
#include "gv/snapshot.hpp"
#include "gv/verify.hpp"

using namespace gv;
using nlohmann::json;

namespace {

// Config file plus per-key flags; flags override the file.
struct ConfigFlags {
  std::string file;
  std::vector<std::string> sets;
  std::vector<std::pair<std::string, std::string>> direct;
  std::map<std::string, std::string> values;

  void attach(CLI::App* app) {
    app->add_option("-c,--config", file, "key = value config file");
    app->add_option("--set", sets, "extra key=value override (repeatable)");
    for (const char* key : {"scenario", "nx", "ny", "T", "A", "c0sq", "amplitude", "s", "s_prime", "delta1", "checks",
                            "output_dir", "seed", "cfl", "filter", "steps", "snapshot_every"})
      app->add_option(std::string("--") + key, values[key], std::string("config key ") + key);
  }

  RunConfig build(CLI::App* app) const {
    KeyValues file_kv;
    if (!file.empty()) file_kv = read_config_file(file);
    KeyValues over;
    for (const auto& [k, v] : values)
      if (app->count("--" + k)) over.emplace_back(k, v);
    for (const auto& s : sets) {
      auto eq = s.find('=');
      if (eq == std::string::npos) throw ConfigError(s, "expected key=value");
      over.emplace_back(s.substr(0, eq), s.substr(eq + 1));
    }
    return build_config(file_kv, over);
  }
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

void print_checks(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks)
    std::cerr << (c.skipped ? "SKIP " : c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
}

int cmd_evolve(CLI::App* app, const ConfigFlags& cf) {
  RunConfig c = cf.build(app);
  RunResult r = run_scenario(c);
  print_checks(r.checks);
  std::cout << r.dir << '\n';
  if (!r.message.empty()) std::cerr << r.message << '\n';
  return r.exit_code;
}

int cmd_verify(CLI::App* app, const ConfigFlags& cf, bool flip, const std::string& out) {
  RunConfig c = cf.build(app);
  Verdict v = verify_all(c, flip);
  print_checks(v.checks);
  emit(out, verdict_json(v) + "\n");
  if (!v.passed()) {
    std::cerr << "failed:";
    for (const auto& f : v.failures()) std::cerr << ' ' << f;
    std::cerr << '\n';
    return kExitCheckFailure;
  }
  return kExitOk;
}

int cmd_cascade(CLI::App* app, const ConfigFlags& cf, double M0, double C, int jmax, const std::string& out) {
  RunConfig c = cf.build(app);
  Grid2D g = config_grid(c);
  EquationOfState eos = config_eos(c);
  FluidState data = preset_state(c.scenario, g, c.amplitude, eos);
  if (jmax < 0) jmax = band_range(g).jmax;
  CascadeSchedule cs = cascade_prepare(data, eos, M0, c.delta1, jmax, C, c.s);
  json j;
  j["M0"] = cs.M0;
  j["delta1"] = cs.delta1;
  j["C"] = cs.C;
  j["s"] = cs.s;
  j["jmax_requested"] = cs.jmax_requested;
  j["jmax_used"] = cs.jmax_used;
  j["warnings"] = cs.warnings;
  j["bernstein_max"] = cs.bernstein_max;
  j["entries"] = json::array();
  for (const auto& e : cs.entries)
    j["entries"].push_back({{"j", e.j},
                            {"T", e.T},
                            {"h_L2", l2_norm(e.data.h)},
                            {"w_L2", l2_norm(e.w)},
                            {"diff_L2", e.diff_l2},
                            {"bernstein", e.bernstein}});
  for (const auto& w : cs.warnings) std::cerr << "warning: " << w << '\n';
  emit(out, j.dump(2) + "\n");
  return cs.bernstein_max <= 1.0 ? kExitOk : kExitCheckFailure;
}

int cmd_geometry(CLI::App* app, const ConfigFlags& cf, int axis, int sign, double r, const std::string& out) {
  RunConfig c = cf.build(app);
  if (axis != 1 && axis != 2) throw ConfigError("axis", "must be 1 or 2");
  if (sign != 1 && sign != -1) throw ConfigError("sign", "must be +1 or -1");
  EquationOfState eos = config_eos(c);
  Trajectory tr = evolve_preset(c, c.nx, 0.0, 0);
  NullFoliation f = evolve_foliation(tr, eos, Direction{axis, sign}, r);
  NullFrame fr = build_null_frame(tr, eos, f);
  ChiReport chi = connection_chi(tr, eos, f, fr);
  std::ostringstream o;
  o << "t,dtphi_minus_1_min,dtphi_minus_1_max,dtphi_minus_1_mean,chi_sup\n";
  for (std::size_t k = 0; k < f.t.size(); ++k) {
    double mn = INFINITY, mx = -INFINITY, mean = 0;
    for (double v : f.phi_t[k]) {
      mn = std::min(mn, v - 1.0);
      mx = std::max(mx, v - 1.0);
      mean += v - 1.0;
    }
    mean /= double(f.phi_t[k].size());
    o << format_double(f.t[k]) << ',' << format_double(mn) << ',' << format_double(mx) << ','
      << format_double(mean) << ',';
    if (chi.valid[k]) o << format_double(chi.chi_sup[k]);
    o << '\n';
  }
  emit(out, o.str());
  std::cerr << "gram defect " << fr.gram_defect << ", null defect " << f.null_defect << '\n';
  for (const auto& n : foliation_norms(f)) std::cerr << "foliation norm s0=" << n.s0 << ": " << n.value << '\n';
  return fr.gram_defect <= 1e-8 ? kExitOk : kExitCheckFailure;
}

int cmd_norms(CLI::App* app, const ConfigFlags& cf, const std::string& snapshot, double s, const std::string& out) {
  Field f;
  std::string name;
  if (!snapshot.empty()) {
    Snapshot sn = read_snapshot(snapshot);
    f = sn.field;
    name = sn.name;
  } else {
    RunConfig c = cf.build(app);
    f = preset_state(c.scenario, config_grid(c), c.amplitude, config_eos(c)).h;
    name = c.scenario + ":h";
  }
  json j;
  j["field"] = name;
  j["s"] = s;
  j["L2"] = l2_norm(f);
  j["H_s"] = sobolev_norm(f, s);
  j["Hdot_s"] = homogeneous_sobolev_norm(f, s);
  j["Linf"] = f.max_abs();
  j["L8"] = lp_norm(f, 8.0);
  j["besov_s_inf"] = besov_norm(f, s, 0.0);
  j["holder_proxy"] = holder_proxy(f, s - 1.0);
  j["bands"] = json::array();
  for (const auto& b : lp_decompose(f))
    j["bands"].push_back({{"j", b.j}, {"L2", l2_norm(b.field)}, {"Linf", b.field.max_abs()}});
  emit(out, j.dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gvlab: relativistic fluid identity lab"};
  app.require_subcommand(1);

  ConfigFlags f_evolve, f_verify, f_cascade, f_geometry, f_norms;
  auto* evolve = app.add_subcommand("evolve", "evolve a scenario and write a run directory");
  f_evolve.attach(evolve);

  auto* verify = app.add_subcommand("verify", "run the identity suite and print a JSON verdict");
  f_verify.attach(verify);
  bool flip = false;
  std::string verify_out;
  verify->add_flag("--flip-eps", flip, "lower eps with the Minkowski metric (negative control)");
  verify->add_option("-o,--out", verify_out, "verdict file (default stdout)");

  auto* cascade = app.add_subcommand("cascade", "frequency-truncated data ladder");
  f_cascade.attach(cascade);
  double M0 = 1.0, C = 1.0;
  int jmax = -1;
  std::string cascade_out;
  cascade->add_option("--M0", M0, "data size constant");
  cascade->add_option("--C", C, "ladder constant");
  cascade->add_option("--jmax", jmax, "last band (default: grid range)");
  cascade->add_option("-o,--out", cascade_out, "output JSON (default stdout)");

  auto* geometry = app.add_subcommand("geometry", "null foliation and frame along an evolved scenario");
  f_geometry.attach(geometry);
  int axis = 2, sign = 1;
  double r = 3.141592653589793;
  std::string geometry_out;
  geometry->add_option("--axis", axis, "normal axis (1 or 2)");
  geometry->add_option("--sign", sign, "normal orientation (+1 or -1)");
  geometry->add_option("--r", r, "initial level");
  geometry->add_option("-o,--out", geometry_out, "output CSV (default stdout)");

  auto* norms = app.add_subcommand("norms", "Sobolev, Besov and dyadic band norms of a field");
  f_norms.attach(norms);
  std::string snapshot, norms_out;
  double s_norm = 1.8;
  norms->add_option("--snapshot", snapshot, "snapshot file (default: scenario initial h)");
  norms->add_option("--sobolev", s_norm, "Sobolev exponent");
  norms->add_option("-o,--out", norms_out, "output JSON (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfigError;
  }

  try {
    if (*evolve) return cmd_evolve(evolve, f_evolve);
    if (*verify) return cmd_verify(verify, f_verify, flip, verify_out);
    if (*cascade) return cmd_cascade(cascade, f_cascade, M0, C, jmax, cascade_out);
    if (*geometry) return cmd_geometry(geometry, f_geometry, axis, sign, r, geometry_out);
    if (*norms) return cmd_norms(norms, f_norms, snapshot, s_norm, norms_out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const BlowUp& e) {
    std::cerr << "blow-up: " << e.what() << " at t = " << e.time << '\n';
    return kExitBlowUp;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckFailure;
  }
  return kExitOk;
}
