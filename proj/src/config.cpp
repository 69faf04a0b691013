#include "gv/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gv {

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> n = {"gaussian-bump", "vortex", "stiff-irrotational", "stiff-vortex",
                                             "plane-acoustic"};
  return n;
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> n = {"constraint", "energy",    "gronwall", "minors", "hodge",      "stiff",
                                             "residuals",  "vplus",     "frame",    "strichartz", "phase-speed"};
  return n;
}

bool is_stiff_scenario(const std::string& name) { return name.rfind("stiff-", 0) == 0; }

double default_amplitude(const std::string& name) { return name == "plane-acoustic" ? 1e-6 : 0.1; }

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double x = std::stod(v, &pos);
    if (pos != v.size() || !std::isfinite(x)) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError(key, "expected a number, got '" + v + "'");
  }
}

long long to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError(key, "expected an integer, got '" + v + "'");
  }
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(key, "expected true/false, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

KeyValues parse_config_text(const std::string& text) {
  KeyValues kv;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno), "expected key = value");
    std::string key = trim(t.substr(0, eq));
    std::string val = trim(t.substr(eq + 1));
    if (!val.empty() && val[0] == '"') {
      auto close = val.find('"', 1);
      if (close == std::string::npos) throw ConfigError(key, "unterminated string");
      std::string rest = trim(val.substr(close + 1));
      if (!rest.empty() && rest[0] != '#') throw ConfigError(key, "trailing characters after string");
      val = val.substr(1, close - 1);
    } else {
      auto hash = val.find('#');
      if (hash != std::string::npos) val = trim(val.substr(0, hash));
    }
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno), "empty key");
    kv.emplace_back(key, val);
  }
  return kv;
}

KeyValues read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

RunConfig build_config(const KeyValues& file, const KeyValues& overrides) {
  RunConfig c;
  bool explicit_A = false;
  auto apply = [&](const std::string& k, const std::string& v) {
    if (k == "scenario") c.scenario = v;
    else if (k == "nx") c.nx = int(to_int(k, v));
    else if (k == "ny") c.ny = int(to_int(k, v));
    else if (k == "T" || k == "T_final") c.T_final = to_double(k, v);
    else if (k == "A") c.A = to_double(k, v), explicit_A = true;
    else if (k == "c0sq") c.c0sq = to_double(k, v);
    else if (k == "amplitude") c.amplitude = to_double(k, v);
    else if (k == "s") c.s = to_double(k, v);
    else if (k == "s_prime") c.s_prime = to_double(k, v);
    else if (k == "delta1") c.delta1 = to_double(k, v);
    else if (k == "checks") c.checks = split_list(v);
    else if (k == "output_dir") c.output_dir = v;
    else if (k == "seed") {
      long long s = to_int(k, v);
      if (s < 0) throw ConfigError(k, "must be non-negative");
      c.seed = std::uint64_t(s);
    } else if (k == "cfl") c.cfl = to_double(k, v);
    else if (k == "filter") c.filter = to_bool(k, v);
    else if (k == "steps") c.steps = int(to_int(k, v));
    else if (k == "snapshot_every") c.snapshot_every = int(to_int(k, v));
    else throw ConfigError(k, "unknown key");
  };
  for (const auto& [k, v] : file) apply(k, v);
  for (const auto& [k, v] : overrides) apply(k, v);
  if (is_stiff_scenario(c.scenario)) {
    if (explicit_A && c.A != 1.0) throw ConfigError("A", "stiff scenarios require A = 1");
    c.A = 1.0;
  }
  validate(c);
  return c;
}

void validate(RunConfig& c) {
  if (c.scenario.empty()) throw ConfigError("scenario", "missing");
  const auto& names = scenario_names();
  if (std::find(names.begin(), names.end(), c.scenario) == names.end())
    throw ConfigError("scenario", "unknown scenario '" + c.scenario + "'");
  if (c.ny == 0) c.ny = c.nx;
  if (!power_of_two(c.nx) || c.nx < 16) throw ConfigError("nx", "must be a power of two >= 16");
  if (!power_of_two(c.ny) || c.ny < 16) throw ConfigError("ny", "must be a power of two >= 16");
  if (!(c.T_final > 0)) throw ConfigError("T", "must be positive");
  if (!(c.A >= 1)) throw ConfigError("A", "A must be >= 1");
  if (is_stiff_scenario(c.scenario) && c.A != 1.0) throw ConfigError("A", "stiff scenarios require A = 1");
  if (!(c.c0sq >= 0 && c.c0sq < 1)) throw ConfigError("c0sq", "must lie in [0, 1)");
  if (c.amplitude < 0 && c.amplitude != -1) throw ConfigError("amplitude", "must be non-negative");
  if (c.amplitude == -1) c.amplitude = default_amplitude(c.scenario);
  if (!(c.s > 1.75 && c.s <= 1.875)) throw ConfigError("s", "must lie in (7/4, 15/8]");
  if (!(c.s_prime >= 1.75 && c.s_prime <= c.s)) throw ConfigError("s_prime", "must satisfy 7/4 <= s_prime <= s");
  const double d = (c.s - 1.75) / 10;
  if (c.delta1 < 0) c.delta1 = d;
  if (!(c.delta1 > 0 && c.delta1 <= 1.0 / 80)) throw ConfigError("delta1", "must lie in (0, 1/80]");
  if (std::fabs(c.delta1 - d) > 1e-12) throw ConfigError("delta1", "must equal (s - 7/4)/10");
  for (const auto& k : c.checks) {
    const auto& cn = check_names();
    if (k != "all" && std::find(cn.begin(), cn.end(), k) == cn.end())
      throw ConfigError("checks", "unknown check '" + k + "'");
  }
  if (std::find(c.checks.begin(), c.checks.end(), "all") != c.checks.end()) c.checks = check_names();
  if (!(c.cfl > 0 && c.cfl <= 1)) throw ConfigError("cfl", "must lie in (0, 1]");
  if (c.steps < 0) throw ConfigError("steps", "must be non-negative");
  if (c.snapshot_every < 0) throw ConfigError("snapshot_every", "must be non-negative");
  if (c.output_dir.empty()) throw ConfigError("output_dir", "must not be empty");
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
  std::string ch;
  for (std::size_t i = 0; i < checks.size(); ++i) ch += (i ? "," : "") + checks[i];
  return {{"scenario", scenario},
          {"nx", std::to_string(nx)},
          {"ny", std::to_string(ny)},
          {"T", format_double(T_final)},
          {"A", format_double(A)},
          {"c0sq", format_double(c0sq)},
          {"amplitude", format_double(amplitude)},
          {"s", format_double(s)},
          {"s_prime", format_double(s_prime)},
          {"delta1", format_double(delta1)},
          {"checks", ch},
          {"output_dir", "\"" + output_dir + "\""},
          {"seed", std::to_string(seed)},
          {"cfl", format_double(cfl)},
          {"filter", filter ? "true" : "false"},
          {"steps", std::to_string(steps)},
          {"snapshot_every", std::to_string(snapshot_every)}};
}

}  // namespace gv
