#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace gv {

struct ConfigError : std::runtime_error {
  ConfigError(const std::string& field, const std::string& what)
      : std::runtime_error(field + ": " + what), field(field) {}
  std::string field;
};

// Grammar, one entry per line:
//   key = value        # comment
// Values are bare tokens or "double quoted". Blank lines and lines starting with # are ignored.
// Lists (checks) are comma separated.
struct RunConfig {
  std::string scenario;
  int nx = 128;
  int ny = 0;  // 0 -> nx
  double T_final = 1.0;
  double A = 2.0;
  double c0sq = 0.5;
  double amplitude = -1;  // < 0 -> preset default
  double s = 1.8;
  double s_prime = 1.8;
  double delta1 = -1;  // < 0 -> (s - 7/4)/10
  std::vector<std::string> checks = {"constraint", "energy", "gronwall"};
  std::string output_dir = "runs";
  std::uint64_t seed = 1;
  double cfl = 0.4;
  bool filter = false;
  int steps = 0;  // 0 -> from cfl
  int snapshot_every = 0;  // 0 -> first and last slice only

  // key/value pairs as finally applied, in declaration order
  std::vector<std::pair<std::string, std::string>> echo() const;
};

const std::vector<std::string>& scenario_names();
const std::vector<std::string>& check_names();
bool is_stiff_scenario(const std::string& name);
double default_amplitude(const std::string& name);

using KeyValues = std::vector<std::pair<std::string, std::string>>;

KeyValues parse_config_text(const std::string& text);
KeyValues read_config_file(const std::string& path);

// Applies file entries, then overrides; validates. Throws ConfigError.
RunConfig build_config(const KeyValues& file, const KeyValues& overrides);
void validate(RunConfig& c);

std::string format_double(double x);  // 17 significant digits

}  // namespace gv
