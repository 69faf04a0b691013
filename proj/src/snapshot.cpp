#include "gv/snapshot.hpp"

#include <bit>
#include <algorithm>
#include <cstring>
#include <fstream>
#include <json.hpp>

namespace gv {
namespace {

void put_le(std::ostream& os, double x) {
  unsigned char b[8];
  std::memcpy(b, &x, 8);
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + 8);
  os.write(reinterpret_cast<const char*>(b), 8);
}

double get_le(std::istream& is) {
  unsigned char b[8];
  is.read(reinterpret_cast<char*>(b), 8);
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + 8);
  double x;
  std::memcpy(&x, b, 8);
  return x;
}

}  // namespace

void write_snapshot(const std::string& path, const Field& f, const std::string& name, double time) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path);
  const Grid2D& g = f.grid();
  nlohmann::json h = {{"nx", g.nx}, {"ny", g.ny}, {"lx", g.lx}, {"ly", g.ly}, {"name", name}, {"time", time}};
  os << h.dump() << '\n';
  for (std::size_t k = 0; k < f.size(); ++k) put_le(os, f[k]);
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  std::string line;
  std::getline(is, line);
  auto h = nlohmann::json::parse(line);
  Grid2D g(h.at("nx").get<int>(), h.at("ny").get<int>(), h.at("lx").get<double>(), h.at("ly").get<double>());
  Field f(g);
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = get_le(is);
  if (!is) throw std::runtime_error("truncated snapshot " + path);
  return {h.at("name").get<std::string>(), h.at("time").get<double>(), std::move(f)};
}

}  // namespace gv
