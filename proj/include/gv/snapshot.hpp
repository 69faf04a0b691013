#pragma once

#include <string>

#include "gv/grid.hpp"

namespace gv {

struct Snapshot {
  std::string name;
  double time = 0;
  Field field;
};

// One-line JSON header {"nx","ny","lx","ly","name","time"}, newline, then little-endian float64 row-major.
void write_snapshot(const std::string& path, const Field& f, const std::string& name, double time);
Snapshot read_snapshot(const std::string& path);

}  // namespace gv
