#pragma once

#include <string>
#include <utility>
#include <vector>

namespace gv {

struct CheckResult {
  std::string name;
  bool passed = false;
  bool skipped = false;
  std::string detail;
  std::vector<std::pair<std::string, double>> metrics;

  CheckResult& set(const std::string& key, double value) {
    metrics.emplace_back(key, value);
    return *this;
  }
  double metric(const std::string& key) const {
    for (const auto& [k, v] : metrics)
      if (k == key) return v;
    return 0.0;
  }
};

}  // namespace gv
