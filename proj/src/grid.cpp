#include "gv/grid.hpp"

#include <cmath>

#include "gv/simd.hpp"

namespace gv {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

Grid2D::Grid2D(int nx_, int ny_, double lx_, double ly_) : nx(nx_), ny(ny_), lx(lx_), ly(ly_) {
  if (!is_pow2(nx) || !is_pow2(ny) || nx < 16 || ny < 16)
    throw DomainError("grid sizes must be powers of two >= 16");
  if (!(lx > 0) || !(ly > 0) || !std::isfinite(lx) || !std::isfinite(ly))
    throw DomainError("grid side lengths must be positive");
}

Field::Field(const Grid2D& g, std::vector<double> values) : grid_(g), v_(std::move(values)) {
  if (v_.size() != g.size()) throw DomainError("field size does not match grid");
}

Field& Field::operator+=(const Field& o) {
  simd::kernels().lincomb(v_.data(), 1.0, v_.data(), 1.0, o.v_.data(), v_.size());
  return *this;
}

Field& Field::operator-=(const Field& o) {
  simd::kernels().lincomb(v_.data(), 1.0, v_.data(), -1.0, o.v_.data(), v_.size());
  return *this;
}

Field& Field::operator*=(double s) {
  for (double& x : v_) x *= s;
  return *this;
}

Field& Field::operator*=(const Field& o) {
  for (std::size_t k = 0; k < v_.size(); ++k) v_[k] *= o.v_[k];
  return *this;
}

bool Field::all_finite() const { return std::isfinite(max_abs()); }

double Field::max_abs() const { return simd::kernels().max_abs(v_.data(), v_.size()); }

double Field::mean() const {
  double s = 0.0;
  for (double x : v_) s += x;
  return s / double(v_.size());
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(Field a, double s) { return a *= s; }
Field operator*(double s, Field a) { return a *= s; }
Field operator*(Field a, const Field& b) { return a *= b; }

Field lincomb(double ca, const Field& a, double cb, const Field& b) {
  Field y(a.grid());
  simd::kernels().lincomb(y.data(), ca, a.data(), cb, b.data(), y.size());
  return y;
}

double inner(const Field& a, const Field& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s * a.grid().cell();
}

double l2_norm(const Field& f) { return std::sqrt(inner(f, f)); }

void require_finite(const Field& f, const char* what) {
  if (!f.all_finite()) throw DomainError(std::string(what) + ": non-finite values");
}

}  // namespace gv
