#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gv {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Violated precondition or inadmissible input.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Non-finite state during a time loop.
struct BlowUp : std::runtime_error {
  double time;
  BlowUp(const std::string& what, double t) : std::runtime_error(what), time(t) {}
};

struct Grid2D {
  int nx = 64;
  int ny = 64;
  double lx = kTwoPi;
  double ly = kTwoPi;

  Grid2D() = default;
  Grid2D(int nx_, int ny_, double lx_ = kTwoPi, double ly_ = kTwoPi);

  std::size_t size() const { return std::size_t(nx) * ny; }
  int nyc() const { return ny / 2 + 1; }
  std::size_t spec_size() const { return std::size_t(nx) * nyc(); }
  double dx() const { return lx / nx; }
  double dy() const { return ly / ny; }
  double cell() const { return dx() * dy(); }

  // signed integer mode index along each axis
  int m1(int i) const { return i <= nx / 2 ? i : i - nx; }
  int m2(int j) const { return j; }
  double k1(int i) const { return kTwoPi / lx * m1(i); }
  double k2(int j) const { return kTwoPi / ly * m2(j); }
  double x1(int i) const { return i * dx(); }
  double x2(int j) const { return j * dy(); }

  bool operator==(const Grid2D& o) const {
    return nx == o.nx && ny == o.ny && lx == o.lx && ly == o.ly;
  }
  bool operator!=(const Grid2D& o) const { return !(*this == o); }
};

bool is_pow2(int n);

// Real scalar field on a grid, row-major with index i*ny + j (i along x1).
class Field {
 public:
  Field() = default;
  explicit Field(const Grid2D& g, double value = 0.0) : grid_(g), v_(g.size(), value) {}
  Field(const Grid2D& g, std::vector<double> values);

  const Grid2D& grid() const { return grid_; }
  std::size_t size() const { return v_.size(); }
  double* data() { return v_.data(); }
  const double* data() const { return v_.data(); }
  std::vector<double>& values() { return v_; }
  const std::vector<double>& values() const { return v_; }

  double& operator[](std::size_t k) { return v_[k]; }
  double operator[](std::size_t k) const { return v_[k]; }
  double& at(int i, int j) { return v_[std::size_t(i) * grid_.ny + j]; }
  double at(int i, int j) const { return v_[std::size_t(i) * grid_.ny + j]; }

  Field& operator+=(const Field& o);
  Field& operator-=(const Field& o);
  Field& operator*=(double s);
  Field& operator*=(const Field& o);

  bool all_finite() const;
  double max_abs() const;
  double mean() const;

 private:
  Grid2D grid_;
  std::vector<double> v_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(Field a, double s);
Field operator*(double s, Field a);
Field operator*(Field a, const Field& b);

// y = ca*a + cb*b
Field lincomb(double ca, const Field& a, double cb, const Field& b);

template <class F>
Field sample(const Grid2D& g, F&& f) {
  Field out(g);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) out.at(i, j) = f(g.x1(i), g.x2(j));
  return out;
}

// L2 with the continuum cell weight
double l2_norm(const Field& f);
double inner(const Field& a, const Field& b);

void require_finite(const Field& f, const char* what);

}  // namespace gv
