#include "gv/simd.hpp"

#include <cmath>
#include <limits>

namespace gv::simd {
namespace {

void lincomb(double* y, double ca, const double* a, double cb, const double* b, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) y[k] = ca * a[k] + cb * b[k];
}

double max_abs(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double a = std::fabs(x[k]);
    if (std::isnan(a)) return std::numeric_limits<double>::quiet_NaN();
    if (a > m) m = a;
  }
  return m;
}

double weighted_sumsq(const cplx* c, const double* w, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += w[k] * std::norm(c[k]);
  return s;
}

void cmul_real(cplx* c, const double* m, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) c[k] *= m[k];
}

void mul_ik(cplx* out, const cplx* in, const double* kk, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) out[k] = cplx(-kk[k] * in[k].imag(), kk[k] * in[k].real());
}

void lift_v0(double* v0, const double* e2h, const double* v1, const double* v2, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) v0[k] = std::sqrt(e2h[k] + v1[k] * v1[k] + v2[k] * v2[k]);
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels k{Isa::Scalar, lincomb, max_abs, weighted_sumsq, cmul_real, mul_ik, lift_v0};
  return k;
}

}  // namespace gv::simd
