#include "gv/simd.hpp"

#include <cmath>
#include <limits>

#if defined(__aarch64__) && defined(__ARM_NEON)
#include <arm_neon.h>
#define GV_HAVE_NEON_PATH 1
#endif

namespace gv::simd {

#ifdef GV_HAVE_NEON_PATH
namespace {

void lincomb(double* y, double ca, const double* a, double cb, const double* b, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(ca), vb = vdupq_n_f64(cb);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2)
    vst1q_f64(y + k, vfmaq_f64(vmulq_f64(va, vld1q_f64(a + k)), vb, vld1q_f64(b + k)));
  for (; k < n; ++k) y[k] = ca * a[k] + cb * b[k];
}

double max_abs(const double* x, std::size_t n) {
  float64x2_t m = vdupq_n_f64(0.0);
  uint64x2_t nan = vdupq_n_u64(0);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    float64x2_t v = vld1q_f64(x + k);
    nan = vorrq_u64(nan, veorq_u64(vceqq_f64(v, v), vdupq_n_u64(~0ull)));
    m = vmaxq_f64(m, vabsq_f64(v));
  }
  if (vgetq_lane_u64(nan, 0) | vgetq_lane_u64(nan, 1)) return std::numeric_limits<double>::quiet_NaN();
  double r = std::fmax(vgetq_lane_f64(m, 0), vgetq_lane_f64(m, 1));
  for (; k < n; ++k) {
    double a = std::fabs(x[k]);
    if (std::isnan(a)) return std::numeric_limits<double>::quiet_NaN();
    if (a > r) r = a;
  }
  return r;
}

double weighted_sumsq(const cplx* c, const double* w, std::size_t n) {
  const double* p = reinterpret_cast<const double*>(c);
  float64x2_t acc = vdupq_n_f64(0.0);
  for (std::size_t k = 0; k < n; ++k) {
    float64x2_t z = vld1q_f64(p + 2 * k);
    acc = vfmaq_f64(acc, vmulq_f64(z, z), vdupq_n_f64(w[k]));
  }
  return vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
}

void cmul_real(cplx* c, const double* m, std::size_t n) {
  double* p = reinterpret_cast<double*>(c);
  for (std::size_t k = 0; k < n; ++k) vst1q_f64(p + 2 * k, vmulq_n_f64(vld1q_f64(p + 2 * k), m[k]));
}

void mul_ik(cplx* out, const cplx* in, const double* kk, std::size_t n) {
  const double* pi = reinterpret_cast<const double*>(in);
  double* po = reinterpret_cast<double*>(out);
  const float64x2_t sgn = {-1.0, 1.0};
  for (std::size_t k = 0; k < n; ++k) {
    float64x2_t z = vld1q_f64(pi + 2 * k);
    float64x2_t sw = vextq_f64(z, z, 1);  // (im, re)
    vst1q_f64(po + 2 * k, vmulq_n_f64(vmulq_f64(sw, sgn), kk[k]));
  }
}

void lift_v0(double* v0, const double* e2h, const double* v1, const double* v2, std::size_t n) {
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    float64x2_t a = vld1q_f64(v1 + k), b = vld1q_f64(v2 + k);
    float64x2_t s = vaddq_f64(vld1q_f64(e2h + k), vaddq_f64(vmulq_f64(a, a), vmulq_f64(b, b)));
    vst1q_f64(v0 + k, vsqrtq_f64(s));
  }
  for (; k < n; ++k) v0[k] = std::sqrt(e2h[k] + v1[k] * v1[k] + v2[k] * v2[k]);
}

}  // namespace

const Kernels* neon_kernels() {
  static const Kernels k{Isa::Neon, lincomb, max_abs, weighted_sumsq, cmul_real, mul_ik, lift_v0};
  return &k;
}

#else

const Kernels* neon_kernels() { return nullptr; }

#endif

}  // namespace gv::simd
