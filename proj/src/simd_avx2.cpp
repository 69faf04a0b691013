#include "gv/simd.hpp"

#include <cmath>
#include <limits>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define GV_HAVE_AVX2_PATH 1
#endif

namespace gv::simd {

#ifdef GV_HAVE_AVX2_PATH
namespace {

#define GV_AVX2 __attribute__((target("avx2,fma")))

GV_AVX2 void lincomb(double* y, double ca, const double* a, double cb, const double* b, std::size_t n) {
  const __m256d va = _mm256_set1_pd(ca), vb = _mm256_set1_pd(cb);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d r = _mm256_mul_pd(va, _mm256_loadu_pd(a + k));
    r = _mm256_fmadd_pd(vb, _mm256_loadu_pd(b + k), r);
    _mm256_storeu_pd(y + k, r);
  }
  for (; k < n; ++k) y[k] = ca * a[k] + cb * b[k];
}

GV_AVX2 double max_abs(const double* x, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d m = _mm256_setzero_pd();
  __m256d nan = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d v = _mm256_loadu_pd(x + k);
    nan = _mm256_or_pd(nan, _mm256_cmp_pd(v, v, _CMP_UNORD_Q));
    m = _mm256_max_pd(m, _mm256_andnot_pd(sign, v));
  }
  if (_mm256_movemask_pd(nan)) return std::numeric_limits<double>::quiet_NaN();
  alignas(32) double t[4];
  _mm256_store_pd(t, m);
  double r = std::fmax(std::fmax(t[0], t[1]), std::fmax(t[2], t[3]));
  for (; k < n; ++k) {
    double a = std::fabs(x[k]);
    if (std::isnan(a)) return std::numeric_limits<double>::quiet_NaN();
    if (a > r) r = a;
  }
  return r;
}

GV_AVX2 double weighted_sumsq(const cplx* c, const double* w, std::size_t n) {
  const double* p = reinterpret_cast<const double*>(c);
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d z0 = _mm256_loadu_pd(p + 2 * k);
    __m256d z1 = _mm256_loadu_pd(p + 2 * k + 4);
    __m128d w01 = _mm_loadu_pd(w + k), w23 = _mm_loadu_pd(w + k + 2);
    // (w0,w0,w1,w1) and (w2,w2,w3,w3)
    __m256d wa = _mm256_permute4x64_pd(_mm256_castpd128_pd256(w01), 0x50);
    __m256d wb = _mm256_permute4x64_pd(_mm256_castpd128_pd256(w23), 0x50);
    acc0 = _mm256_fmadd_pd(_mm256_mul_pd(z0, z0), wa, acc0);
    acc1 = _mm256_fmadd_pd(_mm256_mul_pd(z1, z1), wb, acc1);
  }
  alignas(32) double t[4];
  _mm256_store_pd(t, _mm256_add_pd(acc0, acc1));
  double s = (t[0] + t[1]) + (t[2] + t[3]);
  for (; k < n; ++k) s += w[k] * std::norm(c[k]);
  return s;
}

GV_AVX2 void cmul_real(cplx* c, const double* m, std::size_t n) {
  double* p = reinterpret_cast<double*>(c);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    __m256d mm = _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(m + k)), 0x50);
    _mm256_storeu_pd(p + 2 * k, _mm256_mul_pd(_mm256_loadu_pd(p + 2 * k), mm));
  }
  for (; k < n; ++k) c[k] *= m[k];
}

GV_AVX2 void mul_ik(cplx* out, const cplx* in, const double* kk, std::size_t n) {
  const double* pi = reinterpret_cast<const double*>(in);
  double* po = reinterpret_cast<double*>(out);
  const __m256d sgn = _mm256_set_pd(1.0, -1.0, 1.0, -1.0);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    __m256d z = _mm256_loadu_pd(pi + 2 * k);
    __m256d sw = _mm256_permute_pd(z, 0x5);  // (im, re, im, re)
    __m256d kk2 = _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(kk + k)), 0x50);
    _mm256_storeu_pd(po + 2 * k, _mm256_mul_pd(_mm256_mul_pd(sw, sgn), kk2));
  }
  for (; k < n; ++k) out[k] = cplx(-kk[k] * in[k].imag(), kk[k] * in[k].real());
}

GV_AVX2 void lift_v0(double* v0, const double* e2h, const double* v1, const double* v2, std::size_t n) {
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d a = _mm256_loadu_pd(v1 + k), b = _mm256_loadu_pd(v2 + k);
    __m256d s = _mm256_add_pd(_mm256_loadu_pd(e2h + k), _mm256_add_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b)));
    _mm256_storeu_pd(v0 + k, _mm256_sqrt_pd(s));
  }
  for (; k < n; ++k) v0[k] = std::sqrt(e2h[k] + v1[k] * v1[k] + v2[k] * v2[k]);
}

}  // namespace

const Kernels* avx2_kernels() {
  static const Kernels k{Isa::Avx2, lincomb, max_abs, weighted_sumsq, cmul_real, mul_ik, lift_v0};
  return &k;
}

bool cpu_has_avx2() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

#else

const Kernels* avx2_kernels() { return nullptr; }
bool cpu_has_avx2() { return false; }

#endif

}  // namespace gv::simd
