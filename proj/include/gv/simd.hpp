#pragma once

#include <complex>
#include <cstddef>

namespace gv::simd {

enum class Isa { Scalar, Avx2, Neon };

using cplx = std::complex<double>;

struct Kernels {
  Isa isa;
  // y[k] = ca*a[k] + cb*b[k]; y may alias a or b
  void (*lincomb)(double* y, double ca, const double* a, double cb, const double* b, std::size_t n);
  // NaN if any entry is NaN
  double (*max_abs)(const double* x, std::size_t n);
  // sum_k w[k]*|c[k]|^2
  double (*weighted_sumsq)(const cplx* c, const double* w, std::size_t n);
  // c[k] *= m[k]
  void (*cmul_real)(cplx* c, const double* m, std::size_t n);
  // out[k] = i*k[k]*in[k]
  void (*mul_ik)(cplx* out, const cplx* in, const double* k, std::size_t n);
  // v0 = sqrt(e2h + v1^2 + v2^2)
  void (*lift_v0)(double* v0, const double* e2h, const double* v1, const double* v2, std::size_t n);
};

const Kernels& scalar_kernels();
const Kernels* avx2_kernels();  // nullptr when not compiled in
const Kernels* neon_kernels();  // nullptr when not compiled in

bool cpu_has_avx2();

// Active table; GV_FORCE_SCALAR=1 in the environment pins the scalar path.
const Kernels& kernels();
void force(Isa isa);  // for tests; falls back to scalar when unavailable
void reset();
const char* isa_name(Isa isa);

}  // namespace gv::simd
