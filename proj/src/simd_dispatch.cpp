#include <atomic>
#include <cstdlib>
#include <cstring>

#include "gv/simd.hpp"

namespace gv::simd {
namespace {

const Kernels* detect() {
  const char* env = std::getenv("GV_FORCE_SCALAR");
  if (env && std::strcmp(env, "0") != 0 && env[0] != '\0') return &scalar_kernels();
  if (const Kernels* k = avx2_kernels(); k && cpu_has_avx2()) return k;
  if (const Kernels* k = neon_kernels()) return k;
  return &scalar_kernels();
}

std::atomic<const Kernels*>& slot() {
  static std::atomic<const Kernels*> s{detect()};
  return s;
}

}  // namespace

const Kernels& kernels() { return *slot().load(std::memory_order_relaxed); }

void force(Isa isa) {
  const Kernels* k = &scalar_kernels();
  if (isa == Isa::Avx2 && avx2_kernels() && cpu_has_avx2()) k = avx2_kernels();
  if (isa == Isa::Neon && neon_kernels()) k = neon_kernels();
  slot().store(k);
}

void reset() { slot().store(detect()); }

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
    default: return "scalar";
  }
}

}  // namespace gv::simd
