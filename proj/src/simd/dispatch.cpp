#include <cstdlib>
#include <cstring>

#include "loopfock/simd/kernels.hpp"

namespace loopfock::simd {

bool avx2_available() {
#if defined(LOOPFOCK_HAVE_AVX2)
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

const KernelTable& kernels_for(Isa isa) {
#if defined(LOOPFOCK_HAVE_AVX2)
  if (isa == Isa::avx2 && avx2_available()) return avx2_kernels();
#endif
  (void)isa;
  return scalar_kernels();
}

const KernelTable& active_kernels() {
  static const KernelTable& table = []() -> const KernelTable& {
    const char* env = std::getenv("LOOPFOCK_ISA");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) return scalar_kernels();
    return kernels_for(Isa::avx2);
  }();
  return table;
}

}  // namespace loopfock::simd
