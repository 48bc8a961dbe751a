#include <cstdlib>
#include <string>

#include "twisted/kernels.hpp"

namespace twisted::kernels {

#if defined(TWISTED_HAS_AVX2_KERNELS)
const KernelTable& avx2_table();
#endif

const KernelTable* avx2_kernels() {
#if defined(TWISTED_HAS_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  return supported ? &avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& chosen = []() -> const KernelTable& {
    const char* env = std::getenv("TWISTED_KERNELS");
    if (env != nullptr && std::string(env) == "scalar") return scalar_kernels();
    if (const KernelTable* t = avx2_kernels()) return *t;
    return scalar_kernels();
  }();
  return chosen;
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

}  // namespace twisted::kernels
