#include <cstdlib>
#include <cstring>

#include "rohlin/simd/kernels.hpp"

namespace rohlin::simd {

#if defined(ROHLIN_HAVE_AVX2)
namespace avx2 {
void cmul(const double*, const double*, const double*, const double*, double*, double*,
          std::size_t);
void cscale(double, double, const double*, const double*, double*, double*, std::size_t);
void cdot(const double*, const double*, const double*, const double*, std::size_t, double*,
          double*);
void csum(const double*, const double*, std::size_t, double*, double*);
void max_abs_diff(double, double, const double*, const double*, double*, std::size_t);
}  // namespace avx2
#endif

const KernelTable* avx2_kernels() {
#if defined(ROHLIN_HAVE_AVX2)
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  static const KernelTable table{"avx2", avx2::cmul, avx2::cscale, avx2::cdot, avx2::csum,
                                 avx2::max_abs_diff};
  return supported ? &table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() {
  static const KernelTable& chosen = []() -> const KernelTable& {
    const char* forced = std::getenv("ROHLIN_KERNELS");
    if (forced != nullptr && std::strcmp(forced, "scalar") == 0) return scalar_kernels();
    if (const KernelTable* fast = avx2_kernels()) return *fast;
    return scalar_kernels();
  }();
  return chosen;
}

}  // namespace rohlin::simd
