#include "aclsd/kernels.hpp"

namespace aclsd::kernels {

#if defined(ACLSD_BUILD_AVX2)
const KernelTable& avx2_kernels();

namespace {
bool cpu_has_avx2() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
}  // namespace
#endif

std::vector<const KernelTable*> available_kernels() {
  std::vector<const KernelTable*> out{&scalar_kernels()};
#if defined(ACLSD_BUILD_AVX2)
  if (cpu_has_avx2()) out.push_back(&avx2_kernels());
#endif
  return out;
}

const KernelTable& active_kernels() {
  static const KernelTable& table = *available_kernels().back();
  return table;
}

}  // namespace aclsd::kernels
