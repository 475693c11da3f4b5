#include <cstdlib>
#include <string_view>

#include "unfold/kernels.hpp"

namespace unfold::simd {

#if !defined(UNFOLD_HAVE_AVX2)
const KernelTable* avx2_kernels() { return nullptr; }
#endif
#if !defined(UNFOLD_HAVE_NEON)
const KernelTable* neon_kernels() { return nullptr; }
#endif

std::vector<const KernelTable*> available_kernels() {
  std::vector<const KernelTable*> out{&scalar_kernels()};
  if (auto* k = avx2_kernels()) out.push_back(k);
  if (auto* k = neon_kernels()) out.push_back(k);
  return out;
}

namespace {

const KernelTable& select() {
  const char* env = std::getenv("UNFOLD_SIMD");
  std::string_view want = env ? env : "";
  if (want == "scalar") return scalar_kernels();
  if (want == "avx2" && avx2_kernels()) return *avx2_kernels();
  if (want == "neon" && neon_kernels()) return *neon_kernels();
  if (auto* k = avx2_kernels()) return *k;
  if (auto* k = neon_kernels()) return *k;
  return scalar_kernels();
}

}  // namespace

const KernelTable& active_kernels() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace unfold::simd
