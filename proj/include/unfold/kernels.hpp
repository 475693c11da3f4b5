#pragma once

// Stencil kernels over interleaved complex arrays. Offsets and ranges are in
// complex elements. Every variant performs the same IEEE operations in the
// same order, so results are bitwise identical across variants.

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

namespace unfold::simd {

using cplx = std::complex<double>;

struct KernelTable {
  const char* name;
  // out[k] += c * ((in[k+s] + in[k-s]) - 2 in[k])
  void (*second_diff)(const double* in, double* out, std::size_t begin, std::size_t end, std::ptrdiff_t s, cplx c);
  // out[k] += c * ((in[k+a+b] - in[k+a-b]) - (in[k-a+b] - in[k-a-b]))
  void (*mixed_diff)(const double* in, double* out, std::size_t begin, std::size_t end, std::ptrdiff_t a,
                     std::ptrdiff_t b, cplx c);
  // out[k] += c * (in[k+s] - in[k-s])
  void (*first_diff)(const double* in, double* out, std::size_t begin, std::size_t end, std::ptrdiff_t s, cplx c);
  // out[k] += c * in[k]
  void (*scale_add)(const double* in, double* out, std::size_t begin, std::size_t end, cplx c);
};

const KernelTable& scalar_kernels();
// nullptr when the variant is not compiled in or the CPU lacks it.
const KernelTable* avx2_kernels();
const KernelTable* neon_kernels();

// Best available variant; UNFOLD_SIMD=scalar|avx2|neon overrides.
const KernelTable& active_kernels();
std::vector<const KernelTable*> available_kernels();

}  // namespace unfold::simd
