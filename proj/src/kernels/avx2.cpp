#include <immintrin.h>

#include "unfold/kernels.hpp"

namespace unfold::simd {
namespace {

inline void mul_acc(double* o, double zr, double zi, double cr, double ci) {
  double re = cr * zr - ci * zi;
  double im = cr * zi + ci * zr;
  o[0] += re;
  o[1] += im;
}

// Two complex numbers per register: (re0, im0, re1, im1).
inline void mul_acc2(double* o, __m256d z, __m256d cr, __m256d ci) {
  __m256d a = _mm256_mul_pd(cr, z);
  __m256d b = _mm256_mul_pd(ci, _mm256_permute_pd(z, 0x5));
  __m256d r = _mm256_addsub_pd(a, b);
  _mm256_storeu_pd(o, _mm256_add_pd(_mm256_loadu_pd(o), r));
}

void second_diff(const double* in, double* out, std::size_t begin, std::size_t end, std::ptrdiff_t s, cplx c) {
  const __m256d vr = _mm256_set1_pd(c.real()), vi = _mm256_set1_pd(c.imag());
  std::size_t k = begin;
  for (; k + 2 <= end; k += 2) {
    const double* p = in + 2 * static_cast<std::ptrdiff_t>(k);
    __m256d x = _mm256_loadu_pd(p);
    __m256d z = _mm256_sub_pd(_mm256_add_pd(_mm256_loadu_pd(p + 2 * s), _mm256_loadu_pd(p - 2 * s)),
                              _mm256_add_pd(x, x));
    mul_acc2(out + 2 * k, z, vr, vi);
  }
  for (; k < end; ++k) {
    const double* p = in + 2 * static_cast<std::ptrdiff_t>(k);
    const double* pp = p + 2 * s;
    const double* pm = p - 2 * s;
    mul_acc(out + 2 * k, (pp[0] + pm[0]) - (p[0] + p[0]), (pp[1] + pm[1]) - (p[1] + p[1]), c.real(), c.imag());
  }
}

void mixed_diff(const double* in, double* out, std::size_t begin, std::size_t end, std::ptrdiff_t a, std::ptrdiff_t b,
                cplx c) {
  const __m256d vr = _mm256_set1_pd(c.real()), vi = _mm256_set1_pd(c.imag());
  const std::ptrdiff_t spp = 2 * (a + b), spm = 2 * (a - b);
  std::size_t k = begin;
  for (; k + 2 <= end; k += 2) {
    const double* p = in + 2 * static_cast<std::ptrdiff_t>(k);
    __m256d z = _mm256_sub_pd(_mm256_sub_pd(_mm256_loadu_pd(p + spp), _mm256_loadu_pd(p + spm)),
                              _mm256_sub_pd(_mm256_loadu_pd(p - spm), _mm256_loadu_pd(p - spp)));
    mul_acc2(out + 2 * k, z, vr, vi);
  }
  for (; k < end; ++k) {
    const double* p = in + 2 * static_cast<std::ptrdiff_t>(k);
    double zr = (p[spp] - p[spm]) - (p[-spm] - p[-spp]);
    double zi = (p[spp + 1] - p[spm + 1]) - (p[-spm + 1] - p[-spp + 1]);
    mul_acc(out + 2 * k, zr, zi, c.real(), c.imag());
  }
}

void first_diff(const double* in, double* out, std::size_t begin, std::size_t end, std::ptrdiff_t s, cplx c) {
  const __m256d vr = _mm256_set1_pd(c.real()), vi = _mm256_set1_pd(c.imag());
  std::size_t k = begin;
  for (; k + 2 <= end; k += 2) {
    const double* p = in + 2 * static_cast<std::ptrdiff_t>(k);
    __m256d z = _mm256_sub_pd(_mm256_loadu_pd(p + 2 * s), _mm256_loadu_pd(p - 2 * s));
    mul_acc2(out + 2 * k, z, vr, vi);
  }
  for (; k < end; ++k) {
    const double* p = in + 2 * static_cast<std::ptrdiff_t>(k);
    mul_acc(out + 2 * k, p[2 * s] - p[-2 * s], p[2 * s + 1] - p[-2 * s + 1], c.real(), c.imag());
  }
}

void scale_add(const double* in, double* out, std::size_t begin, std::size_t end, cplx c) {
  const __m256d vr = _mm256_set1_pd(c.real()), vi = _mm256_set1_pd(c.imag());
  std::size_t k = begin;
  for (; k + 2 <= end; k += 2) mul_acc2(out + 2 * k, _mm256_loadu_pd(in + 2 * k), vr, vi);
  for (; k < end; ++k) mul_acc(out + 2 * k, in[2 * k], in[2 * k + 1], c.real(), c.imag());
}

const KernelTable table{"avx2", second_diff, mixed_diff, first_diff, scale_add};

}  // namespace

const KernelTable* avx2_kernels() {
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &table : nullptr;
}

}  // namespace unfold::simd
