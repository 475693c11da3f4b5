#include "unfold/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>

namespace unfold::simd {
namespace {

// One complex number per register: (re, im).
inline void mul_acc(double* o, float64x2_t z, float64x2_t cr, float64x2_t ci_signed) {
  float64x2_t a = vmulq_f64(cr, z);
  float64x2_t b = vmulq_f64(ci_signed, vextq_f64(z, z, 1));
  vst1q_f64(o, vaddq_f64(vld1q_f64(o), vaddq_f64(a, b)));
}

struct Coeff {
  float64x2_t cr;
  float64x2_t ci;  // (-ci, ci): x + (-y) rounds exactly like x - y
  explicit Coeff(cplx c) {
    const double s[2] = {-c.imag(), c.imag()};
    cr = vdupq_n_f64(c.real());
    ci = vld1q_f64(s);
  }
};

void second_diff(const double* in, double* out, std::size_t begin, std::size_t end, std::ptrdiff_t s, cplx c) {
  const Coeff k0(c);
  for (std::size_t k = begin; k < end; ++k) {
    const double* p = in + 2 * static_cast<std::ptrdiff_t>(k);
    float64x2_t x = vld1q_f64(p);
    float64x2_t z = vsubq_f64(vaddq_f64(vld1q_f64(p + 2 * s), vld1q_f64(p - 2 * s)), vaddq_f64(x, x));
    mul_acc(out + 2 * k, z, k0.cr, k0.ci);
  }
}

void mixed_diff(const double* in, double* out, std::size_t begin, std::size_t end, std::ptrdiff_t a, std::ptrdiff_t b,
                cplx c) {
  const Coeff k0(c);
  const std::ptrdiff_t spp = 2 * (a + b), spm = 2 * (a - b);
  for (std::size_t k = begin; k < end; ++k) {
    const double* p = in + 2 * static_cast<std::ptrdiff_t>(k);
    float64x2_t z = vsubq_f64(vsubq_f64(vld1q_f64(p + spp), vld1q_f64(p + spm)),
                              vsubq_f64(vld1q_f64(p - spm), vld1q_f64(p - spp)));
    mul_acc(out + 2 * k, z, k0.cr, k0.ci);
  }
}

void first_diff(const double* in, double* out, std::size_t begin, std::size_t end, std::ptrdiff_t s, cplx c) {
  const Coeff k0(c);
  for (std::size_t k = begin; k < end; ++k) {
    const double* p = in + 2 * static_cast<std::ptrdiff_t>(k);
    mul_acc(out + 2 * k, vsubq_f64(vld1q_f64(p + 2 * s), vld1q_f64(p - 2 * s)), k0.cr, k0.ci);
  }
}

void scale_add(const double* in, double* out, std::size_t begin, std::size_t end, cplx c) {
  const Coeff k0(c);
  for (std::size_t k = begin; k < end; ++k) mul_acc(out + 2 * k, vld1q_f64(in + 2 * k), k0.cr, k0.ci);
}

const KernelTable table{"neon", second_diff, mixed_diff, first_diff, scale_add};

}  // namespace

const KernelTable* neon_kernels() { return &table; }

}  // namespace unfold::simd
#endif
