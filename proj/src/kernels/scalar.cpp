#include "unfold/kernels.hpp"

namespace unfold::simd {
namespace {

// (cr + i ci) * (zr + i zi), written out so vector variants can mirror it.
inline void mul_acc(double* o, double zr, double zi, double cr, double ci) {
  double re = cr * zr - ci * zi;
  double im = cr * zi + ci * zr;
  o[0] += re;
  o[1] += im;
}

void second_diff(const double* in, double* out, std::size_t begin, std::size_t end, std::ptrdiff_t s, cplx c) {
  const double cr = c.real(), ci = c.imag();
  for (std::size_t k = begin; k < end; ++k) {
    const double* p = in + 2 * static_cast<std::ptrdiff_t>(k);
    const double* pp = p + 2 * s;
    const double* pm = p - 2 * s;
    double zr = (pp[0] + pm[0]) - (p[0] + p[0]);
    double zi = (pp[1] + pm[1]) - (p[1] + p[1]);
    mul_acc(out + 2 * k, zr, zi, cr, ci);
  }
}

void mixed_diff(const double* in, double* out, std::size_t begin, std::size_t end, std::ptrdiff_t a, std::ptrdiff_t b,
                cplx c) {
  const double cr = c.real(), ci = c.imag();
  for (std::size_t k = begin; k < end; ++k) {
    const double* p = in + 2 * static_cast<std::ptrdiff_t>(k);
    const double* ppp = p + 2 * (a + b);
    const double* ppm = p + 2 * (a - b);
    const double* pmp = p - 2 * (a - b);
    const double* pmm = p - 2 * (a + b);
    double zr = (ppp[0] - ppm[0]) - (pmp[0] - pmm[0]);
    double zi = (ppp[1] - ppm[1]) - (pmp[1] - pmm[1]);
    mul_acc(out + 2 * k, zr, zi, cr, ci);
  }
}

void first_diff(const double* in, double* out, std::size_t begin, std::size_t end, std::ptrdiff_t s, cplx c) {
  const double cr = c.real(), ci = c.imag();
  for (std::size_t k = begin; k < end; ++k) {
    const double* p = in + 2 * static_cast<std::ptrdiff_t>(k);
    double zr = p[2 * s] - p[-2 * s];
    double zi = p[2 * s + 1] - p[-2 * s + 1];
    mul_acc(out + 2 * k, zr, zi, cr, ci);
  }
}

void scale_add(const double* in, double* out, std::size_t begin, std::size_t end, cplx c) {
  const double cr = c.real(), ci = c.imag();
  for (std::size_t k = begin; k < end; ++k) mul_acc(out + 2 * k, in[2 * k], in[2 * k + 1], cr, ci);
}

const KernelTable table{"scalar", second_diff, mixed_diff, first_diff, scale_add};

}  // namespace

const KernelTable& scalar_kernels() { return table; }

}  // namespace unfold::simd
