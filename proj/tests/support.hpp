#pragma once

// Hand-rolled generators for property tests.

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "unfold/exppoly.hpp"
#include "unfold/scalar.hpp"

namespace unfold::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }
  std::complex<double> complex(double bound) { return {real(-bound, bound), real(-bound, bound)}; }

  Rational rational(int bound = 9) {
    const int den = integer(1, bound);
    return Rational(integer(-bound, bound), den);
  }
  Rational nonzero_rational(int bound = 9) {
    Rational r = rational(bound);
    while (r == 0) r = rational(bound);
    return r;
  }
  GaussRational gauss(int bound = 5) { return {rational(bound), rational(bound)}; }
  GaussRational nonzero_gauss(int bound = 5) {
    GaussRational z = gauss(bound);
    while (z.is_zero()) z = gauss(bound);
    return z;
  }
  QuadSurd surd(int bound = 4) { return {gauss(bound), gauss(bound)}; }

  RationalMatrix invertible(std::size_t n, int bound = 3) {
    for (;;) {
      RationalMatrix m(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = integer(-bound, bound);
      if (determinant(m) != 0) return m;
    }
  }

  RationalMatrix symmetric_nondegenerate(std::size_t n, int bound = 3) {
    for (;;) {
      RationalMatrix m(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = integer(-bound, bound);
      if (determinant(m) != 0) return m;
    }
  }

  // Random exp-poly with a few terms, small degrees and small rates.
  ExpPoly<GaussRational> field(std::size_t dim, int terms = 3, int degree = 2) {
    ExpPoly<GaussRational> f(dim);
    for (int t = 0; t < terms; ++t) {
      std::vector<GaussRational> rate(dim);
      for (auto& r : rate) r = coin() ? GaussRational(0) : gauss(2);
      Polynomial<GaussRational> p(dim);
      for (int k = 0; k < 3; ++k) {
        Exponents e(dim, 0);
        int left = integer(0, degree);
        while (left-- > 0) e[static_cast<std::size_t>(integer(0, static_cast<int>(dim) - 1))] += 1;
        p.add_term(e, gauss(4));
      }
      f.add_term(rate, p);
    }
    return f;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// Runs body(gen, case_index) for `cases` independent seeds.
template <class F>
void for_all(int cases, std::uint64_t seed, F body) {
  for (int c = 0; c < cases; ++c) {
    Gen g(seed * 1000003u + static_cast<std::uint64_t>(c));
    body(g, c);
  }
}

}  // namespace unfold::testing
