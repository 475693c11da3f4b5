#include <gtest/gtest.h>

#include <cstring>

#include "support.hpp"
#include "unfold/kernels.hpp"
#include "unfold/parallel.hpp"

using namespace unfold::simd;
using unfold::testing::Gen;

namespace {

std::vector<double> noise(Gen& g, std::size_t complex_count) {
  std::vector<double> v(2 * complex_count);
  for (auto& x : v) x = g.real(-1.0, 1.0);
  return v;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST(Kernels, ScalarAlwaysAvailable) {
  const auto all = available_kernels();
  ASSERT_FALSE(all.empty());
  EXPECT_STREQ(all.front()->name, "scalar");
  EXPECT_NE(active_kernels().name, nullptr);
}

TEST(Kernels, ScalarSecondDifferenceByHand) {
  // in = (0, 1, 4, 9, 16) real parts: second difference of k^2 is 2.
  std::vector<double> in{0, 0, 1, 0, 4, 0, 9, 0, 16, 0};
  std::vector<double> out(10, 0.0);
  scalar_kernels().second_diff(in.data(), out.data(), 1, 4, 1, cplx(0.5, 1.0));
  for (std::size_t k = 1; k < 4; ++k) {
    EXPECT_EQ(out[2 * k], 1.0);
    EXPECT_EQ(out[2 * k + 1], 2.0);
  }
  EXPECT_EQ(out[0], 0.0);
  EXPECT_EQ(out[8], 0.0);
}

TEST(Kernels, VariantsAreBitwiseEqualToScalar) {
  Gen g(51);
  const KernelTable& ref = scalar_kernels();
  for (const KernelTable* k : available_kernels()) {
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = static_cast<std::size_t>(g.integer(8, 300));
      const auto s = static_cast<std::ptrdiff_t>(g.integer(1, 3));
      const auto b = static_cast<std::ptrdiff_t>(g.integer(1, 2));
      const std::size_t lo = static_cast<std::size_t>(s + b);
      const std::size_t hi = n - static_cast<std::size_t>(s + b) - static_cast<std::size_t>(g.integer(0, 2));
      const auto in = noise(g, n);
      const auto init = noise(g, n);
      const cplx c = g.complex(2.0);

      auto a1 = init, a2 = init;
      ref.second_diff(in.data(), a1.data(), lo, hi, s, c);
      k->second_diff(in.data(), a2.data(), lo, hi, s, c);
      EXPECT_TRUE(same_bits(a1, a2)) << k->name << " second_diff";

      a1 = init, a2 = init;
      ref.mixed_diff(in.data(), a1.data(), lo, hi, s, b, c);
      k->mixed_diff(in.data(), a2.data(), lo, hi, s, b, c);
      EXPECT_TRUE(same_bits(a1, a2)) << k->name << " mixed_diff";

      a1 = init, a2 = init;
      ref.first_diff(in.data(), a1.data(), lo, hi, s, c);
      k->first_diff(in.data(), a2.data(), lo, hi, s, c);
      EXPECT_TRUE(same_bits(a1, a2)) << k->name << " first_diff";

      a1 = init, a2 = init;
      ref.scale_add(in.data(), a1.data(), lo, hi, c);
      k->scale_add(in.data(), a2.data(), lo, hi, c);
      EXPECT_TRUE(same_bits(a1, a2)) << k->name << " scale_add";
    }
  }
}

TEST(Kernels, EmptyRangeTouchesNothing) {
  Gen g(52);
  for (const KernelTable* k : available_kernels()) {
    const auto in = noise(g, 16);
    auto out = noise(g, 16);
    const auto before = out;
    k->second_diff(in.data(), out.data(), 5, 5, 1, cplx(1.0, 0.0));
    k->scale_add(in.data(), out.data(), 7, 7, cplx(1.0, 1.0));
    EXPECT_TRUE(same_bits(out, before)) << k->name;
  }
}

TEST(Parallel, ChunkedSumIsIndependentOfThreads) {
  std::vector<double> v(100003);
  Gen g(53);
  for (auto& x : v) x = g.real(-1.0, 1.0);
  auto chunk_sum = [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  };
  // Serial reference with the same chunk boundaries and combination order.
  double ref = 0.0;
  for (std::size_t lo = 0; lo < v.size(); lo += 4096) ref += chunk_sum(lo, std::min(v.size(), lo + 4096));
  EXPECT_EQ(unfold::parallel::sum_chunks(0, v.size(), 4096, chunk_sum), ref);

  std::vector<int> hit(v.size(), 0);
  unfold::parallel::for_chunks(0, v.size(), 1000, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) ++hit[i];
  });
  for (int h : hit) ASSERT_EQ(h, 1);
}
