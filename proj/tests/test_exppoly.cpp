#include <gtest/gtest.h>

#include <array>

#include "support.hpp"
#include "unfold/exppoly.hpp"

using namespace unfold;
using unfold::testing::for_all;
using unfold::testing::Gen;
using F = ExpPoly<GaussRational>;

TEST(ExpPoly, MixedPartialsCommute) {
  for_all(50, 21, [](Gen& g, int) {
    const F f = g.field(3);
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b) EXPECT_EQ(f.partial(a).partial(b), f.partial(b).partial(a));
  });
}

TEST(ExpPoly, Leibniz) {
  for_all(50, 22, [](Gen& g, int) {
    const F f = g.field(3, 2, 2), h = g.field(3, 2, 2);
    for (std::size_t a = 0; a < 3; ++a) EXPECT_EQ((f * h).partial(a), f.partial(a) * h + f * h.partial(a));
  });
}

TEST(ExpPoly, DerivativeAgreesWithDifferenceQuotient) {
  for_all(30, 23, [](Gen& g, int) {
    const F f = g.field(2, 2, 2);
    std::array<double, 2> x{g.real(-0.5, 0.5), g.real(-0.5, 0.5)};
    const double h = 1e-5;
    for (std::size_t a = 0; a < 2; ++a) {
      auto xp = x, xm = x;
      xp[a] += h;
      xm[a] -= h;
      const auto fd = (f.evaluate(xp) - f.evaluate(xm)) / (2.0 * h);
      const auto exact = f.partial(a).evaluate(x);
      EXPECT_NEAR(std::abs(fd - exact), 0.0, 1e-5 * (1.0 + std::abs(exact)));
    }
  });
}

TEST(ExpPoly, ExponentialIsEigenfunction) {
  const std::vector<GaussRational> rate{GaussRational(Rational(-1)), GaussRational(Rational(0), Rational(3, 2))};
  const F e = F::exponential(rate);
  EXPECT_EQ(e.partial(0), GaussRational(-1) * e);
  EXPECT_EQ(e.partial(1), GaussRational(Rational(0), Rational(3, 2)) * e);
  EXPECT_EQ(e.times_exponential({GaussRational(1), GaussRational(0)}).partial(0), F(2));
}

TEST(ExpPoly, CancellationRemovesTerms) {
  for_all(30, 24, [](Gen& g, int) {
    const F f = g.field(3);
    EXPECT_TRUE((f - f).is_zero());
    EXPECT_EQ(f + F(3) - f, F(3));
  });
}

TEST(ExpPoly, EmbedMovesVariables) {
  Polynomial<GaussRational> p = Polynomial<GaussRational>::variable(2, 1);
  const F f = F::term({GaussRational(0), GaussRational(2)}, p);
  const F e = f.embed(4, {0, 3});
  EXPECT_EQ(e.partial(3), f.partial(1).embed(4, {0, 3}));
  EXPECT_TRUE(e.partial(1).is_zero());
  EXPECT_THROW(f.embed(2, {0, 5}), Error);
}

TEST(ExpPoly, AxisChecks) {
  const F f(2);
  EXPECT_THROW(f.partial(2), Error);
  EXPECT_THROW(F(2) + F(3), Error);
}

TEST(Polynomial, SubstituteAndGrading) {
  using P = Polynomial<Rational>;
  const P x = P::variable(2, 0), y = P::variable(2, 1);
  const P p = x * x * y + Rational(3) * y + P::constant(2, 5);
  EXPECT_EQ(p.substitute(1, 2), Rational(2) * x * x + P::constant(2, 11));
  const std::array<std::size_t, 1> ax{0};
  EXPECT_EQ(p.graded_part(ax, 2), x * x * y);
  EXPECT_EQ(p.truncate(ax, 1), Rational(3) * y + P::constant(2, 5));
  EXPECT_EQ(p.total_degree(), 3);
}
