#include <gtest/gtest.h>

#include <chrono>

#include "support.hpp"
#include "unfold/symbol.hpp"

using namespace unfold;
using namespace unfold::symbol;
using geometry::LightconeConvention;
using unfold::testing::for_all;
using unfold::testing::Gen;

namespace {

// Substitutes the constraints into the full symbol polynomial directly.
Polynomial<Rational> substituted(const ShellSpec& s) {
  Polynomial<Rational> p = symbol_polynomial(s.symbol_coeffs);
  for (const auto& c : s.constraints) p = p.substitute(c.axis, c.value);
  return p;
}

}  // namespace

TEST(Symbol, SpacelikeReducedRelation) {
  for (const Rational& m : {Rational(1), Rational(3, 2)}) {
    const ReducedShell r = reduce_shell(spacelike_shell(m));
    EXPECT_EQ(r.polynomial(), substituted(spacelike_shell(m)));
    // p0^2 - |p|^2 - m^2
    EXPECT_EQ(r.constant, -m * m);
    EXPECT_EQ(r.quadratic(0, 0), Rational(1));
    EXPECT_EQ(r.quadratic(1, 1), Rational(-1));
  }
}

TEST(Symbol, LightlikeReducedRelationPerConvention) {
  const ReducedShell prose = reduce_shell(lightlike_shell(1, LightconeConvention::Prose));
  EXPECT_EQ(prose.to_string({"pt", "p1", "p2", "p3", "ps"}), "-1*p3^2 + -1*p2^2 + -1*p1^2 + 2*pt = 0");
  const ReducedShell exact = reduce_shell(lightlike_shell(1, LightconeConvention::EqSixExact));
  EXPECT_EQ(exact.linear[0], Rational(4));
  for (auto c : {LightconeConvention::Prose, LightconeConvention::EqSixExact})
    EXPECT_EQ(reduce_shell(lightlike_shell(2, c)).polynomial(), substituted(lightlike_shell(2, c)));
}

TEST(Symbol, ReduceMatchesSubstitutionForRandomSymbols) {
  for_all(30, 41, [](Gen& g, int) {
    ShellSpec s;
    const std::size_t n = static_cast<std::size_t>(g.integer(2, 5));
    s.symbol_coeffs = g.symmetric_nondegenerate(n);
    s.constraints = {{n - 1, g.rational()}};
    s.convention = "random";
    for (std::size_t k = 0; k < n; ++k) s.momentum_names.push_back("p" + std::to_string(k));
    EXPECT_EQ(reduce_shell(s).polynomial(), substituted(s));
  });
}

TEST(Symbol, ExactAndFloatingSymbolAgree) {
  for_all(50, 42, [](Gen& g, int) {
    const RationalMatrix q = g.symmetric_nondegenerate(4);
    std::vector<Rational> p(4);
    std::vector<double> pd(4);
    for (std::size_t k = 0; k < 4; ++k) {
      p[k] = g.rational();
      pd[k] = to_double(p[k]);
    }
    EXPECT_NEAR(sigma(q, pd), to_double(sigma_exact(q, p)), 1e-12);
  });
}

TEST(Symbol, SamplesLieOnTheShell) {
  for (const Rational& m : {Rational(1), Rational(5, 4)}) {
    for (const ShellSpec& s : {spacelike_shell(m), lightlike_shell(m, LightconeConvention::Prose),
                               lightlike_shell(m, LightconeConvention::EqSixExact)}) {
      const auto pts = sample_shell(s, 500, 9);
      ASSERT_EQ(pts.size(), 500u);
      const double md = to_double(m);
      for (const auto& p : pts) {
        double scale = md * md;
        for (double v : p) scale += v * v;
        EXPECT_LE(std::abs(sigma(s.symbol_coeffs, p)), 1e-12 * scale);
        for (const auto& c : s.constraints) EXPECT_EQ(p[c.axis], to_double(c.value));
      }
    }
  }
}

TEST(Symbol, LightlikeSamplesSatisfyKineticRelation) {
  const auto pts = sample_shell(lightlike_shell(2, LightconeConvention::Prose), 200, 3);
  for (const auto& p : pts) {
    const std::vector<double> q{p[0], p[1], p[2], p[3]};
    EXPECT_NEAR(p[0], kinetic_energy(q, 2.0), 1e-12 * (1.0 + std::abs(p[0])));
  }
}

TEST(Symbol, SamplingIsDeterministicPerSeed) {
  const auto s = spacelike_shell(1);
  EXPECT_EQ(sample_shell(s, 50, 7), sample_shell(s, 50, 7));
  EXPECT_NE(sample_shell(s, 50, 7), sample_shell(s, 50, 8));
}

TEST(Symbol, TenThousandSamplesUnderASecond) {
  const auto start = std::chrono::steady_clock::now();
  const auto pts = sample_shell(lightlike_shell(1, LightconeConvention::Prose), 10000, 1);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_EQ(pts.size(), 10000u);
  EXPECT_LT(secs, 1.0);
}

TEST(Symbol, ValidationErrors) {
  ShellSpec s = spacelike_shell(1);
  s.constraints.push_back({9, 1});
  EXPECT_THROW(s.validate(), Error);
  ShellSpec e = spacelike_shell(1);
  e.solved_axis = 4;
  EXPECT_THROW(e.validate(), Error);
  EXPECT_THROW(sample_shell(e, 1, 1), Error);
}
