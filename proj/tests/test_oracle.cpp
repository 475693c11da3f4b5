#include <gtest/gtest.h>

#include "support.hpp"
#include "unfold/oracle.hpp"

using namespace unfold;
using namespace unfold::oracle;
using geometry::LightconeConvention;
using unfold::testing::for_all;
using unfold::testing::Gen;
using cplx = std::complex<double>;

namespace {

// Independent symbol check: on exp(rate x_d + i q . y) the full operator is
// the scalar sum g^{mu nu} k_mu k_nu with k_d = rate, k_reduced = i q; the
// reduced operator L has symbol sum a k k + sum b k + c on the reduced part.
void expect_symbol_agreement(const geometry::Metric& metric, const ReductionAnsatz& a, const LinearOperator& reduced,
                             std::uint64_t seed) {
  Gen g(seed);
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<cplx> k(metric.dim());
    k[a.direction_axis] = a.rate.to_complex();
    std::vector<cplx> kr;
    for (std::size_t ax : a.reduced_axes) {
      k[ax] = cplx(0.0, g.real(-3.0, 3.0));
      kr.push_back(k[ax]);
    }
    cplx full = 0.0;
    for (std::size_t m = 0; m < metric.dim(); ++m)
      for (std::size_t n = 0; n < metric.dim(); ++n) full += to_double(metric.inverse()(m, n)) * k[m] * k[n];
    cplx red = reduced.zeroth.to_complex();
    for (std::size_t i = 0; i < kr.size(); ++i) {
      red += reduced.first[i].to_complex() * kr[i];
      for (std::size_t j = 0; j < kr.size(); ++j) red += reduced.second(i, j).to_complex() * kr[i] * kr[j];
    }
    EXPECT_NEAR(std::abs(full - red), 0.0, 1e-12 * (1.0 + std::abs(full)));
  }
}

LinearOperator random_operator(Gen& g, std::size_t dim) {
  LinearOperator op = LinearOperator::zero(dim, "random");
  for (std::size_t i = 0; i < dim; ++i) {
    op.first[i] = g.gauss();
    for (std::size_t j = i; j < dim; ++j) op.second(i, j) = op.second(j, i) = g.gauss();
  }
  op.zeroth = g.gauss();
  return op;
}

}  // namespace

TEST(Oracle, KgPaperOrientationCertifiesMinusMassSquared) {
  const auto a = kg_ansatz(1, Orientation::Paper);
  const auto cert = certify_reduction(geometry::minkowski5(), a, kg_candidates(1));
  EXPECT_TRUE(cert.verdict);
  EXPECT_EQ(cert.winner, "d0^2 - lap - m^2");
  EXPECT_EQ(cert.winner_factor, GaussRational(1));
  expect_symbol_agreement(geometry::minkowski5(), a, cert.reduced, 31);
}

TEST(Oracle, KgOscillatoryOrientationCertifiesStandardKleinGordon) {
  const auto a = kg_ansatz(1, Orientation::Oscillatory);
  const auto cert = certify_reduction(geometry::minkowski5(), a, kg_candidates(1));
  EXPECT_TRUE(cert.verdict);
  EXPECT_EQ(cert.winner, "d0^2 - lap + m^2");
  expect_symbol_agreement(geometry::minkowski5(), a, cert.reduced, 32);
}

TEST(Oracle, SeProseCertifiesTwoImDt) {
  const auto g = geometry::lightcone5(LightconeConvention::Prose);
  const auto a = se_ansatz(1, Orientation::Paper);
  const auto cert = certify_reduction(g, a, se_candidates(1));
  EXPECT_TRUE(cert.verdict);
  EXPECT_EQ(cert.winner, "2 i m dt + lap");
  EXPECT_EQ(cert.winner_factor, GaussRational(-1));
  expect_symbol_agreement(g, a, cert.reduced, 33);
}

TEST(Oracle, SeExactConventionDoublesTheCoefficient) {
  const auto g = geometry::lightcone5(LightconeConvention::EqSixExact);
  const auto a = se_ansatz(1, Orientation::Paper);
  const auto cert = certify_reduction(g, a, se_candidates(1));
  EXPECT_TRUE(cert.verdict);
  EXPECT_EQ(cert.winner, "4 i m dt + lap");
  expect_symbol_agreement(g, a, cert.reduced, 34);
}

TEST(Oracle, MassScalesTheCertificate) {
  for (const Rational& m : {Rational(1, 2), Rational(3), Rational(7, 3)}) {
    const auto kg = certify_reduction(geometry::minkowski5(), kg_ansatz(m, Orientation::Paper), kg_candidates(m));
    EXPECT_TRUE(kg.verdict);
    EXPECT_EQ(kg.reduced.zeroth, GaussRational(-m * m));
    const auto se = certify_reduction(geometry::lightcone5(LightconeConvention::Prose), se_ansatz(m, Orientation::Paper),
                                      se_candidates(m));
    EXPECT_TRUE(se.verdict);
    EXPECT_EQ(se.winner, "2 i m dt + lap");
  }
}

TEST(Oracle, LosingCandidatesRecordMismatch) {
  const auto cert = certify_reduction(geometry::minkowski5(), kg_ansatz(1, Orientation::Paper), kg_candidates(1));
  int matches = 0;
  for (const auto& c : cert.candidates) {
    if (c.matches) ++matches;
    else EXPECT_FALSE(c.mismatch_terms.empty()) << c.name;
  }
  EXPECT_EQ(matches, 1);
  EXPECT_TRUE(cert.difference.is_zero());
}

TEST(Oracle, IdentifyRecoversRandomOperators) {
  for_all(25, 35, [](Gen& g, int) {
    const std::size_t dim = static_cast<std::size_t>(g.integer(1, 4));
    const LinearOperator op = random_operator(g, dim);
    const LinearOperator got =
        identify_operator([&](const Field& f) { return op.apply(f); }, dim, default_probes(dim));
    EXPECT_EQ(got, op);
  });
}

TEST(Oracle, IdentifyRejectsNonlinearMaps) {
  EXPECT_THROW(identify_operator([](const Field& f) { return f * f; }, 2, default_probes(2)), Error);
}

TEST(Oracle, ProbeBasisSeparatesOperatorsDifferingInOneCoefficient) {
  for_all(25, 36, [](Gen& g, int) {
    const std::size_t dim = 3;
    const LinearOperator a = random_operator(g, dim);
    LinearOperator b = a;
    switch (g.integer(0, 2)) {
      case 0: b.zeroth += GaussRational(1); break;
      case 1: b.first[static_cast<std::size_t>(g.integer(0, 2))] += GaussRational(1); break;
      default: {
        const auto i = static_cast<std::size_t>(g.integer(0, 2)), j = static_cast<std::size_t>(g.integer(0, 2));
        b.second(i, j) += GaussRational(1);
        if (i != j) b.second(j, i) += GaussRational(1);
      }
    }
    bool separated = false;
    for (const auto& p : default_probes(dim)) separated = separated || !(a.apply(p) == b.apply(p));
    EXPECT_TRUE(separated);
  });
}

TEST(Oracle, ProbeBasisCount) {
  // (dim + 2 choose 2) monomials of degree <= 2, per rate.
  const auto basis = probe_basis(3, 2, {Rate(3, GaussRational(0)), Rate(3, GaussRational(1))});
  EXPECT_EQ(basis.size(), 20u);
  EXPECT_THROW(probe_basis(3, 1, {Rate(3, GaussRational(0))}), Error);
}

TEST(Oracle, ProportionalityFindsFactor) {
  const auto cands = se_candidates(1);
  GaussRational f;
  EXPECT_TRUE(cands[0].scaled(GaussRational(Rational(-3, 2))).proportional_to(cands[0], &f));
  EXPECT_EQ(f, GaussRational(Rational(-3, 2)));
  EXPECT_FALSE(cands[0].proportional_to(cands[1], &f));
  EXPECT_FALSE(LinearOperator::zero(4).proportional_to(cands[0], &f));
}

TEST(Oracle, AnsatzValidation) {
  ReductionAnsatz a = kg_ansatz(1, Orientation::Paper);
  a.reduced_axes = {0, 1, 2, 4};
  EXPECT_THROW(a.validate(5), Error);
  EXPECT_THROW(kg_ansatz(1, Orientation::Paper).validate(4), Error);
}
