#include <gtest/gtest.h>

#include "support.hpp"
#include "unfold/fields.hpp"
#include "unfold/studies.hpp"

using namespace unfold;
using namespace unfold::fields;
using unfold::testing::for_all;
using unfold::testing::Gen;

namespace {

GridSpec box(std::vector<std::size_t> n) {
  std::vector<std::string> names;
  for (std::size_t k = 0; k < n.size(); ++k) names.push_back("x" + std::to_string(k));
  return GridSpec::box(names, std::vector<double>(n.size(), -0.5), std::vector<double>(n.size(), 1.0), n);
}

GridField random_field(Gen& g, const GridSpec& s) {
  GridField f(s);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = g.complex(1.0);
  return f;
}

GaussRational rational_rate(Gen& g) { return GaussRational(g.rational(3), g.rational(3)); }

}  // namespace

TEST(Grid, SpecGeometry) {
  const GridSpec s = box({5, 3});
  EXPECT_EQ(s.size(), 15u);
  EXPECT_DOUBLE_EQ(s.spacing(0), 0.375);
  EXPECT_DOUBLE_EQ(s.coordinate(1, 2), 1.0);
  EXPECT_EQ(s.unravel(7), (std::vector<std::size_t>{2, 1}));
  EXPECT_EQ(interior_nodes(s).size(), 3u);
  GridSpec p = s;
  p.periodic = {true, false};
  EXPECT_DOUBLE_EQ(p.spacing(0), 0.3);
  EXPECT_EQ(interior_nodes(p).size(), 5u);
}

TEST(Grid, RejectsBadSpecs) {
  EXPECT_THROW(box({1, 5}), Error);
  EXPECT_THROW(GridSpec::box({"a"}, {1.0}, {0.0}, {5}), Error);
}

TEST(Grid, CentralDifferencesExactOnQuadratics) {
  const GridSpec s = box({7, 6});
  const GridField f = GridField::from_function(s, [](const std::vector<double>& x) {
    return cplx(x[0] * x[0] - 3.0 * x[0] * x[1], 2.0 * x[1] * x[1]);
  });
  const GridField d0 = central_derivative(f, 0);
  GridOperator lap = GridOperator::zero(2);
  lap.second[0][0] = 1.0;
  lap.second[1][1] = 1.0;
  lap.second[0][1] = lap.second[1][0] = 0.5;
  const GridField l = apply_grid_operator(f, lap);
  for (std::size_t i : interior_nodes(s)) {
    const auto idx = s.unravel(i);
    const double x = s.coordinate(0, idx[0]), y = s.coordinate(1, idx[1]);
    EXPECT_NEAR(std::abs(d0[i] - cplx(2.0 * x - 3.0 * y, 0.0)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(l[i] - cplx(2.0 - 3.0, 4.0)), 0.0, 1e-11);
  }
}

TEST(Grid, StencilConvergesAtSecondOrder) {
  double prev = 0.0;
  for (std::size_t n : {11u, 21u, 41u}) {
    const GridSpec s = box({n});
    const GridField f = GridField::from_function(s, [](const std::vector<double>& x) { return std::exp(cplx(0, 3) * x[0]); });
    GridOperator op = GridOperator::zero(1);
    op.second[0][0] = 1.0;
    op.zeroth = 9.0;
    const double err = interior_norms(apply_grid_operator(f, op)).max;
    if (prev > 0.0) {
      EXPECT_NEAR(std::log2(prev / err), 2.0, 0.02);
    }
    prev = err;
  }
}

TEST(Fields, AnsatzRoundTripHasNoDefect) {
  for_all(20, 61, [](Gen& g, int) {
    const GridSpec full = box({5, 6, 7});
    oracle::ReductionAnsatz a{1, rational_rate(g), {0, 2}, "test"};
    const GridField u = random_field(g, full.select_axes({0, 2}));
    const ReducedField r = reduce_field(apply_ansatz(u, a, full), a);
    EXPECT_LT(r.max_equivariance_defect, 1e-12);
    for (std::size_t i = 0; i < u.size(); ++i) EXPECT_NEAR(std::abs(r.field[i] - u[i]), 0.0, 1e-12);
  });
}

TEST(Fields, NonEquivariantFieldReportsDefect) {
  Gen g(62);
  const GridSpec full = box({5, 6});
  oracle::ReductionAnsatz a{1, GaussRational(-1), {0}, "test"};
  EXPECT_GT(reduce_field(random_field(g, full), a).max_equivariance_defect, 1e-3);
}

// The full stencil on exp(rate x_d) u equals the profile times the discrete
// reduced operator on u, node by node.
TEST(Fields, StencilCommutesWithTheAnsatz) {
  for_all(20, 63, [](Gen& g, int) {
    const GridSpec full = box({6, 7, 6});
    RationalMatrix coeffs = g.symmetric_nondegenerate(3, 2);
    oracle::ReductionAnsatz a{2, rational_rate(g), {0, 1}, "test"};
    const GridField u = random_field(g, full.select_axes({0, 1}));
    const GridField lhs = apply_grid_operator(apply_ansatz(u, a, full), to_grid_operator(coeffs, GaussRational(0)));
    const GridOperator red = discrete_reduced_operator(coeffs, a, full.spacing(2));
    const GridField rhs = apply_ansatz(apply_grid_operator(u, red), a, full);
    for (std::size_t i : interior_nodes(full)) EXPECT_NEAR(std::abs(lhs[i] - rhs[i]), 0.0, 1e-9 * (1.0 + std::abs(lhs[i])));
  });
}

TEST(Fields, DiscreteReducedOperatorTendsToCertified) {
  const auto metric = geometry::minkowski5();
  const auto a = oracle::kg_ansatz(1, oracle::Orientation::Paper);
  const auto cert = oracle::reduced_operator(metric, a);
  double prev = 0.0;
  for (double h : {0.1, 0.05, 0.025}) {
    const GridOperator d = discrete_reduced_operator(geometry::laplace_beltrami_coeffs(metric), a, h);
    const double err = std::abs(d.zeroth - cert.zeroth.to_complex());
    if (prev > 0.0) {
      EXPECT_NEAR(std::log2(prev / err), 2.0, 0.01);
    }
    prev = err;
  }
}

TEST(Fields, SpectralResidualVanishesOnShell) {
  const auto metric = geometry::minkowski5();
  PlaneWaveMode m;
  m.momentum = {cplx(std::sqrt(5.0)), 2.0, 0.0, 0.0, 1.0};
  EXPECT_LT(spectral_residual(PlaneWaveSum{{m}}, geometry::laplace_beltrami_coeffs(metric), GaussRational(0)), 1e-12);
  m.momentum[0] = 3.0;
  EXPECT_GT(spectral_residual(PlaneWaveSum{{m}}, geometry::laplace_beltrami_coeffs(metric), GaussRational(0)), 1.0);
}

TEST(Fields, PlaneWaveDerivativeIsAnalytic) {
  PlaneWaveMode m;
  m.momentum = {1.5, cplx(0.0, 1.0)};
  m.amplitude = cplx(2.0, -1.0);
  const PlaneWaveSum w{{m}};
  const std::vector<double> x{0.3, -0.2};
  EXPECT_NEAR(std::abs(w.derivative(0).evaluate(x) - cplx(0, 1.5) * w.evaluate(x)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(w.conj().evaluate(x) - std::conj(w.evaluate(x))), 0.0, 1e-14);
}

TEST(Fields, SliceRestriction) {
  Gen g(64);
  const GridSpec s = box({5, 6});
  const GridField f = random_field(g, s);
  const GridField sl = restrict_to_slice(f, 0, 2);
  ASSERT_EQ(sl.size(), 6u);
  for (std::size_t j = 0; j < 6; ++j) EXPECT_EQ(sl[j], f[2 * 6 + j]);
  EXPECT_THROW(restrict_to_slice(f, 0, 5), Error);
}

TEST(Fields, ResidualStudiesConvergeAtSecondOrder) {
  using namespace unfold::studies;
  for (auto s : {ResidualStudy::Kg, ResidualStudy::Se}) {
    ResidualParams p;
    p.study = s;
    const StudyResult r = run_residual_study(p);
    ASSERT_EQ(r.orders.size(), 2u);
    EXPECT_TRUE(r.orders_within(1.9, 2.1)) << r.name << " " << r.orders[0] << " " << r.orders[1];
  }
}

TEST(Fields, OffShellStudyDoesNotConverge) {
  using namespace unfold::studies;
  ResidualParams p;
  p.off_shell = true;
  const StudyResult r = run_residual_study(p);
  EXPECT_FALSE(r.orders_within(1.9, 2.1));
}
