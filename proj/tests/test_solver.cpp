#include <gtest/gtest.h>

#include <numbers>

#include "support.hpp"
#include "unfold/solver.hpp"
#include "unfold/studies.hpp"

using namespace unfold;
using namespace unfold::solver;
using fields::cplx;
using unfold::testing::Gen;

namespace {

GridSpec periodic(std::vector<std::size_t> n) {
  GridSpec s;
  for (std::size_t k = 0; k < n.size(); ++k) {
    s.axis_names.push_back("x" + std::to_string(k + 1));
    s.lower.push_back(0.0);
    s.upper.push_back(2.0 * std::numbers::pi);
    s.points.push_back(n[k]);
    s.periodic.push_back(true);
  }
  s.validate();
  return s;
}

GridField random_modes(Gen& g, const GridSpec& s) {
  GridField f(s);
  for (int m = 0; m < 3; ++m) {
    std::vector<int> k;
    for (std::size_t a = 0; a < s.dim(); ++a) k.push_back(g.integer(-4, 4));
    const cplx amp = g.complex(1.0);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const auto idx = s.unravel(i);
      double ph = 0.0;
      for (std::size_t a = 0; a < s.dim(); ++a) ph += k[a] * s.coordinate(a, idx[a]);
      f[i] += amp * std::exp(cplx(0.0, ph));
    }
  }
  return f;
}

EvolutionProblem se_problem(Gen& g, std::vector<std::size_t> n, std::size_t steps) {
  EvolutionProblem p;
  p.kind = Kind::Schroedinger;
  p.spatial_spec = periodic(std::move(n));
  p.initial = random_modes(g, p.spatial_spec);
  p.dt = 0.5 * p.max_stable_dt();
  p.steps = steps;
  return p;
}

EvolutionProblem kg_problem(Gen& g, std::vector<std::size_t> n, std::size_t steps, double mass_term) {
  EvolutionProblem p;
  p.kind = Kind::KleinGordon;
  p.mass_term = mass_term;
  p.spatial_spec = periodic(std::move(n));
  p.initial = random_modes(g, p.spatial_spec);
  p.initial_velocity = random_modes(g, p.spatial_spec);
  p.dt = 0.5 * p.max_stable_dt();
  p.steps = steps;
  return p;
}

}  // namespace

TEST(Solver, SchroedingerConservesNorm) {
  Gen g(71);
  for (auto n : {std::vector<std::size_t>{64}, std::vector<std::size_t>{16, 16}}) {
    const Trajectory t = evolve(se_problem(g, n, 100));
    EXPECT_LE(t.norm_drift, 1e-10);
    EXPECT_EQ(t.records.size(), 101u);
  }
}

TEST(Solver, KleinGordonConservesDiscreteEnergy) {
  Gen g(72);
  for (double mt : {1.0, 4.0}) {
    const Trajectory t = evolve(kg_problem(g, {64}, 100, mt));
    EXPECT_LE(t.energy_drift, 1e-6);
    EXPECT_FALSE(t.growing_mode);
  }
}

TEST(Solver, NegativeMassTermFlagsGrowingMode) {
  Gen g(73);
  const Trajectory t = evolve(kg_problem(g, {32}, 20, -1.0));
  EXPECT_TRUE(t.growing_mode);
}

TEST(Solver, LeapfrogIsTimeReversible) {
  Gen g(74);
  const EvolutionProblem p = kg_problem(g, {32}, 0, 1.0);
  KgState s = kg_initial_state(p);
  const KgState start = s;
  for (int k = 0; k < 50; ++k) s = step_kg(p, s);
  s = reversed(s);
  for (int k = 0; k < 50; ++k) s = step_kg(p, s);
  s = reversed(s);
  for (std::size_t i = 0; i < s.current.size(); ++i) EXPECT_NEAR(std::abs(s.current[i] - start.current[i]), 0.0, 1e-10);
}

TEST(Solver, PlaneWaveRotatesAtDiscreteFrequency) {
  // Crank-Nicolson on one Fourier mode: psi_{n+1} = psi_n * (1 - i a) / (1 + i a)
  // with a = dt * lambda / (2 c m), lambda the discrete Laplacian eigenvalue.
  const GridSpec s = periodic({32});
  EvolutionProblem p;
  p.spatial_spec = s;
  p.initial = GridField::from_function(s, [](const std::vector<double>& x) { return std::exp(cplx(0.0, 3.0 * x[0])); });
  p.dt = 0.5 * p.max_stable_dt();
  p.steps = 1;
  const double h = s.spacing(0);
  const double lambda = 4.0 * std::pow(std::sin(3.0 * h / 2.0), 2) / (h * h);
  const double a = p.dt * lambda / (2.0 * 2.0 * 1.0);
  const cplx factor = (1.0 - cplx(0, a)) / (1.0 + cplx(0, a));
  const SeStep st = step_se(p, p.initial);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(std::abs(st.psi[i] - factor * p.initial[i]), 0.0, 1e-11);
}

TEST(Solver, GuardsRejectBadProblems) {
  Gen g(75);
  EvolutionProblem p = se_problem(g, {16}, 1);
  p.dt = 2.0 * p.max_stable_dt();
  try {
    evolve(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CflViolation);
  }
  EvolutionProblem q = kg_problem(g, {16}, 1, 1.0);
  q.dt = 1.01 * q.max_stable_dt();
  EXPECT_THROW(evolve(q), Error);
  EvolutionProblem r = se_problem(g, {16}, 1);
  r.spatial_spec.periodic[0] = false;
  EXPECT_THROW(r.validate(), Error);
}

TEST(Solver, CoefficientsFromCertificates) {
  const auto kg = oracle::certify_reduction(geometry::minkowski5(), oracle::kg_ansatz(2, oracle::Orientation::Oscillatory),
                                            oracle::kg_candidates(2));
  EXPECT_EQ(kg_mass_term(kg), 4.0);
  for (auto [conv, c] : {std::pair{geometry::LightconeConvention::Prose, 2.0},
                         std::pair{geometry::LightconeConvention::EqSixExact, 4.0}}) {
    const auto se = oracle::certify_reduction(geometry::lightcone5(conv), oracle::se_ansatz(1, oracle::Orientation::Paper),
                                              oracle::se_candidates(1));
    EXPECT_EQ(se_coefficient(se, 1), c);
  }
}

TEST(Solver, DispersionConvergesAtSecondOrder) {
  const std::vector<std::size_t> n{16, 32, 64};
  const auto kg = studies::kg_dispersion(1.0, 2, 0.5, n);
  const auto se = studies::se_dispersion(1.0, 2, 0.5, n);
  EXPECT_DOUBLE_EQ(kg.target, std::sqrt(5.0));
  EXPECT_DOUBLE_EQ(se.target, 2.0);
  for (double o : kg.orders) EXPECT_GE(o, 2.0);
  for (double o : se.orders) EXPECT_GE(o, 2.0);
}
