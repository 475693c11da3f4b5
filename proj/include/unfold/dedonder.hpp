#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "unfold/fields.hpp"
#include "unfold/geometry.hpp"
#include "unfold/oracle.hpp"

namespace unfold::dedonder {

using fields::cplx;
using fields::GridField;
using fields::GridSpec;
using fields::PlaneWaveSum;
using geometry::Metric;

// chi = (phi, phibar, P^mu, Pbar^mu).
struct CovariantField {
  GridField phi;
  GridField phibar;
  std::vector<GridField> P;
  std::vector<GridField> Pbar;
  geometry::Chart chart = geometry::Chart::Cartesian5d;

  const GridSpec& spec() const { return phi.spec(); }
  void validate() const;
  bool is_physical(double tol = 1e-12) const;
};

// phi from the waves, P^mu = g^{mu nu} d_nu phi analytically, bars conjugate.
CovariantField plane_wave_section(const GridSpec& spec, const PlaneWaveSum& waves, const Metric& metric);

// Independent random plane-wave superpositions in every slot (a non-solution).
CovariantField random_section(const GridSpec& spec, const Metric& metric, std::uint64_t seed);

GridField hamiltonian_density(const CovariantField& chi, const Metric& metric);

// Riemann sum over interior nodes of Pbar^mu D_mu phi + P^mu D_mu phibar - H.
cplx action_value(const CovariantField& chi, const Metric& metric);
double action(const CovariantField& chi, const Metric& metric);

struct EquationResidual {
  std::string name;
  fields::ResidualReport report;
};

struct DdwResiduals {
  std::vector<EquationResidual> equations;
  double max_norm() const;
};

// d_mu phi - g_{mu nu} P^nu, d_mu P^mu, and the conjugate family.
DdwResiduals ddw_residuals(const CovariantField& chi, const Metric& metric);

// Variation probe U = mix (x) bump, supported away from the two outermost node
// layers of every axis so the discrete summation by parts has no boundary term.
struct VariationProbe {
  std::vector<double> center;
  std::vector<double> half_width;
  cplx phi_mix = 0.0;
  std::vector<cplx> P_mix;
  double bump(const std::vector<double>& x) const;
};

std::vector<VariationProbe> make_probes(const GridSpec& spec, std::size_t count, std::uint64_t seed);

// (S(chi + eps U) - S(chi - eps U)) / (2 eps). S is quadratic, so the ratio is
// evaluated in expanded form where eps cancels exactly; `action_difference_quotient`
// is the literal two-evaluation version.
double directional_derivative(const CovariantField& chi, const Metric& metric, const VariationProbe& probe);
double action_difference_quotient(const CovariantField& chi, const Metric& metric, const VariationProbe& probe,
                                  double eps);

struct GradientReport {
  double max_abs = 0.0;
  std::vector<double> per_probe;
  // Largest gap between the summed form and the literal quotient at this eps,
  // over the first literal_probes probes.
  double literal_epsilon = 1e-3;
  std::size_t literal_probes = 2;
  double literal_max_deviation = 0.0;
};

GradientReport schwinger_weiss_gradient(const CovariantField& chi, const Metric& metric, std::size_t num_probes,
                                        std::uint64_t seed);

// Reduced sections. pi[k] is the slot of P along reduced_axes[k]; lambda is the
// slot of P along the direction axis.
struct MomentumAnsatz {
  std::size_t direction_axis = 4;
  GaussRational rate;
  std::vector<std::size_t> reduced_axes{0, 1, 2, 3};
  std::string label;
};

// P^mu = e^{-m x4} pi^mu, P^4 = -m e^{-m x4} lambda.
MomentumAnsatz kg_momentum_ansatz(const Rational& m);
// P^mu = e^{i m s} pi^mu, P^s = i m e^{i m s} lambda.
MomentumAnsatz se_momentum_ansatz(const Rational& m);

struct ReducedCovariantField {
  GridField psi;
  GridField psibar;
  std::vector<GridField> pi;
  std::vector<GridField> pibar;
  GridField lambda;
  GridField lambdabar;
};

using ReducedCovariantFieldKG = ReducedCovariantField;
using ReducedCovariantFieldSE = ReducedCovariantField;

CovariantField assemble(const ReducedCovariantField& reduced, const MomentumAnsatz& ansatz, const GridSpec& full_spec,
                        geometry::Chart chart);

struct Extraction {
  ReducedCovariantField field;
  double max_equivariance_defect = 0.0;
};

Extraction extract(const CovariantField& chi, const MomentumAnsatz& ansatz);

CovariantField reduce_chi_kg(const ReducedCovariantFieldKG& reduced, const Rational& m, const GridSpec& full_spec);
CovariantField reduce_chi_se(const ReducedCovariantFieldSE& reduced, const Rational& m, const GridSpec& full_spec);

// First-order linear systems in symbolic form. Unknown 0 is the scalar field,
// 1..n the momentum slots along the axes, n+1 the lambda slot when present.
struct Term {
  std::size_t unknown = 0;
  int axis = -1;  // -1: no derivative
  GaussRational coeff;
};

struct Equation {
  std::string name;
  std::vector<Term> terms;
  bool divergence = false;
};

struct DdwSystem {
  std::string name;
  std::vector<std::string> axis_names;
  bool has_lambda = false;
  std::vector<Equation> equations;

  std::size_t dim() const { return axis_names.size(); }
  std::size_t unknown_count() const { return 1 + dim() + (has_lambda ? 1 : 0); }
  std::vector<std::string> unknown_names() const;
  std::vector<std::string> equation_strings() const;
  DdwSystem conjugate() const;
};

DdwSystem full_system(const Metric& metric);
// Recomputed from the metric and the momentum ansatz.
DdwSystem derived_reduced_system(const Metric& metric, const MomentumAnsatz& ansatz);
// As displayed for the two reductions (Euclidean reading of the spatial indices).
DdwSystem printed_kg_system(const Rational& m);
DdwSystem printed_se_system(const Rational& m);

// Solves the momentum equations for the momentum slots and substitutes into
// the divergence equation, on exp-poly probes; returns the induced operator on
// the scalar slot.
oracle::LinearOperator eliminate(const DdwSystem& system);

// Momentum slots implied by the momentum equations for a plane-wave scalar.
std::vector<PlaneWaveSum> solve_momenta(const DdwSystem& system, const PlaneWaveSum& scalar);

// Residual of every equation; unknowns ordered as in the system.
DdwResiduals evaluate_system(const DdwSystem& system, const std::vector<GridField>& unknowns);

}  // namespace unfold::dedonder
