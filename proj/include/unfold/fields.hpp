#pragma once

#include <complex>
#include <string>
#include <vector>

#include "unfold/geometry.hpp"
#include "unfold/grid.hpp"
#include "unfold/oracle.hpp"

namespace unfold::fields {

using oracle::ReductionAnsatz;

// amplitude * exp(i p . x); complex momenta give exponential profiles.
struct PlaneWaveMode {
  std::vector<cplx> momentum;
  cplx amplitude = 1.0;
};

struct PlaneWaveSum {
  std::vector<PlaneWaveMode> modes;

  std::size_t dim() const;
  void validate() const;
  cplx evaluate(const std::vector<double>& x) const;
  // d_axis of the sum, analytically.
  PlaneWaveSum derivative(std::size_t axis) const;
  PlaneWaveSum conj() const;
  PlaneWaveSum scaled(cplx s) const;
};

PlaneWaveSum operator+(const PlaneWaveSum& a, const PlaneWaveSum& b);

GridField synthesize(const GridSpec& spec, const PlaneWaveSum& waves);

GridField apply_ansatz(const GridField& u_reduced, const ReductionAnsatz& ansatz, const GridSpec& full_spec);

struct ReducedField {
  GridField field;
  double max_equivariance_defect = 0.0;
};

ReducedField reduce_field(const GridField& phi, const ReductionAnsatz& ansatz);

GridField restrict_to_slice(const GridField& phi, std::size_t axis, std::size_t index);

struct ResidualReport {
  GridField residual;
  Norms norms;
};

ResidualReport residual(const GridField& field, const RationalMatrix& op_coeffs, const GaussRational& mass_term);
ResidualReport residual(const GridField& field, const GridOperator& op);

double spectral_residual(const PlaneWaveSum& waves, const RationalMatrix& op_coeffs, const GaussRational& mass_term);

GridOperator to_grid_operator(const RationalMatrix& coeffs, const GaussRational& mass_term);
GridOperator to_grid_operator(const oracle::LinearOperator& op);

// The reduced operator that the central-difference stencil of `coeffs` induces
// on u when acting on exp(rate x_d) u with grid spacing h along x_d. The
// exponential is an eigenfunction of every central difference, so this is an
// exact discrete identity; its h -> 0 limit is the certified operator.
GridOperator discrete_reduced_operator(const RationalMatrix& coeffs, const ReductionAnsatz& ansatz, double h);

// Complex profile exp(rate * x).
cplx profile(const GaussRational& rate, double x);

}  // namespace unfold::fields
