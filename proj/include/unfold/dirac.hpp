#pragma once

#include <array>
#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "unfold/exppoly.hpp"
#include "unfold/grid.hpp"
#include "unfold/scalar.hpp"

namespace unfold::dirac {

using cplx = std::complex<double>;
using SurdMatrix = Matrix<QuadSurd>;
using ExactField = ExpPoly<QuadSurd>;
using ExactSpinor = std::array<ExactField, 4>;
using CMatrix = std::array<std::array<cplx, 4>, 4>;

// standard: {g_mu, g_nu} = 2 eta_mu_nu. paper: {g_mu, g_nu} = eta_mu_nu, i.e. the
// standard matrices over sqrt(2).
enum class Normalization { Standard, Paper };

std::string_view normalization_name(Normalization n);
Normalization parse_normalization(std::string_view name);

// Dirac representation, upper index: g0 = diag(1, 1, -1, -1), gk = [[0, sk], [-sk, 0]].
struct GammaSet {
  Normalization normalization = Normalization::Standard;
  std::array<SurdMatrix, 4> gamma;

  static GammaSet dirac(Normalization n);
  // c with M^2 = c m^2 (s^2 - |xi|^2) I.
  double clifford_scale() const { return normalization == Normalization::Standard ? 1.0 : 0.5; }
  CMatrix numeric(std::size_t mu) const;
};

struct AnticommutatorEntry {
  std::size_t mu = 0;
  std::size_t nu = 0;
  bool holds = false;
};

// g_mu g_nu + g_nu g_mu against the normalization's right-hand side, 16 pairs.
std::vector<AnticommutatorEntry> anticommutator_table(const GammaSet& g);

CMatrix identity4();
CMatrix matmul(const CMatrix& a, const CMatrix& b);
double max_abs_diff(const CMatrix& a, const CMatrix& b);

// E = exp(i m (s g0 - xi^k gk)) in closed form.
CMatrix clifford_exponential(double s, const std::array<double, 3>& xi, double m, const GammaSet& g);
// Partial sums of the exponential series, as an independent reference.
CMatrix clifford_series(double s, const std::array<double, 3>& xi, double m, const GammaSet& g, int terms);

// u(p) exp(-i p.x) with u the first nonzero column of (pslash + m), standard
// matrices. p carries upper indices and must satisfy p^2 = m^2.
ExactSpinor plane_wave_spinor(const std::vector<Rational>& p, const Rational& m);
ExactSpinor constant_spinor(const std::array<GaussRational, 4>& value);

// (i g^mu d_mu + sign * m) psi, exactly.
ExactSpinor dirac_operator(const ExactSpinor& psi, const Rational& m, const GammaSet& g, int sign = -1);

// (i dslash - m)(i dslash + m) psi + (box + m^2) psi vanishes on a fixed probe family.
bool dirac_squared_holds(const GammaSet& g, const Rational& m);

enum class EightConvention { Printed, LaplaceBeltrami };

std::string_view eight_convention_name(EightConvention c);
EightConvention parse_eight_convention(std::string_view name);

struct DiracCertificate {
  std::string lhs_description;
  std::string rhs_description;
  std::string normalization;
  std::string convention;
  int truncation_order = 0;
  bool verdict = false;
  // z = (s, xi): degree-0 part of KG8(E psi) against factor * (i dslash - m) psi.
  bool degree0_matches = false;
  QuadSurd degree0_factor;
  bool dirac_squared = false;
  std::vector<std::string> residual_terms;     // (i dslash - m) psi
  std::vector<std::string> obstruction_terms;  // z-degree >= 1 remainder
  std::vector<std::string> convention_notes;
};

// Substitutes E_N psi, with E_N the order-N Taylor polynomial of the Clifford
// exponential, into the 8-D operator, and compares with E_N * factor * (i dslash - m) psi
// on every z-degree the truncation determines (0 .. N-1).
DiracCertificate reduce_to_dirac(const ExactSpinor& psi, const Rational& m, const GammaSet& g,
                                 EightConvention convention = EightConvention::Printed, int order = 3);

// Throws NonCommutingRemainder listing the obstruction when E does not factor.
void require_factorization(const DiracCertificate& cert);

using SpinorGrid = std::array<fields::GridField, 4>;

SpinorGrid sample_spinor(const fields::GridSpec& spec, const ExactSpinor& psi);

struct DiracResidual {
  SpinorGrid residual;
  fields::Norms norms;
};

// Central-difference i g^mu D_mu psi - m psi on interior nodes.
DiracResidual dirac_residual(const SpinorGrid& psi, double m, const GammaSet& g);

// (iD - m)(iD + m) psi against (-box - m^2) psi with the compact stencil, max
// over nodes at least two layers from a bounded boundary.
double clifford_square_gap(const SpinorGrid& psi, double m, const GammaSet& g);

}  // namespace unfold::dirac
