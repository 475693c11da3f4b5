#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "unfold/dedonder.hpp"
#include "unfold/dirac.hpp"
#include "unfold/fields.hpp"
#include "unfold/oracle.hpp"

// Refinement studies shared by the command-line front end and the acceptance suite.
namespace unfold::studies {

using fields::cplx;

// Root q0 of the symbol of `op` on exp(i q . x) with q1.. fixed; the root with
// the smallest imaginary part, then the larger real part.
cplx solve_frequency(const oracle::LinearOperator& op, const std::vector<cplx>& spatial);

// exp(i (q0 x0 + k x1)) on the reduced coordinates; q0 = detune * root.
fields::PlaneWaveSum reduced_mode(const oracle::LinearOperator& op, double wavenumber, double detune = 1.0);

// The reduced waves times exp(rate x_d), written as plane waves in the full coordinates.
fields::PlaneWaveSum lift(const fields::PlaneWaveSum& reduced, const oracle::ReductionAnsatz& ansatz, std::size_t dim);

fields::GridSpec unit_box(const std::vector<std::string>& names, const std::vector<std::size_t>& points);

// Axes with more than 5 points are refined by halving the spacing per level.
std::vector<std::size_t> refine(const std::vector<std::size_t>& base, int level);

double observed_order(double e_coarse, double e_fine, double h_coarse, double h_fine);

struct LevelResult {
  std::vector<std::size_t> points;
  double h = 0.0;
  double max = 0.0;
  double l2 = 0.0;
  std::vector<std::pair<std::string, double>> per_equation;
};

struct StudyResult {
  std::string name;
  std::vector<LevelResult> levels;
  std::vector<double> orders;
  bool orders_within(double lo, double hi) const;
};

enum class ResidualStudy { Kg, Se, Dirac, Ddw, DdwKg, DdwSe };

std::string_view study_name(ResidualStudy s);
ResidualStudy parse_study(std::string_view name);
std::vector<std::size_t> default_grid(ResidualStudy s);

struct ResidualParams {
  ResidualStudy study = ResidualStudy::Kg;
  Rational mass = 1;
  oracle::Orientation orientation = oracle::Orientation::Paper;
  geometry::LightconeConvention convention = geometry::LightconeConvention::Prose;
  dirac::Normalization normalization = dirac::Normalization::Standard;
  bool printed_system = false;
  double wavenumber = 2.0;
  bool off_shell = false;
  std::vector<std::size_t> base_grid;  // empty: default_grid
  int levels = 3;
};

StudyResult run_residual_study(const ResidualParams& p);

// Schwinger-Weiss check at one resolution.
struct ActionLevel {
  std::vector<std::size_t> points;
  double h = 0.0;
  double gradient_max = 0.0;
  double random_gradient_max = 0.0;
  double contrast = 0.0;
  double literal_max_deviation = 0.0;
  std::vector<std::pair<std::string, double>> per_equation;
};

ActionLevel action_level(const std::vector<std::size_t>& points, const std::vector<double>& momentum,
                         std::size_t probes, std::uint64_t seed);

// Single-mode dispersion error |omega_h - omega| on periodic 1-D grids of N points.
struct DispersionResult {
  std::vector<std::size_t> points;
  std::vector<double> error;
  std::vector<double> orders;
  double target = 0.0;
};

// Leapfrog with dt = nu h, mass term +m^2; omega^2 = k^2 + m^2.
DispersionResult kg_dispersion(double m, int k, double nu, const std::vector<std::size_t>& points);
// Crank-Nicolson with dt = mu m h^2 and 2 i m dt psi = -lap psi; omega = k^2 / (2 m).
DispersionResult se_dispersion(double m, int k, double mu, const std::vector<std::size_t>& points);

}  // namespace unfold::studies
