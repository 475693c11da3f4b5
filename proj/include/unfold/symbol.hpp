#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "unfold/exppoly.hpp"
#include "unfold/geometry.hpp"

namespace unfold::symbol {

struct CotangentPoint {
  std::vector<double> base;
  std::vector<double> momentum;
};

struct ShellConstraint {
  std::size_t axis;
  Rational value;
};

struct ShellSpec {
  RationalMatrix symbol_coeffs;
  std::vector<ShellConstraint> constraints;
  std::string convention;
  std::vector<std::string> momentum_names;
  // Remaining momenta other than `solved_axis` are drawn from [-bound, bound].
  double momentum_bound = 2.0;
  // Axis solved for in closed form by the sampler.
  std::size_t solved_axis = 0;

  void validate() const;
};

// p4 = m on cartesian-5d.
ShellSpec spacelike_shell(const Rational& m);
// p_s = m on lightcone-5d, symbol taken from the chosen convention.
ShellSpec lightlike_shell(const Rational& m, geometry::LightconeConvention convention);

double sigma(const RationalMatrix& coeffs, std::span<const double> p);
Rational sigma_exact(const RationalMatrix& coeffs, std::span<const Rational> p);

// sigma(p) = 0 restricted to the constraints, as a relation on the remaining
// momenta: p^T Q p + L . p + c = 0.
struct ReducedShell {
  std::size_t full_dim = 0;
  std::vector<std::size_t> remaining_axes;
  RationalMatrix quadratic;  // symmetric
  std::vector<Rational> linear;
  Rational constant;

  Polynomial<Rational> polynomial() const;
  std::string to_string(const std::vector<std::string>& names) const;
  friend bool operator==(const ReducedShell& a, const ReducedShell& b) {
    return a.remaining_axes == b.remaining_axes && a.quadratic == b.quadratic && a.linear == b.linear &&
           a.constant == b.constant;
  }
};

ReducedShell reduce_shell(const ShellSpec& spec);

// sigma as a polynomial in the momenta.
Polynomial<Rational> symbol_polynomial(const RationalMatrix& coeffs);

std::vector<std::vector<double>> sample_shell(const ShellSpec& spec, std::size_t n, std::uint64_t seed);

// p = (p_t, p1, p2, p3) on the lightlike shell 2 m p_t = |p|^2.
double kinetic_energy(std::span<const double> p, double m);

}  // namespace unfold::symbol
