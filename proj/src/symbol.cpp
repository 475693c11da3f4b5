#include "unfold/symbol.hpp"

#include <cmath>
#include <random>

namespace unfold::symbol {

void ShellSpec::validate() const {
  const std::size_t dim = symbol_coeffs.rows();
  if (dim == 0 || !symbol_coeffs.is_symmetric()) throw Error(ErrorKind::InvalidArgument, "symbol must be symmetric");
  if (constraints.empty()) throw Error(ErrorKind::InvalidArgument, "shell needs a constraint");
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    if (constraints[i].axis >= dim) throw Error(ErrorKind::AxisOutOfRange, "constraint axis");
    if (constraints[i].axis == solved_axis) throw Error(ErrorKind::AxisMismatch, "solved axis is constrained");
    for (std::size_t j = 0; j < i; ++j)
      if (constraints[i].axis == constraints[j].axis) throw Error(ErrorKind::InvalidArgument, "duplicate constraint axis");
  }
  if (solved_axis >= dim) throw Error(ErrorKind::AxisOutOfRange, "solved axis");
}

ShellSpec spacelike_shell(const Rational& m) {
  ShellSpec s;
  s.symbol_coeffs = geometry::laplace_beltrami_coeffs(geometry::minkowski5());
  s.constraints = {{4, m}};
  s.convention = "cartesian";
  s.momentum_names = {"p0", "p1", "p2", "p3", "p4"};
  s.solved_axis = 0;
  return s;
}

ShellSpec lightlike_shell(const Rational& m, geometry::LightconeConvention convention) {
  ShellSpec s;
  s.symbol_coeffs = geometry::laplace_beltrami_coeffs(geometry::lightcone5(convention));
  s.constraints = {{4, m}};
  s.convention = std::string(geometry::convention_name(convention));
  s.momentum_names = {"pt", "p1", "p2", "p3", "ps"};
  s.solved_axis = 0;
  return s;
}

double sigma(const RationalMatrix& coeffs, std::span<const double> p) {
  if (p.size() != coeffs.rows()) throw Error(ErrorKind::DimensionMismatch, "momentum dimension");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j)
      if (coeffs(i, j) != 0) sum += to_double(coeffs(i, j)) * p[i] * p[j];
  return sum;
}

Rational sigma_exact(const RationalMatrix& coeffs, std::span<const Rational> p) {
  if (p.size() != coeffs.rows()) throw Error(ErrorKind::DimensionMismatch, "momentum dimension");
  Rational sum = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j) sum += coeffs(i, j) * p[i] * p[j];
  return sum;
}

Polynomial<Rational> symbol_polynomial(const RationalMatrix& coeffs) {
  const std::size_t dim = coeffs.rows();
  Polynomial<Rational> s(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      Exponents e(dim, 0);
      e[i] += 1;
      e[j] += 1;
      s.add_term(e, coeffs(i, j));
    }
  return s;
}

Polynomial<Rational> ReducedShell::polynomial() const {
  const std::size_t full = full_dim;
  Polynomial<Rational> p(full);
  for (std::size_t i = 0; i < remaining_axes.size(); ++i) {
    for (std::size_t j = 0; j < remaining_axes.size(); ++j) {
      Exponents e(full, 0);
      e[remaining_axes[i]] += 1;
      e[remaining_axes[j]] += 1;
      p.add_term(e, quadratic(i, j));
    }
    Exponents e(full, 0);
    e[remaining_axes[i]] = 1;
    p.add_term(e, linear[i]);
  }
  p.add_term(Exponents(full, 0), constant);
  return p;
}

std::string ReducedShell::to_string(const std::vector<std::string>& names) const {
  return polynomial().to_string(names) + " = 0";
}

ReducedShell reduce_shell(const ShellSpec& spec) {
  spec.validate();
  const auto& g = spec.symbol_coeffs;
  const std::size_t dim = g.rows();
  std::vector<bool> fixed(dim, false);
  std::vector<Rational> value(dim, Rational(0));
  for (const auto& c : spec.constraints) {
    fixed[c.axis] = true;
    value[c.axis] = c.value;
  }
  ReducedShell r;
  r.full_dim = dim;
  for (std::size_t a = 0; a < dim; ++a)
    if (!fixed[a]) r.remaining_axes.push_back(a);
  const std::size_t n = r.remaining_axes.size();
  r.quadratic = RationalMatrix(n, n);
  r.linear.assign(n, Rational(0));
  r.constant = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) r.quadratic(i, j) = g(r.remaining_axes[i], r.remaining_axes[j]);
    for (const auto& c : spec.constraints) r.linear[i] += 2 * g(r.remaining_axes[i], c.axis) * c.value;
  }
  for (const auto& a : spec.constraints)
    for (const auto& b : spec.constraints) r.constant += g(a.axis, b.axis) * a.value * b.value;
  bool degenerate = true;
  for (std::size_t i = 0; i < n && degenerate; ++i) {
    if (r.linear[i] != 0) degenerate = false;
    for (std::size_t j = 0; j < n; ++j)
      if (r.quadratic(i, j) != 0) degenerate = false;
  }
  if (degenerate) throw Error(ErrorKind::DegenerateConstraint, "symbol does not depend on the remaining momenta");
  return r;
}

std::vector<std::vector<double>> sample_shell(const ShellSpec& spec, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "sample count must be positive");
  ReducedShell shell = reduce_shell(spec);
  const std::size_t dim = spec.symbol_coeffs.rows();
  const std::size_t rn = shell.remaining_axes.size();
  std::size_t solved = rn;
  for (std::size_t i = 0; i < rn; ++i)
    if (shell.remaining_axes[i] == spec.solved_axis) solved = i;
  if (solved == rn) throw Error(ErrorKind::AxisMismatch, "solved axis is not free");

  std::vector<double> q(rn * rn), l(rn);
  for (std::size_t i = 0; i < rn; ++i) {
    l[i] = to_double(shell.linear[i]);
    for (std::size_t j = 0; j < rn; ++j) q[i * rn + j] = to_double(shell.quadratic(i, j));
  }
  const double c0 = to_double(shell.constant);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> draw(-spec.momentum_bound, spec.momentum_bound);
  std::vector<std::vector<double>> out;
  out.reserve(n);
  std::vector<double> p(rn);
  const std::size_t max_attempts = 1000;
  for (std::size_t k = 0; k < n; ++k) {
    bool ok = false;
    for (std::size_t attempt = 0; attempt < max_attempts && !ok; ++attempt) {
      for (std::size_t i = 0; i < rn; ++i) p[i] = i == solved ? 0.0 : draw(rng);
      // Quadratic a x^2 + b x + c in the solved momentum x.
      const double a = q[solved * rn + solved];
      double b = l[solved], c = c0;
      for (std::size_t i = 0; i < rn; ++i) {
        if (i == solved) continue;
        b += 2.0 * q[solved * rn + i] * p[i];
        c += l[i] * p[i];
        for (std::size_t j = 0; j < rn; ++j)
          if (j != solved) c += q[i * rn + j] * p[i] * p[j];
      }
      double x;
      if (a == 0.0) {
        if (b == 0.0) continue;
        x = -c / b;
      } else {
        double disc = b * b - 4.0 * a * c;
        if (disc < 0.0) continue;
        // Stable roots; the branch alternates with the sample index.
        double r = std::sqrt(disc);
        double big = -0.5 * (b + (b >= 0.0 ? r : -r));
        double x1 = big / a;
        double x2 = big != 0.0 ? c / big : x1;
        double lo = std::min(x1, x2), hi = std::max(x1, x2);
        x = k % 2 == 0 ? hi : lo;
      }
      p[solved] = x;
      ok = true;
    }
    if (!ok) throw Error(ErrorKind::EmptyShell, "no real shell point found");
    std::vector<double> full(dim, 0.0);
    for (const auto& cst : spec.constraints) full[cst.axis] = to_double(cst.value);
    for (std::size_t i = 0; i < rn; ++i) full[shell.remaining_axes[i]] = p[i];
    out.push_back(std::move(full));
  }
  return out;
}

double kinetic_energy(std::span<const double> p, double m) {
  if (p.size() != 4) throw Error(ErrorKind::DimensionMismatch, "expected (p_t, p1, p2, p3)");
  if (!(m > 0.0)) throw Error(ErrorKind::InvalidArgument, "mass must be positive");
  double k2 = p[1] * p[1] + p[2] * p[2] + p[3] * p[3];
  double expected = k2 / (2.0 * m);
  if (std::abs(p[0] - expected) > 1e-12 * std::max(1.0, std::abs(expected)))
    throw Error(ErrorKind::OffShell, "p_t differs from |p|^2/(2m)");
  return p[0];
}

}  // namespace unfold::symbol
