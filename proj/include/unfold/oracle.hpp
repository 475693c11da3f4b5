#pragma once

#include <functional>
#include <string>
#include <vector>

#include "unfold/exppoly.hpp"
#include "unfold/geometry.hpp"

namespace unfold::oracle {

using Field = ExpPoly<GaussRational>;
using Rate = Field::Rate;

enum class Orientation { Paper, Oscillatory };

std::string_view orientation_name(Orientation o);
Orientation parse_orientation(std::string_view name);

// Profile exp(rate * x_d) along direction_axis; the reduced field lives on
// reduced_axes (in that order).
struct ReductionAnsatz {
  std::size_t direction_axis = 0;
  GaussRational rate;
  std::vector<std::size_t> reduced_axes;
  std::string label;

  void validate(std::size_t dim) const;
  std::string description(const std::vector<std::string>& names) const;
};

// exp(-m x4) for Paper, exp(+i m x4) for Oscillatory, on cartesian-5d.
ReductionAnsatz kg_ansatz(const Rational& m, Orientation o);
// exp(-i m s) for Paper, exp(+i m s) for Oscillatory, on lightcone-5d.
ReductionAnsatz se_ansatz(const Rational& m, Orientation o);

// Constant-coefficient operator of order at most two:
// sum a^{mu nu} d_mu d_nu + sum b^mu d_mu + c.
struct LinearOperator {
  std::string name;
  Matrix<GaussRational> second;
  std::vector<GaussRational> first;
  GaussRational zeroth;

  static LinearOperator zero(std::size_t dim, std::string name = "0");
  std::size_t dim() const { return first.size(); }
  Field apply(const Field& f) const;
  bool is_zero() const;
  LinearOperator scaled(const GaussRational& s) const;
  LinearOperator minus(const LinearOperator& o) const;
  // True when *this = factor * o with factor != 0.
  bool proportional_to(const LinearOperator& o, GaussRational* factor) const;
  std::vector<std::string> term_strings(const std::vector<std::string>& names) const;
  std::string to_string(const std::vector<std::string>& names) const;
  friend bool operator==(const LinearOperator& a, const LinearOperator& b) {
    return a.second == b.second && a.first == b.first && a.zeroth == b.zeroth;
  }
};

Field partial(const Field& f, std::size_t mu);
Field apply_operator(const RationalMatrix& coeffs, const Field& f);

// Monomials of total degree <= degree times exp(rate . x) for each rate.
std::vector<Field> probe_basis(std::size_t dim, int degree, const std::vector<Rate>& rates);

// Reads off the coefficients of a map assumed to be a constant-coefficient
// operator of order <= 2 from its action on 1, x^mu, x^mu x^nu, then checks the
// assumption on `checks`. Throws InvalidArgument if the map is not of that form.
LinearOperator identify_operator(const std::function<Field(const Field&)>& op, std::size_t dim,
                                 const std::vector<Field>& checks = {});

struct CandidateOutcome {
  std::string name;
  bool matches = false;
  GaussRational factor;  // identified = factor * candidate, when matches
  std::vector<std::string> mismatch_terms;
};

struct IdentityCertificate {
  std::string lhs_description;
  std::string rhs_description;
  Field difference;
  bool verdict = false;
  std::vector<std::string> convention_notes;

  std::string metric_convention;
  std::string ansatz;
  std::string winner;
  GaussRational winner_factor;
  LinearOperator reduced;
  std::vector<CandidateOutcome> candidates;
  std::vector<std::string> reduced_axis_names;

  std::vector<std::string> residual_terms() const;
};

// Applies the operator of `metric` to ansatz * u for every probe u, divides the
// profile out, identifies the induced reduced operator and matches it against
// the candidates up to a nonzero factor.
IdentityCertificate certify_reduction(const geometry::Metric& metric, const ReductionAnsatz& ansatz,
                                      const std::vector<LinearOperator>& candidates);

// The induced reduced operator alone.
LinearOperator reduced_operator(const geometry::Metric& metric, const ReductionAnsatz& ansatz);

// d0^2 - lap - m^2 and d0^2 - lap + m^2 on (x0, x1, x2, x3).
std::vector<LinearOperator> kg_candidates(const Rational& m);
// c i m dt + lap for c in {2, 4, -2, -4} on (t, x1, x2, x3).
std::vector<LinearOperator> se_candidates(const Rational& m);

// Default probe family used by the certificates.
std::vector<Field> default_probes(std::size_t dim);

}  // namespace unfold::oracle
