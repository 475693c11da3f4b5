#include "unfold/oracle.hpp"

#include <algorithm>

namespace unfold::oracle {

using geometry::Metric;

std::string_view orientation_name(Orientation o) { return o == Orientation::Paper ? "paper" : "oscillatory"; }

Orientation parse_orientation(std::string_view name) {
  if (name == "paper") return Orientation::Paper;
  if (name == "oscillatory") return Orientation::Oscillatory;
  throw Error(ErrorKind::InvalidArgument, "unknown orientation '" + std::string(name) + "'");
}

void ReductionAnsatz::validate(std::size_t dim) const {
  if (direction_axis >= dim) throw Error(ErrorKind::AxisOutOfRange, "ansatz direction axis");
  if (rate.is_zero()) throw Error(ErrorKind::InvalidArgument, "ansatz rate must be nonzero");
  if (reduced_axes.size() + 1 != dim) throw Error(ErrorKind::AxisMismatch, "reduced axes must cover the remaining axes");
  for (std::size_t a : reduced_axes) {
    if (a >= dim) throw Error(ErrorKind::AxisOutOfRange, "ansatz reduced axis");
    if (a == direction_axis) throw Error(ErrorKind::AxisMismatch, "direction axis listed as reduced axis");
    if (std::count(reduced_axes.begin(), reduced_axes.end(), a) != 1)
      throw Error(ErrorKind::AxisMismatch, "repeated reduced axis");
  }
}

std::string ReductionAnsatz::description(const std::vector<std::string>& names) const {
  std::string axis = direction_axis < names.size() ? names[direction_axis] : "x" + std::to_string(direction_axis);
  return "exp(" + to_string(rate) + "*" + axis + ") * u";
}

ReductionAnsatz kg_ansatz(const Rational& m, Orientation o) {
  ReductionAnsatz a;
  a.direction_axis = 4;
  a.reduced_axes = {0, 1, 2, 3};
  if (o == Orientation::Paper) {
    a.rate = GaussRational(-m);
    a.label = "kg/paper: exp(-m x4)";
  } else {
    a.rate = GaussRational(0, m);
    a.label = "kg/oscillatory: exp(+i m x4)";
  }
  return a;
}

ReductionAnsatz se_ansatz(const Rational& m, Orientation o) {
  ReductionAnsatz a;
  a.direction_axis = 4;
  a.reduced_axes = {0, 1, 2, 3};
  if (o == Orientation::Paper) {
    a.rate = GaussRational(0, -m);
    a.label = "se/paper: exp(-i m s)";
  } else {
    a.rate = GaussRational(0, m);
    a.label = "se/oscillatory: exp(+i m s)";
  }
  return a;
}

LinearOperator LinearOperator::zero(std::size_t dim, std::string name) {
  LinearOperator op;
  op.name = std::move(name);
  op.second = Matrix<GaussRational>(dim, dim);
  op.first.assign(dim, GaussRational(0));
  op.zeroth = GaussRational(0);
  return op;
}

Field LinearOperator::apply(const Field& f) const {
  if (f.dim() != dim()) throw Error(ErrorKind::DimensionMismatch, "operator and field dimensions differ");
  Field out = zeroth * f;
  for (std::size_t mu = 0; mu < dim(); ++mu) {
    Field d = f.partial(mu);
    out += first[mu] * d;
    for (std::size_t nu = 0; nu < dim(); ++nu)
      if (!second(mu, nu).is_zero()) out += second(mu, nu) * d.partial(nu);
  }
  return out;
}

bool LinearOperator::is_zero() const { return *this == zero(dim()); }

LinearOperator LinearOperator::scaled(const GaussRational& s) const {
  LinearOperator op = *this;
  for (std::size_t i = 0; i < dim(); ++i) {
    op.first[i] = s * first[i];
    for (std::size_t j = 0; j < dim(); ++j) op.second(i, j) = s * second(i, j);
  }
  op.zeroth = s * zeroth;
  return op;
}

LinearOperator LinearOperator::minus(const LinearOperator& o) const {
  if (o.dim() != dim()) throw Error(ErrorKind::DimensionMismatch, "operator dimensions differ");
  LinearOperator op = *this;
  for (std::size_t i = 0; i < dim(); ++i) {
    op.first[i] -= o.first[i];
    for (std::size_t j = 0; j < dim(); ++j) op.second(i, j) -= o.second(i, j);
  }
  op.zeroth -= o.zeroth;
  return op;
}

namespace {

std::vector<GaussRational> flatten(const LinearOperator& op) {
  std::vector<GaussRational> v = op.second.data();
  v.insert(v.end(), op.first.begin(), op.first.end());
  v.push_back(op.zeroth);
  return v;
}

std::string axis_name(const std::vector<std::string>& names, std::size_t k) {
  return k < names.size() ? names[k] : "x" + std::to_string(k);
}

}  // namespace

bool LinearOperator::proportional_to(const LinearOperator& o, GaussRational* factor) const {
  if (o.dim() != dim()) return false;
  auto a = flatten(*this);
  auto b = flatten(o);
  GaussRational lambda;
  bool found = false;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (!b[i].is_zero()) {
      lambda = a[i] / b[i];
      found = true;
      break;
    }
  if (!found || lambda.is_zero()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == lambda * b[i])) return false;
  if (factor) *factor = lambda;
  return true;
}

std::vector<std::string> LinearOperator::term_strings(const std::vector<std::string>& names) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = i; j < dim(); ++j) {
      GaussRational c = i == j ? second(i, i) : second(i, j) + second(j, i);
      if (c.is_zero()) continue;
      std::string d = i == j ? "d_" + axis_name(names, i) + "^2" : "d_" + axis_name(names, i) + " d_" + axis_name(names, j);
      out.push_back(unfold::to_string(c) + "*" + d);
    }
  for (std::size_t i = 0; i < dim(); ++i)
    if (!first[i].is_zero()) out.push_back(unfold::to_string(first[i]) + "*d_" + axis_name(names, i));
  if (!zeroth.is_zero()) out.push_back(unfold::to_string(zeroth));
  return out;
}

std::string LinearOperator::to_string(const std::vector<std::string>& names) const {
  auto terms = term_strings(names);
  if (terms.empty()) return "0";
  std::string s;
  for (const auto& t : terms) s += (s.empty() ? "" : " + ") + t;
  return s;
}

std::vector<std::string> IdentityCertificate::residual_terms() const {
  std::vector<std::string> names = reduced_axis_names;
  names.push_back("w");
  return difference.term_strings(names);
}

Field partial(const Field& f, std::size_t mu) { return f.partial(mu); }

Field apply_operator(const RationalMatrix& coeffs, const Field& f) {
  if (coeffs.rows() != f.dim() || coeffs.cols() != f.dim())
    throw Error(ErrorKind::DimensionMismatch, "operator coefficients and field dimensions differ");
  Field out(f.dim());
  for (std::size_t mu = 0; mu < f.dim(); ++mu) {
    Field d = f.partial(mu);
    for (std::size_t nu = 0; nu < f.dim(); ++nu)
      if (coeffs(mu, nu) != 0) out += GaussRational(coeffs(mu, nu)) * d.partial(nu);
  }
  return out;
}

std::vector<Field> probe_basis(std::size_t dim, int degree, const std::vector<Rate>& rates) {
  if (degree < 2) throw Error(ErrorKind::InsufficientProbes, "probe degree must be at least 2");
  if (rates.size() < 2) throw Error(ErrorKind::InsufficientProbes, "need at least two distinct rates");
  for (std::size_t i = 0; i < rates.size(); ++i) {
    if (rates[i].size() != dim) throw Error(ErrorKind::DimensionMismatch, "rate dimension");
    for (std::size_t j = 0; j < i; ++j)
      if (!RateLess<GaussRational>{}(rates[i], rates[j]) && !RateLess<GaussRational>{}(rates[j], rates[i]))
        throw Error(ErrorKind::InsufficientProbes, "rates must be distinct");
  }
  std::vector<Exponents> monomials;
  Exponents e(dim, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t axis, int left) {
    if (axis == dim) {
      monomials.push_back(e);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[axis] = k;
      rec(axis + 1, left - k);
    }
    e[axis] = 0;
  };
  rec(0, degree);
  std::sort(monomials.begin(), monomials.end(), [](const Exponents& a, const Exponents& b) {
    int da = 0, db = 0;
    for (int k : a) da += k;
    for (int k : b) db += k;
    if (da != db) return da < db;
    return a > b;
  });
  std::vector<Field> out;
  for (const auto& r : rates)
    for (const auto& m : monomials) out.push_back(Field::term(r, Polynomial<GaussRational>::monomial(m, 1)));
  return out;
}

std::vector<Field> default_probes(std::size_t dim) {
  Rate zero(dim, GaussRational(0));
  Rate real(dim), complex(dim);
  const GaussRational seeds[] = {GaussRational(1), GaussRational(Rational(-1, 2)), GaussRational(Rational(1, 3)),
                                 GaussRational(2)};
  for (std::size_t k = 0; k < dim; ++k) {
    real[k] = seeds[k % 4] + GaussRational(static_cast<int>(k / 4));
    complex[k] = GaussRational(Rational(1, 2), Rational(static_cast<int>(k) + 1, 3));
  }
  return probe_basis(dim, 2, {zero, real, complex});
}

LinearOperator identify_operator(const std::function<Field(const Field&)>& op, std::size_t dim,
                                 const std::vector<Field>& checks) {
  using Poly = Polynomial<GaussRational>;
  const Rate zero(dim, GaussRational(0));
  auto constant_of = [&](const Field& f, const char* what) {
    for (const auto& [r, p] : f.terms())
      if (RateLess<GaussRational>{}(r, zero) || RateLess<GaussRational>{}(zero, r))
        throw Error(ErrorKind::InvalidArgument, std::string("map is not a constant-coefficient operator (") + what + ")");
    return f.coefficient(zero);
  };
  LinearOperator result = LinearOperator::zero(dim, "identified");
  Poly image1 = constant_of(op(Field::constant(dim, 1)), "image of 1");
  result.zeroth = image1.coefficient(Exponents(dim, 0));
  for (std::size_t mu = 0; mu < dim; ++mu) {
    Poly img = constant_of(op(Field(Poly::variable(dim, mu))), "image of x");
    result.first[mu] = img.coefficient(Exponents(dim, 0));
  }
  for (std::size_t mu = 0; mu < dim; ++mu)
    for (std::size_t nu = mu; nu < dim; ++nu) {
      Poly x = Poly::variable(dim, mu) * Poly::variable(dim, nu);
      Poly img = constant_of(op(Field(x)), "image of quadratic");
      GaussRational half = img.coefficient(Exponents(dim, 0)) / GaussRational(2);
      result.second(mu, nu) = half;
      result.second(nu, mu) = half;
    }
  for (const auto& probe : checks)
    if (!(op(probe) == result.apply(probe)))
      throw Error(ErrorKind::InvalidArgument, "map is not a constant-coefficient operator of order <= 2");
  return result;
}

namespace {

// Removes the profile and drops the direction axis. Throws if what remains
// still depends on it.
Field strip_profile(const Field& full, const ReductionAnsatz& ansatz) {
  const std::size_t dim = full.dim();
  Rate back(dim, GaussRational(0));
  back[ansatz.direction_axis] = -ansatz.rate;
  Field g = full.times_exponential(back);
  Field reduced(ansatz.reduced_axes.size());
  for (const auto& [r, p] : g.terms()) {
    if (!r[ansatz.direction_axis].is_zero())
      throw Error(ErrorKind::AxisMismatch, "remainder is not equivariant along the direction axis");
    Rate rr;
    for (std::size_t a : ansatz.reduced_axes) rr.push_back(r[a]);
    Polynomial<GaussRational> q(ansatz.reduced_axes.size());
    for (const auto& [e, c] : p.terms()) {
      if (e[ansatz.direction_axis] != 0)
        throw Error(ErrorKind::AxisMismatch, "remainder depends on the direction coordinate");
      Exponents f;
      for (std::size_t a : ansatz.reduced_axes) f.push_back(e[a]);
      q.add_term(f, c);
    }
    reduced.add_term(rr, q);
  }
  return reduced;
}

std::function<Field(const Field&)> reduced_map(const Metric& metric, const ReductionAnsatz& ansatz) {
  const std::size_t dim = metric.dim();
  RationalMatrix coeffs = geometry::laplace_beltrami_coeffs(metric);
  Rate profile(dim, GaussRational(0));
  profile[ansatz.direction_axis] = ansatz.rate;
  return [=](const Field& u) {
    Field phi = u.embed(dim, ansatz.reduced_axes).times_exponential(profile);
    return strip_profile(apply_operator(coeffs, phi), ansatz);
  };
}

std::vector<std::string> reduced_names(const Metric& metric, const ReductionAnsatz& ansatz) {
  auto names = geometry::axis_names(metric.chart());
  std::vector<std::string> out;
  for (std::size_t a : ansatz.reduced_axes) out.push_back(names[a]);
  return out;
}

// Stacks per-probe fields into one field with an extra marker variable w, so
// the stack is zero iff every entry is.
Field stack(const std::vector<Field>& parts, std::size_t dim) {
  Field out(dim + 1);
  std::vector<std::size_t> axes(dim);
  for (std::size_t k = 0; k < dim; ++k) axes[k] = k;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].is_zero()) continue;
    Exponents w(dim + 1, 0);
    w[dim] = static_cast<int>(i);
    out += parts[i].embed(dim + 1, axes) * Field(Polynomial<GaussRational>::monomial(w, 1));
  }
  return out;
}

}  // namespace

LinearOperator reduced_operator(const Metric& metric, const ReductionAnsatz& ansatz) {
  ansatz.validate(metric.dim());
  const std::size_t rdim = ansatz.reduced_axes.size();
  auto map = reduced_map(metric, ansatz);
  LinearOperator op = identify_operator(map, rdim, default_probes(rdim));
  op.name = "reduced(" + ansatz.label + ")";
  return op;
}

IdentityCertificate certify_reduction(const Metric& metric, const ReductionAnsatz& ansatz,
                                      const std::vector<LinearOperator>& candidates) {
  ansatz.validate(metric.dim());
  const std::size_t rdim = ansatz.reduced_axes.size();
  auto names = reduced_names(metric, ansatz);
  auto full_names = geometry::axis_names(metric.chart());
  auto map = reduced_map(metric, ansatz);
  auto probes = default_probes(rdim);

  IdentityCertificate cert;
  cert.reduced_axis_names = names;
  cert.metric_convention = metric.convention();
  cert.ansatz = ansatz.label;
  cert.reduced = identify_operator(map, rdim, probes);
  cert.reduced.name = "identified";
  cert.lhs_description = "exp(" + to_string(-ansatz.rate) + "*" + full_names[ansatz.direction_axis] +
                         ") * box[" + ansatz.description(full_names) + "], box = g^{mu nu} d_mu d_nu on " +
                         std::string(geometry::chart_name(metric.chart()));
  auto inv = metric.inverse();
  for (std::size_t i = 0; i < metric.dim(); ++i)
    for (std::size_t j = i + 1; j < metric.dim(); ++j)
      if (inv(i, j) != 0)
        cert.convention_notes.push_back("g^{" + full_names[i] + full_names[j] + "} = " + to_string(inv(i, j)));
  cert.convention_notes.push_back("identified reduced operator: " + cert.reduced.to_string(names));
  cert.convention_notes.push_back("candidates are matched up to a nonzero constant factor");

  std::vector<Field> images;
  for (const auto& u : probes) images.push_back(map(u));

  const LinearOperator* winner = nullptr;
  for (const auto& cand : candidates) {
    if (cand.dim() != rdim) throw Error(ErrorKind::DimensionMismatch, "candidate operator dimension");
    CandidateOutcome out;
    out.name = cand.name;
    GaussRational lambda;
    if (cert.reduced.proportional_to(cand, &lambda)) {
      out.matches = true;
      out.factor = lambda;
      if (!winner) {
        winner = &cand;
        cert.winner_factor = lambda;
      }
    } else {
      // Normalize on the highest-order coefficient the candidate has.
      GaussRational s(1);
      auto a = flatten(cert.reduced);
      auto b = flatten(cand);
      for (std::size_t i = 0; i < b.size(); ++i)
        if (!b[i].is_zero() && !a[i].is_zero()) {
          s = a[i] / b[i];
          break;
        }
      out.factor = s;
      out.mismatch_terms = cert.reduced.minus(cand.scaled(s)).term_strings(names);
    }
    cert.candidates.push_back(out);
  }

  std::vector<Field> diffs;
  if (winner) {
    cert.winner = winner->name;
    cert.rhs_description = to_string(cert.winner_factor) + " * [" + winner->name + "](u)";
    for (std::size_t i = 0; i < probes.size(); ++i)
      diffs.push_back(images[i] - cert.winner_factor * winner->apply(probes[i]));
  } else {
    cert.winner = "none";
    cert.rhs_description = "no candidate";
    diffs = images;
    cert.convention_notes.push_back("NoCandidateMatches");
  }
  cert.difference = stack(diffs, rdim);
  cert.verdict = winner != nullptr && cert.difference.is_zero();
  return cert;
}

namespace {

LinearOperator op_from(std::string name, std::size_t dim) { return LinearOperator::zero(dim, std::move(name)); }

}  // namespace

std::vector<LinearOperator> kg_candidates(const Rational& m) {
  std::vector<LinearOperator> out;
  for (int sign : {-1, +1}) {
    LinearOperator op = op_from(sign < 0 ? "d0^2 - lap - m^2" : "d0^2 - lap + m^2", 4);
    op.second(0, 0) = 1;
    for (std::size_t k = 1; k < 4; ++k) op.second(k, k) = -1;
    op.zeroth = GaussRational(Rational(sign) * m * m);
    out.push_back(op);
  }
  return out;
}

std::vector<LinearOperator> se_candidates(const Rational& m) {
  std::vector<LinearOperator> out;
  for (int c : {2, 4, -2, -4}) {
    LinearOperator op = op_from(std::to_string(c) + " i m dt + lap", 4);
    op.first[0] = GaussRational(0, Rational(c) * m);
    for (std::size_t k = 1; k < 4; ++k) op.second(k, k) = 1;
    out.push_back(op);
  }
  return out;
}

}  // namespace unfold::oracle
