#pragma once

// Exact exponential-polynomial fields: sum_k poly_k(x) * exp(rate_k . x).

#include <complex>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "unfold/scalar.hpp"

namespace unfold {

using Exponents = std::vector<int>;

template <class S>
class Polynomial {
 public:
  using Terms = std::map<Exponents, S>;

  Polynomial() = default;
  explicit Polynomial(std::size_t dim) : dim_(dim) {}

  static Polynomial constant(std::size_t dim, const S& c) {
    Polynomial p(dim);
    p.add_term(Exponents(dim, 0), c);
    return p;
  }
  static Polynomial variable(std::size_t dim, std::size_t axis) {
    check_axis(dim, axis);
    Exponents e(dim, 0);
    e[axis] = 1;
    Polynomial p(dim);
    p.add_term(e, S(1));
    return p;
  }
  static Polynomial monomial(const Exponents& e, const S& c) {
    Polynomial p(e.size());
    p.add_term(e, c);
    return p;
  }

  std::size_t dim() const { return dim_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponents& e, const S& c) {
    if (e.size() != dim_) throw Error(ErrorKind::DimensionMismatch, "monomial dimension");
    if (unfold::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (unfold::is_zero(it->second)) terms_.erase(it);
    }
  }

  S coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? S(0) : it->second;
  }

  int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int k : e) s += k;
      d = std::max(d, s);
    }
    return d;
  }

  int degree_in(std::span<const std::size_t> axes) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, partial_degree(e, axes));
    return d;
  }

  Polynomial partial(std::size_t axis) const {
    check_axis(dim_, axis);
    Polynomial out(dim_);
    for (const auto& [e, c] : terms_) {
      if (e[axis] == 0) continue;
      Exponents f = e;
      f[axis] -= 1;
      out.add_term(f, S(e[axis]) * c);
    }
    return out;
  }

  // Sets x_axis = value; the axis stays in the variable list with exponent 0.
  Polynomial substitute(std::size_t axis, const S& value) const {
    check_axis(dim_, axis);
    Polynomial out(dim_);
    for (const auto& [e, c] : terms_) {
      S factor(1);
      for (int k = 0; k < e[axis]; ++k) factor *= value;
      Exponents f = e;
      f[axis] = 0;
      out.add_term(f, c * factor);
    }
    return out;
  }

  // Keeps monomials whose degree in `axes` is at most max_degree.
  Polynomial truncate(std::span<const std::size_t> axes, int max_degree) const {
    Polynomial out(dim_);
    for (const auto& [e, c] : terms_)
      if (partial_degree(e, axes) <= max_degree) out.add_term(e, c);
    return out;
  }

  // Keeps monomials whose degree in `axes` equals exactly `degree`.
  Polynomial graded_part(std::span<const std::size_t> axes, int degree) const {
    Polynomial out(dim_);
    for (const auto& [e, c] : terms_)
      if (partial_degree(e, axes) == degree) out.add_term(e, c);
    return out;
  }

  Polynomial operator-() const {
    Polynomial out(dim_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
  }
  Polynomial& operator+=(const Polynomial& o) {
    same_dim(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    same_dim(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.same_dim(b);
    Polynomial out(a.dim_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e(a.dim_);
        for (std::size_t k = 0; k < a.dim_; ++k) e[k] = ea[k] + eb[k];
        out.add_term(e, ca * cb);
      }
    return out;
  }
  friend Polynomial operator*(const S& s, const Polynomial& p) {
    Polynomial out(p.dim_);
    if (unfold::is_zero(s)) return out;
    for (const auto& [e, c] : p.terms_) out.add_term(e, s * c);
    return out;
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

  std::complex<double> evaluate(std::span<const double> x) const {
    if (x.size() != dim_) throw Error(ErrorKind::DimensionMismatch, "evaluation point");
    std::complex<double> sum = 0.0;
    for (const auto& [e, c] : terms_) {
      double m = 1.0;
      for (std::size_t k = 0; k < dim_; ++k)
        for (int j = 0; j < e[k]; ++j) m *= x[k];
      sum += to_complex(c) * m;
    }
    return sum;
  }

  std::string to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
      if (!out.empty()) out += " + ";
      std::string mono;
      for (std::size_t k = 0; k < dim_; ++k) {
        if (e[k] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += k < names.size() ? names[k] : "x" + std::to_string(k);
        if (e[k] > 1) mono += "^" + std::to_string(e[k]);
      }
      std::string coeff = unfold::to_string(c);
      if (mono.empty()) out += coeff;
      else if (coeff == "1") out += mono;
      else out += coeff + "*" + mono;
    }
    return out;
  }

 private:
  static void check_axis(std::size_t dim, std::size_t axis) {
    if (axis >= dim) throw Error(ErrorKind::AxisOutOfRange, "axis " + std::to_string(axis) + " of " + std::to_string(dim));
  }
  static int partial_degree(const Exponents& e, std::span<const std::size_t> axes) {
    int s = 0;
    for (std::size_t a : axes) s += e[a];
    return s;
  }
  void same_dim(const Polynomial& o) const {
    if (o.dim_ != dim_) throw Error(ErrorKind::DimensionMismatch, "polynomial dimensions differ");
  }

  std::size_t dim_ = 0;
  Terms terms_;
};

template <class S>
struct RateLess {
  bool operator()(const std::vector<S>& a, const std::vector<S>& b) const {
    for (std::size_t k = 0; k < a.size() && k < b.size(); ++k) {
      if (key_less(a[k], b[k])) return true;
      if (key_less(b[k], a[k])) return false;
    }
    return a.size() < b.size();
  }
};

template <class S>
class ExpPoly {
 public:
  using Rate = std::vector<S>;
  using Terms = std::map<Rate, Polynomial<S>, RateLess<S>>;

  ExpPoly() = default;
  explicit ExpPoly(std::size_t dim) : dim_(dim) {}
  ExpPoly(const Polynomial<S>& p) : dim_(p.dim()) { add_term(Rate(dim_, S(0)), p); }  // NOLINT

  static ExpPoly constant(std::size_t dim, const S& c) { return ExpPoly(Polynomial<S>::constant(dim, c)); }
  static ExpPoly exponential(const Rate& rate) {
    ExpPoly f(rate.size());
    f.add_term(rate, Polynomial<S>::constant(rate.size(), S(1)));
    return f;
  }
  static ExpPoly term(const Rate& rate, const Polynomial<S>& p) {
    ExpPoly f(rate.size());
    f.add_term(rate, p);
    return f;
  }

  std::size_t dim() const { return dim_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  void add_term(const Rate& rate, const Polynomial<S>& p) {
    if (rate.size() != dim_ || p.dim() != dim_) throw Error(ErrorKind::DimensionMismatch, "exp-poly term dimension");
    if (p.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(rate, p);
    if (!inserted) {
      it->second += p;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Polynomial<S> coefficient(const Rate& rate) const {
    auto it = terms_.find(rate);
    return it == terms_.end() ? Polynomial<S>(dim_) : it->second;
  }

  ExpPoly partial(std::size_t axis) const {
    if (axis >= dim_) throw Error(ErrorKind::AxisOutOfRange, "axis " + std::to_string(axis) + " of " + std::to_string(dim_));
    ExpPoly out(dim_);
    for (const auto& [r, p] : terms_) {
      Polynomial<S> d = p.partial(axis);
      if (!unfold::is_zero(r[axis])) d += r[axis] * p;
      out.add_term(r, d);
    }
    return out;
  }

  ExpPoly times_exponential(const Rate& rate) const {
    if (rate.size() != dim_) throw Error(ErrorKind::DimensionMismatch, "rate dimension");
    ExpPoly out(dim_);
    for (const auto& [r, p] : terms_) {
      Rate s(dim_);
      for (std::size_t k = 0; k < dim_; ++k) s[k] = r[k] + rate[k];
      out.add_term(s, p);
    }
    return out;
  }

  ExpPoly truncate(std::span<const std::size_t> axes, int max_degree) const {
    ExpPoly out(dim_);
    for (const auto& [r, p] : terms_) out.add_term(r, p.truncate(axes, max_degree));
    return out;
  }

  ExpPoly graded_part(std::span<const std::size_t> axes, int degree) const {
    ExpPoly out(dim_);
    for (const auto& [r, p] : terms_) out.add_term(r, p.graded_part(axes, degree));
    return out;
  }

  // Maps variable k of this field to variable axis_map[k] of a new_dim field.
  ExpPoly embed(std::size_t new_dim, const std::vector<std::size_t>& axis_map) const {
    if (axis_map.size() != dim_) throw Error(ErrorKind::DimensionMismatch, "embedding map size");
    for (std::size_t a : axis_map)
      if (a >= new_dim) throw Error(ErrorKind::AxisOutOfRange, "embedding target axis");
    ExpPoly out(new_dim);
    for (const auto& [r, p] : terms_) {
      Rate s(new_dim, S(0));
      for (std::size_t k = 0; k < dim_; ++k) s[axis_map[k]] = r[k];
      Polynomial<S> q(new_dim);
      for (const auto& [e, c] : p.terms()) {
        Exponents f(new_dim, 0);
        for (std::size_t k = 0; k < dim_; ++k) f[axis_map[k]] = e[k];
        q.add_term(f, c);
      }
      out.add_term(s, q);
    }
    return out;
  }

  ExpPoly operator-() const {
    ExpPoly out(dim_);
    for (const auto& [r, p] : terms_) out.terms_.emplace(r, -p);
    return out;
  }
  ExpPoly& operator+=(const ExpPoly& o) {
    same_dim(o);
    for (const auto& [r, p] : o.terms_) add_term(r, p);
    return *this;
  }
  ExpPoly& operator-=(const ExpPoly& o) {
    same_dim(o);
    for (const auto& [r, p] : o.terms_) add_term(r, -p);
    return *this;
  }
  friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) { return a += b; }
  friend ExpPoly operator-(ExpPoly a, const ExpPoly& b) { return a -= b; }
  friend ExpPoly operator*(const S& s, const ExpPoly& f) {
    ExpPoly out(f.dim_);
    if (unfold::is_zero(s)) return out;
    for (const auto& [r, p] : f.terms_) out.add_term(r, s * p);
    return out;
  }
  friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) {
    a.same_dim(b);
    ExpPoly out(a.dim_);
    for (const auto& [ra, pa] : a.terms_)
      for (const auto& [rb, pb] : b.terms_) {
        Rate r(a.dim_);
        for (std::size_t k = 0; k < a.dim_; ++k) r[k] = ra[k] + rb[k];
        out.add_term(r, pa * pb);
      }
    return out;
  }
  friend bool operator==(const ExpPoly& a, const ExpPoly& b) {
    if (a.dim_ != b.dim_ || a.terms_.size() != b.terms_.size()) return false;
    auto ib = b.terms_.begin();
    for (auto ia = a.terms_.begin(); ia != a.terms_.end(); ++ia, ++ib) {
      if (RateLess<S>{}(ia->first, ib->first) || RateLess<S>{}(ib->first, ia->first)) return false;
      if (!(ia->second == ib->second)) return false;
    }
    return true;
  }

  std::complex<double> evaluate(std::span<const double> x) const {
    if (x.size() != dim_) throw Error(ErrorKind::DimensionMismatch, "evaluation point");
    std::complex<double> sum = 0.0;
    for (const auto& [r, p] : terms_) {
      std::complex<double> arg = 0.0;
      for (std::size_t k = 0; k < dim_; ++k) arg += to_complex(r[k]) * x[k];
      sum += p.evaluate(x) * std::exp(arg);
    }
    return sum;
  }

  // One string per term: "exp(rate . x) * (poly)".
  std::vector<std::string> term_strings(const std::vector<std::string>& names) const {
    std::vector<std::string> out;
    for (const auto& [r, p] : terms_) {
      std::string lin;
      for (std::size_t k = 0; k < dim_; ++k) {
        if (unfold::is_zero(r[k])) continue;
        if (!lin.empty()) lin += " + ";
        lin += unfold::to_string(r[k]) + "*" + (k < names.size() ? names[k] : "x" + std::to_string(k));
      }
      std::string body = "(" + p.to_string(names) + ")";
      out.push_back(lin.empty() ? body : "exp(" + lin + ") * " + body);
    }
    return out;
  }

 private:
  void same_dim(const ExpPoly& o) const {
    if (o.dim_ != dim_) throw Error(ErrorKind::DimensionMismatch, "exp-poly dimensions differ");
  }

  std::size_t dim_ = 0;
  Terms terms_;
};

}  // namespace unfold
