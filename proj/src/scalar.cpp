#include "unfold/scalar.hpp"

#include <cctype>
#include <cmath>

namespace unfold {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::AxisOutOfRange: return "AxisOutOfRange";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SingularMetric: return "SingularMetric";
    case ErrorKind::InsufficientProbes: return "InsufficientProbes";
    case ErrorKind::DegenerateConstraint: return "DegenerateConstraint";
    case ErrorKind::EmptyShell: return "EmptyShell";
    case ErrorKind::OffShell: return "OffShell";
    case ErrorKind::AxisMismatch: return "AxisMismatch";
    case ErrorKind::ZeroProfile: return "ZeroProfile";
    case ErrorKind::GridTooSmall: return "GridTooSmall";
    case ErrorKind::CflViolation: return "CflViolation";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::ChartMismatch: return "ChartMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonCommutingRemainder: return "NonCommutingRemainder";
  }
  return "Unknown";
}

namespace {

using BigInt = boost::multiprecision::cpp_int;

BigInt parse_digits(std::string_view digits) {
  BigInt v = 0;
  for (char c : digits) v = v * 10 + (c - '0');
  return v;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

[[noreturn]] void bad(std::string_view text) {
  throw Error(ErrorKind::InvalidArgument, "cannot parse rational '" + std::string(text) + "'");
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) bad(text);
  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad(text);
    BigInt d = parse_digits(den);
    if (d == 0) bad(text);
    value = Rational(parse_digits(num), d);
  } else {
    std::string_view mant = s;
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      mant = s.substr(0, e);
      auto ex = s.substr(e + 1);
      bool eneg = false;
      if (!ex.empty() && (ex.front() == '+' || ex.front() == '-')) {
        eneg = ex.front() == '-';
        ex.remove_prefix(1);
      }
      if (!all_digits(ex) || ex.size() > 6) bad(text);
      exponent = std::stol(std::string(ex));
      if (eneg) exponent = -exponent;
    }
    std::string_view ip = mant, fp;
    if (auto dot = mant.find('.'); dot != std::string_view::npos) {
      ip = mant.substr(0, dot);
      fp = mant.substr(dot + 1);
    }
    if (ip.empty() && fp.empty()) bad(text);
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp))) bad(text);
    BigInt num = parse_digits(std::string(ip) + std::string(fp));
    exponent -= static_cast<long>(fp.size());
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::labs(exponent)));
    value = exponent >= 0 ? Rational(num * scale) : Rational(num, scale);
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& r) {
  auto num = boost::multiprecision::numerator(r);
  auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

GaussRational& GaussRational::operator+=(const GaussRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
  Rational n = o.norm2();
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "division by zero Gaussian rational");
  *this *= o.conj();
  re_ /= n;
  im_ /= n;
  return *this;
}

std::string to_string(const GaussRational& z) {
  if (z.im() == 0) return to_string(z.re());
  std::string im;
  if (z.im() == 1) im = "i";
  else if (z.im() == -1) im = "-i";
  else im = to_string(z.im()) + "i";
  if (z.re() == 0) return im;
  std::string out = "(" + to_string(z.re());
  if (im.front() != '-') out += "+";
  return out + im + ")";
}

std::complex<double> QuadSurd::to_complex() const {
  return a_.to_complex() + std::sqrt(2.0) * b_.to_complex();
}

QuadSurd& QuadSurd::operator+=(const QuadSurd& o) {
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QuadSurd& QuadSurd::operator-=(const QuadSurd& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QuadSurd& QuadSurd::operator*=(const QuadSurd& o) {
  GaussRational a = a_ * o.a_ + GaussRational(2) * b_ * o.b_;
  GaussRational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

QuadSurd& QuadSurd::operator/=(const QuadSurd& o) {
  // 1/(a + b r) = (a - b r)/(a^2 - 2 b^2); the denominator vanishes only for o = 0
  // because sqrt(2) is irrational over Q(i).
  GaussRational n = o.a_ * o.a_ - GaussRational(2) * o.b_ * o.b_;
  if (n.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by zero surd");
  *this *= QuadSurd(o.a_, -o.b_);
  a_ /= n;
  b_ /= n;
  return *this;
}

std::string to_string(const QuadSurd& z) {
  if (z.surd_part().is_zero()) return to_string(z.rational_part());
  std::string surd = "(" + to_string(z.surd_part()) + ")*sqrt2";
  if (z.rational_part().is_zero()) return surd;
  return "(" + to_string(z.rational_part()) + "+" + surd + ")";
}

Rational determinant(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "determinant of non-square matrix");
  RationalMatrix a = m;
  const std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c) == 0) continue;
      Rational f = a(r, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

RationalMatrix inverse(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  RationalMatrix a = m;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) throw Error(ErrorKind::SingularMetric, "matrix is singular");
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(p, j), a(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    Rational pivot = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= pivot;
      inv(c, j) /= pivot;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      Rational f = a(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

}  // namespace unfold
