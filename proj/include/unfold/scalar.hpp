#pragma once

// Exact scalars: rationals, Gaussian rationals, and Q(i)(sqrt 2).

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "unfold/error.hpp"

namespace unfold {

using Rational = boost::multiprecision::cpp_rational;

// Accepts "3", "-3/4", "0.25", "1e-3", "2.5e2".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);
double to_double(const Rational& r);

class GaussRational {
 public:
  GaussRational() = default;
  GaussRational(int re) : re_(re) {}  // NOLINT
  GaussRational(Rational re) : re_(std::move(re)) {}  // NOLINT
  GaussRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussRational i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }
  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }
  GaussRational conj() const { return {re_, -im_}; }
  Rational norm2() const { return re_ * re_ + im_ * im_; }
  std::complex<double> to_complex() const { return {to_double(re_), to_double(im_)}; }

  GaussRational operator-() const { return {-re_, -im_}; }
  GaussRational& operator+=(const GaussRational& o);
  GaussRational& operator-=(const GaussRational& o);
  GaussRational& operator*=(const GaussRational& o);
  GaussRational& operator/=(const GaussRational& o);

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  // Total order used only for map keys.
  friend bool key_less(const GaussRational& a, const GaussRational& b) {
    if (a.re_ != b.re_) return a.re_ < b.re_;
    return a.im_ < b.im_;
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

std::string to_string(const GaussRational& z);

// a + b*sqrt(2) with a, b Gaussian rationals. Needed for gamma matrices
// normalized to {g_mu, g_nu} = eta_mu_nu.
class QuadSurd {
 public:
  QuadSurd() = default;
  QuadSurd(int a) : a_(a) {}  // NOLINT
  QuadSurd(GaussRational a) : a_(std::move(a)) {}  // NOLINT
  QuadSurd(GaussRational a, GaussRational b) : a_(std::move(a)), b_(std::move(b)) {}

  static QuadSurd sqrt2() { return {GaussRational(0), GaussRational(1)}; }

  const GaussRational& rational_part() const { return a_; }
  const GaussRational& surd_part() const { return b_; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  QuadSurd conj() const { return {a_.conj(), b_.conj()}; }
  std::complex<double> to_complex() const;

  QuadSurd operator-() const { return {-a_, -b_}; }
  QuadSurd& operator+=(const QuadSurd& o);
  QuadSurd& operator-=(const QuadSurd& o);
  QuadSurd& operator*=(const QuadSurd& o);
  QuadSurd& operator/=(const QuadSurd& o);

  friend QuadSurd operator+(QuadSurd a, const QuadSurd& b) { return a += b; }
  friend QuadSurd operator-(QuadSurd a, const QuadSurd& b) { return a -= b; }
  friend QuadSurd operator*(QuadSurd a, const QuadSurd& b) { return a *= b; }
  friend QuadSurd operator/(QuadSurd a, const QuadSurd& b) { return a /= b; }
  friend bool operator==(const QuadSurd& x, const QuadSurd& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

  friend bool key_less(const QuadSurd& x, const QuadSurd& y) {
    if (!(x.a_ == y.a_)) return key_less(x.a_, y.a_);
    return key_less(x.b_, y.b_);
  }

 private:
  GaussRational a_;
  GaussRational b_;
};

std::string to_string(const QuadSurd& z);

inline bool is_zero(const Rational& r) { return r == 0; }
inline bool is_zero(const GaussRational& z) { return z.is_zero(); }
inline bool is_zero(const QuadSurd& z) { return z.is_zero(); }
inline std::complex<double> to_complex(const Rational& r) { return {to_double(r), 0.0}; }
inline std::complex<double> to_complex(const GaussRational& z) { return z.to_complex(); }
inline std::complex<double> to_complex(const QuadSurd& z) { return z.to_complex(); }

// Dense row-major matrix over an exact scalar.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Matrix diagonal(const std::vector<T>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const std::vector<T>& data() const { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = r + 1; c < cols_; ++c)
        if (!((*this)(r, c) == (*this)(c, r))) return false;
    return true;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product shape");
    Matrix p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (is_zero(a(i, k))) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) += a(i, k) * b(k, j);
      }
    return p;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorKind::DimensionMismatch, "matrix sum shape");
    Matrix s = a;
    for (std::size_t i = 0; i < s.data_.size(); ++i) s.data_[i] += b.data_[i];
    return s;
  }
  friend Matrix operator*(const T& c, const Matrix& a) {
    Matrix s = a;
    for (auto& v : s.data_) v = c * v;
    return s;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;

Rational determinant(const RationalMatrix& m);
// Throws SingularMetric when the determinant vanishes.
RationalMatrix inverse(const RationalMatrix& m);

}  // namespace unfold
