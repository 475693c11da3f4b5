#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace unfold::fields {

using cplx = std::complex<double>;

// Uniform box grid, row-major with the last axis fastest. A periodic axis
// excludes its upper endpoint: spacing = (upper - lower) / points.
struct GridSpec {
  std::vector<std::string> axis_names;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<std::size_t> points;
  std::vector<bool> periodic;

  static GridSpec box(std::vector<std::string> names, std::vector<double> lower, std::vector<double> upper,
                      std::vector<std::size_t> points);

  std::size_t dim() const { return points.size(); }
  std::size_t size() const;
  double spacing(std::size_t axis) const;
  double coordinate(std::size_t axis, std::size_t index) const;
  double cell_volume() const;
  std::vector<std::size_t> strides() const;
  std::vector<std::size_t> unravel(std::size_t flat) const;
  void validate() const;
  // Same spec with one axis removed.
  GridSpec drop_axis(std::size_t axis) const;
  GridSpec select_axes(const std::vector<std::size_t>& axes) const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

class GridField {
 public:
  GridField() = default;
  GridField(GridSpec spec, std::string label = "");
  GridField(GridSpec spec, std::vector<cplx> values, std::string label = "");

  static GridField from_function(const GridSpec& spec, const std::function<cplx(const std::vector<double>&)>& f,
                                 std::string label = "");

  const GridSpec& spec() const { return spec_; }
  const std::vector<cplx>& values() const { return values_; }
  std::vector<cplx>& values() { return values_; }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }
  std::size_t size() const { return values_.size(); }
  cplx& operator[](std::size_t i) { return values_[i]; }
  const cplx& operator[](std::size_t i) const { return values_[i]; }

  GridField conj() const;
  GridField& operator+=(const GridField& o);
  GridField& operator-=(const GridField& o);
  GridField& operator*=(cplx s);
  friend GridField operator+(GridField a, const GridField& b) { return a += b; }
  friend GridField operator-(GridField a, const GridField& b) { return a -= b; }
  friend GridField operator*(cplx s, GridField a) { return a *= s; }

 private:
  GridSpec spec_;
  std::vector<cplx> values_;
  std::string label_;
};

// Nodes on which residuals are reported: index 1..n-2 on bounded axes, every
// index on periodic axes.
std::vector<std::size_t> interior_nodes(const GridSpec& spec);

struct Norms {
  double max = 0.0;
  double l2 = 0.0;  // sqrt(sum |r|^2 * cell volume) over interior nodes
  std::size_t nodes = 0;
};

Norms interior_norms(const GridField& f);

// Constant-coefficient operator sum a^{mu nu} D_mu D_nu + sum b^mu D_mu + c
// with second-order central differences.
struct GridOperator {
  std::vector<std::vector<cplx>> second;
  std::vector<cplx> first;
  cplx zeroth = 0.0;

  static GridOperator zero(std::size_t dim);
  std::size_t dim() const { return first.size(); }
};

// Interior values are the stencil result; boundary nodes of bounded axes are 0.
GridField apply_grid_operator(const GridField& f, const GridOperator& op);

// Central first difference along one axis.
GridField central_derivative(const GridField& f, std::size_t axis);

}  // namespace unfold::fields
