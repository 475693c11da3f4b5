#include "unfold/grid.hpp"

#include <cmath>

#include "unfold/error.hpp"
#include "unfold/kernels.hpp"
#include "unfold/parallel.hpp"

namespace unfold::fields {

namespace {
constexpr std::size_t kChunk = 8192;
}

GridSpec GridSpec::box(std::vector<std::string> names, std::vector<double> lower, std::vector<double> upper,
                       std::vector<std::size_t> points) {
  GridSpec s;
  s.axis_names = std::move(names);
  s.lower = std::move(lower);
  s.upper = std::move(upper);
  s.points = std::move(points);
  s.periodic.assign(s.points.size(), false);
  s.validate();
  return s;
}

std::size_t GridSpec::size() const {
  std::size_t n = 1;
  for (std::size_t p : points) n *= p;
  return n;
}

double GridSpec::spacing(std::size_t axis) const {
  if (axis >= dim()) throw Error(ErrorKind::AxisOutOfRange, "grid axis");
  double len = upper[axis] - lower[axis];
  return periodic[axis] ? len / static_cast<double>(points[axis]) : len / static_cast<double>(points[axis] - 1);
}

double GridSpec::coordinate(std::size_t axis, std::size_t index) const {
  return lower[axis] + static_cast<double>(index) * spacing(axis);
}

double GridSpec::cell_volume() const {
  double v = 1.0;
  for (std::size_t a = 0; a < dim(); ++a) v *= spacing(a);
  return v;
}

std::vector<std::size_t> GridSpec::strides() const {
  std::vector<std::size_t> s(dim(), 1);
  for (std::size_t a = dim(); a-- > 1;) s[a - 1] = s[a] * points[a];
  return s;
}

std::vector<std::size_t> GridSpec::unravel(std::size_t flat) const {
  std::vector<std::size_t> idx(dim());
  for (std::size_t a = dim(); a-- > 0;) {
    idx[a] = flat % points[a];
    flat /= points[a];
  }
  return idx;
}

void GridSpec::validate() const {
  const std::size_t d = points.size();
  if (d == 0) throw Error(ErrorKind::InvalidArgument, "grid needs at least one axis");
  if (axis_names.size() != d || lower.size() != d || upper.size() != d || periodic.size() != d)
    throw Error(ErrorKind::DimensionMismatch, "grid spec fields disagree in length");
  for (std::size_t a = 0; a < d; ++a) {
    if (points[a] < 2) throw Error(ErrorKind::GridTooSmall, "axis " + axis_names[a] + " needs at least 2 points");
    if (!(upper[a] > lower[a]) || !std::isfinite(upper[a]) || !std::isfinite(lower[a]))
      throw Error(ErrorKind::InvalidArgument, "axis " + axis_names[a] + " has an empty extent");
  }
}

GridSpec GridSpec::drop_axis(std::size_t axis) const {
  std::vector<std::size_t> keep;
  for (std::size_t a = 0; a < dim(); ++a)
    if (a != axis) keep.push_back(a);
  return select_axes(keep);
}

GridSpec GridSpec::select_axes(const std::vector<std::size_t>& axes) const {
  GridSpec s;
  for (std::size_t a : axes) {
    if (a >= dim()) throw Error(ErrorKind::AxisOutOfRange, "grid axis");
    s.axis_names.push_back(axis_names[a]);
    s.lower.push_back(lower[a]);
    s.upper.push_back(upper[a]);
    s.points.push_back(points[a]);
    s.periodic.push_back(periodic[a]);
  }
  return s;
}

GridField::GridField(GridSpec spec, std::string label)
    : spec_(std::move(spec)), values_(spec_.size(), cplx(0.0)), label_(std::move(label)) {
  spec_.validate();
}

GridField::GridField(GridSpec spec, std::vector<cplx> values, std::string label)
    : spec_(std::move(spec)), values_(std::move(values)), label_(std::move(label)) {
  spec_.validate();
  if (values_.size() != spec_.size()) throw Error(ErrorKind::DimensionMismatch, "value count does not match grid");
  for (const auto& v : values_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw Error(ErrorKind::InvalidArgument, "grid field has non-finite entries");
}

GridField GridField::from_function(const GridSpec& spec, const std::function<cplx(const std::vector<double>&)>& f,
                                   std::string label) {
  GridField out(spec, std::move(label));
  parallel::for_chunks(0, spec.size(), kChunk, [&](std::size_t lo, std::size_t hi) {
    std::vector<double> x(spec.dim());
    for (std::size_t i = lo; i < hi; ++i) {
      auto idx = spec.unravel(i);
      for (std::size_t a = 0; a < spec.dim(); ++a) x[a] = spec.coordinate(a, idx[a]);
      out.values_[i] = f(x);
    }
  });
  return out;
}

GridField GridField::conj() const {
  GridField out = *this;
  for (auto& v : out.values_) v = std::conj(v);
  return out;
}

GridField& GridField::operator+=(const GridField& o) {
  if (!(o.spec_ == spec_)) throw Error(ErrorKind::DimensionMismatch, "grid fields on different specs");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

GridField& GridField::operator-=(const GridField& o) {
  if (!(o.spec_ == spec_)) throw Error(ErrorKind::DimensionMismatch, "grid fields on different specs");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

GridField& GridField::operator*=(cplx s) {
  for (auto& v : values_) v *= s;
  return *this;
}

std::vector<std::size_t> interior_nodes(const GridSpec& spec) {
  std::vector<std::size_t> out;
  out.reserve(spec.size());
  for (std::size_t i = 0; i < spec.size(); ++i) {
    auto idx = spec.unravel(i);
    bool inside = true;
    for (std::size_t a = 0; a < spec.dim() && inside; ++a)
      if (!spec.periodic[a] && (idx[a] == 0 || idx[a] + 1 == spec.points[a])) inside = false;
    if (inside) out.push_back(i);
  }
  return out;
}

Norms interior_norms(const GridField& f) {
  Norms n;
  double sum = 0.0;
  for (std::size_t i : interior_nodes(f.spec())) {
    double a = std::abs(f[i]);
    n.max = std::max(n.max, a);
    sum += a * a;
    ++n.nodes;
  }
  n.l2 = std::sqrt(sum * f.spec().cell_volume());
  return n;
}

GridOperator GridOperator::zero(std::size_t dim) {
  GridOperator op;
  op.second.assign(dim, std::vector<cplx>(dim, 0.0));
  op.first.assign(dim, 0.0);
  return op;
}

namespace {

// Field copied into an array with one ghost layer per side on every axis.
struct Padded {
  std::vector<std::size_t> dims;
  std::vector<std::ptrdiff_t> strides;
  std::vector<double> data;  // interleaved complex
  std::vector<std::size_t> real_index;  // flat field index -> padded index

  explicit Padded(const GridField& f) {
    const GridSpec& spec = f.spec();
    const std::size_t d = spec.dim();
    dims.resize(d);
    strides.assign(d, 1);
    for (std::size_t a = 0; a < d; ++a) dims[a] = spec.points[a] + 2;
    for (std::size_t a = d; a-- > 1;) strides[a - 1] = strides[a] * static_cast<std::ptrdiff_t>(dims[a]);
    std::size_t total = static_cast<std::size_t>(strides[0]) * dims[0];
    data.assign(2 * total, 0.0);
    real_index.resize(spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i) {
      auto idx = spec.unravel(i);
      std::size_t p = 0;
      for (std::size_t a = 0; a < d; ++a) p += (idx[a] + 1) * static_cast<std::size_t>(strides[a]);
      real_index[i] = p;
      data[2 * p] = f[i].real();
      data[2 * p + 1] = f[i].imag();
    }
    for (std::size_t a = 0; a < d; ++a) {
      if (!spec.periodic[a]) continue;
      const std::size_t n = spec.points[a];
      const std::size_t sa = static_cast<std::size_t>(strides[a]);
      for (std::size_t p = 0; p < total; ++p) {
        std::size_t c = (p / sa) % dims[a];
        std::size_t src;
        if (c == 0) src = p + n * sa;
        else if (c == n + 1) src = p - n * sa;
        else continue;
        data[2 * p] = data[2 * src];
        data[2 * p + 1] = data[2 * src + 1];
      }
    }
  }

  std::size_t total() const { return data.size() / 2; }
};

}  // namespace

GridField apply_grid_operator(const GridField& f, const GridOperator& op) {
  const GridSpec& spec = f.spec();
  const std::size_t d = spec.dim();
  if (op.dim() != d || op.second.size() != d) throw Error(ErrorKind::DimensionMismatch, "operator dimension");
  for (std::size_t a = 0; a < d; ++a)
    if (spec.points[a] < 3) throw Error(ErrorKind::GridTooSmall, "stencil needs 3 points on axis " + spec.axis_names[a]);

  Padded in(f);
  std::vector<double> out(in.data.size(), 0.0);
  std::ptrdiff_t reach = 0;
  for (auto s : in.strides) reach += s;
  const std::size_t lo = static_cast<std::size_t>(reach);
  const std::size_t hi = in.total() - lo;
  const auto& k = simd::active_kernels();
  const double* src = in.data.data();
  double* dst = out.data();

  auto run = [&](auto&& body) { parallel::for_chunks(lo, hi, kChunk, body); };
  for (std::size_t a = 0; a < d; ++a) {
    const double ha = spec.spacing(a);
    if (op.second[a][a] != 0.0) {
      cplx c = op.second[a][a] / (ha * ha);
      run([&](std::size_t b, std::size_t e) { k.second_diff(src, dst, b, e, in.strides[a], c); });
    }
    for (std::size_t bx = a + 1; bx < d; ++bx) {
      cplx sum = op.second[a][bx] + op.second[bx][a];
      if (sum == 0.0) continue;
      cplx c = sum / (4.0 * ha * spec.spacing(bx));
      run([&](std::size_t b, std::size_t e) { k.mixed_diff(src, dst, b, e, in.strides[a], in.strides[bx], c); });
    }
    if (op.first[a] != 0.0) {
      cplx c = op.first[a] / (2.0 * ha);
      run([&](std::size_t b, std::size_t e) { k.first_diff(src, dst, b, e, in.strides[a], c); });
    }
  }
  if (op.zeroth != 0.0) {
    cplx c = op.zeroth;
    run([&](std::size_t b, std::size_t e) { k.scale_add(src, dst, b, e, c); });
  }

  GridField result(spec, f.label().empty() ? "" : "L[" + f.label() + "]");
  std::vector<bool> keep(spec.size(), false);
  for (std::size_t i : interior_nodes(spec)) keep[i] = true;
  for (std::size_t i = 0; i < spec.size(); ++i)
    if (keep[i]) {
      std::size_t p = in.real_index[i];
      result[i] = cplx(out[2 * p], out[2 * p + 1]);
    }
  return result;
}

GridField central_derivative(const GridField& f, std::size_t axis) {
  if (axis >= f.spec().dim()) throw Error(ErrorKind::AxisOutOfRange, "derivative axis");
  GridOperator op = GridOperator::zero(f.spec().dim());
  op.first[axis] = 1.0;
  return apply_grid_operator(f, op);
}

}  // namespace unfold::fields
