#include "unfold/fields.hpp"

#include <cmath>

#include "unfold/parallel.hpp"

namespace unfold::fields {

std::size_t PlaneWaveSum::dim() const { return modes.empty() ? 0 : modes.front().momentum.size(); }

void PlaneWaveSum::validate() const {
  if (modes.empty()) throw Error(ErrorKind::InvalidArgument, "plane-wave sum needs at least one mode");
  for (const auto& m : modes)
    if (m.momentum.size() != dim()) throw Error(ErrorKind::DimensionMismatch, "plane-wave momenta differ in dimension");
}

cplx PlaneWaveSum::evaluate(const std::vector<double>& x) const {
  cplx sum = 0.0;
  for (const auto& m : modes) {
    cplx phase = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) phase += m.momentum[k] * x[k];
    sum += m.amplitude * std::exp(cplx(0.0, 1.0) * phase);
  }
  return sum;
}

PlaneWaveSum PlaneWaveSum::derivative(std::size_t axis) const {
  if (axis >= dim()) throw Error(ErrorKind::AxisOutOfRange, "plane-wave derivative axis");
  PlaneWaveSum out = *this;
  for (auto& m : out.modes) m.amplitude *= cplx(0.0, 1.0) * m.momentum[axis];
  return out;
}

PlaneWaveSum PlaneWaveSum::conj() const {
  // conj(a exp(i p.x)) = conj(a) exp(i (-conj p).x)
  PlaneWaveSum out = *this;
  for (auto& m : out.modes) {
    m.amplitude = std::conj(m.amplitude);
    for (auto& p : m.momentum) p = -std::conj(p);
  }
  return out;
}

PlaneWaveSum PlaneWaveSum::scaled(cplx s) const {
  PlaneWaveSum out = *this;
  for (auto& m : out.modes) m.amplitude *= s;
  return out;
}

PlaneWaveSum operator+(const PlaneWaveSum& a, const PlaneWaveSum& b) {
  PlaneWaveSum out = a;
  out.modes.insert(out.modes.end(), b.modes.begin(), b.modes.end());
  return out;
}

GridField synthesize(const GridSpec& spec, const PlaneWaveSum& waves) {
  waves.validate();
  if (waves.dim() != spec.dim()) throw Error(ErrorKind::DimensionMismatch, "plane-wave and grid dimensions differ");
  return GridField::from_function(spec, [&](const std::vector<double>& x) { return waves.evaluate(x); }, "plane-waves");
}

cplx profile(const GaussRational& rate, double x) { return std::exp(rate.to_complex() * x); }

namespace {

bool same_axis(const GridSpec& a, std::size_t ia, const GridSpec& b, std::size_t ib) {
  return a.points[ia] == b.points[ib] && a.lower[ia] == b.lower[ib] && a.upper[ia] == b.upper[ib] &&
         a.periodic[ia] == b.periodic[ib];
}

}  // namespace

GridField apply_ansatz(const GridField& u, const ReductionAnsatz& ansatz, const GridSpec& full) {
  full.validate();
  ansatz.validate(full.dim());
  const GridSpec& rs = u.spec();
  if (rs.dim() != ansatz.reduced_axes.size()) throw Error(ErrorKind::AxisMismatch, "reduced field has wrong dimension");
  for (std::size_t k = 0; k < rs.dim(); ++k)
    if (!same_axis(rs, k, full, ansatz.reduced_axes[k]))
      throw Error(ErrorKind::AxisMismatch, "reduced axis " + rs.axis_names[k] + " does not match the full grid");
  const auto rstrides = rs.strides();
  const std::size_t d = ansatz.direction_axis;
  std::vector<cplx> prof(full.points[d]);
  for (std::size_t j = 0; j < prof.size(); ++j) prof[j] = profile(ansatz.rate, full.coordinate(d, j));
  GridField out(full, "ansatz[" + u.label() + "]");
  parallel::for_chunks(0, full.size(), 8192, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      auto idx = full.unravel(i);
      std::size_t r = 0;
      for (std::size_t k = 0; k < rs.dim(); ++k) r += idx[ansatz.reduced_axes[k]] * rstrides[k];
      out[i] = prof[idx[d]] * u[r];
    }
  });
  return out;
}

ReducedField reduce_field(const GridField& phi, const ReductionAnsatz& ansatz) {
  const GridSpec& full = phi.spec();
  ansatz.validate(full.dim());
  const std::size_t d = ansatz.direction_axis;
  GridSpec rs = full.select_axes(ansatz.reduced_axes);
  const auto rstrides = rs.strides();
  const std::size_t slices = full.points[d];
  std::vector<cplx> prof(slices);
  for (std::size_t j = 0; j < slices; ++j) {
    prof[j] = profile(ansatz.rate, full.coordinate(d, j));
    if (std::abs(prof[j]) < 1e-290 || !std::isfinite(std::abs(prof[j])))
      throw Error(ErrorKind::ZeroProfile, "profile underflows on the direction extent");
  }
  std::vector<std::vector<cplx>> sliced(slices, std::vector<cplx>(rs.size()));
  for (std::size_t i = 0; i < full.size(); ++i) {
    auto idx = full.unravel(i);
    std::size_t r = 0;
    for (std::size_t k = 0; k < rs.dim(); ++k) r += idx[ansatz.reduced_axes[k]] * rstrides[k];
    sliced[idx[d]][r] = phi[i] / prof[idx[d]];
  }
  ReducedField out{GridField(rs, "reduced[" + phi.label() + "]"), 0.0};
  for (std::size_t r = 0; r < rs.size(); ++r) {
    cplx sum = 0.0;
    for (std::size_t j = 0; j < slices; ++j) {
      sum += sliced[j][r];
      out.max_equivariance_defect = std::max(out.max_equivariance_defect, std::abs(sliced[j][r] - sliced[0][r]));
    }
    out.field[r] = sum / static_cast<double>(slices);
  }
  return out;
}

GridField restrict_to_slice(const GridField& phi, std::size_t axis, std::size_t index) {
  const GridSpec& full = phi.spec();
  if (axis >= full.dim()) throw Error(ErrorKind::AxisOutOfRange, "slice axis");
  if (index >= full.points[axis]) throw Error(ErrorKind::AxisOutOfRange, "slice index");
  GridSpec rs = full.drop_axis(axis);
  GridField out(rs, phi.label());
  std::size_t r = 0;
  for (std::size_t i = 0; i < full.size(); ++i)
    if (full.unravel(i)[axis] == index) out[r++] = phi[i];
  return out;
}

GridOperator to_grid_operator(const RationalMatrix& coeffs, const GaussRational& mass_term) {
  GridOperator op = GridOperator::zero(coeffs.rows());
  for (std::size_t i = 0; i < coeffs.rows(); ++i)
    for (std::size_t j = 0; j < coeffs.cols(); ++j) op.second[i][j] = to_double(coeffs(i, j));
  op.zeroth = mass_term.to_complex();
  return op;
}

GridOperator to_grid_operator(const oracle::LinearOperator& l) {
  GridOperator op = GridOperator::zero(l.dim());
  for (std::size_t i = 0; i < l.dim(); ++i) {
    op.first[i] = l.first[i].to_complex();
    for (std::size_t j = 0; j < l.dim(); ++j) op.second[i][j] = l.second(i, j).to_complex();
  }
  op.zeroth = l.zeroth.to_complex();
  return op;
}

ResidualReport residual(const GridField& field, const GridOperator& op) {
  for (std::size_t a = 0; a < field.spec().dim(); ++a)
    if (field.spec().points[a] < 4)
      throw Error(ErrorKind::GridTooSmall, "residual needs 4 points on axis " + field.spec().axis_names[a]);
  ResidualReport r{apply_grid_operator(field, op), {}};
  r.norms = interior_norms(r.residual);
  return r;
}

ResidualReport residual(const GridField& field, const RationalMatrix& coeffs, const GaussRational& mass_term) {
  if (coeffs.rows() != field.spec().dim()) throw Error(ErrorKind::DimensionMismatch, "operator and grid dimensions");
  return residual(field, to_grid_operator(coeffs, mass_term));
}

double spectral_residual(const PlaneWaveSum& waves, const RationalMatrix& coeffs, const GaussRational& mass_term) {
  waves.validate();
  if (coeffs.rows() != waves.dim()) throw Error(ErrorKind::DimensionMismatch, "operator and momentum dimensions");
  const cplx mass = mass_term.to_complex();
  double worst = 0.0;
  for (const auto& m : waves.modes) {
    cplx sigma = 0.0;
    for (std::size_t i = 0; i < coeffs.rows(); ++i)
      for (std::size_t j = 0; j < coeffs.cols(); ++j)
        if (coeffs(i, j) != 0) sigma += to_double(coeffs(i, j)) * m.momentum[i] * m.momentum[j];
    worst = std::max(worst, std::abs((-sigma + mass) * m.amplitude));
  }
  return worst;
}

GridOperator discrete_reduced_operator(const RationalMatrix& coeffs, const ReductionAnsatz& ansatz, double h) {
  const std::size_t dim = coeffs.rows();
  ansatz.validate(dim);
  const std::size_t d = ansatz.direction_axis;
  const cplx r = ansatz.rate.to_complex();
  const cplx ep = std::exp(r * h), em = std::exp(-r * h);
  const cplx e2 = (ep + em - 2.0) / (h * h);
  const cplx e1 = (ep - em) / (2.0 * h);
  const std::size_t rd = ansatz.reduced_axes.size();
  GridOperator op = GridOperator::zero(rd);
  for (std::size_t i = 0; i < rd; ++i) {
    const std::size_t mu = ansatz.reduced_axes[i];
    for (std::size_t j = 0; j < rd; ++j) op.second[i][j] = to_double(coeffs(mu, ansatz.reduced_axes[j]));
    op.first[i] = to_double(coeffs(d, mu) + coeffs(mu, d)) * e1;
  }
  op.zeroth = to_double(coeffs(d, d)) * e2;
  return op;
}

}  // namespace unfold::fields
