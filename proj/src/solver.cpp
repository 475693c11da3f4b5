#include "unfold/solver.hpp"

#include <cmath>

namespace unfold::solver {

using fields::cplx;
using fields::GridOperator;

std::string_view kind_name(Kind k) { return k == Kind::KleinGordon ? "klein_gordon" : "schroedinger"; }

namespace {

double min_spacing(const GridSpec& spec) {
  double h = spec.spacing(0);
  for (std::size_t a = 1; a < spec.dim(); ++a) h = std::min(h, spec.spacing(a));
  return h;
}

// lap_h - c on the periodic grid.
GridOperator kg_operator(const EvolutionProblem& p) {
  GridOperator op = GridOperator::zero(p.spatial_spec.dim());
  for (std::size_t a = 0; a < op.dim(); ++a) op.second[a][a] = 1.0;
  op.zeroth = -p.mass_term;
  return op;
}

GridOperator laplacian(std::size_t dim) {
  GridOperator op = GridOperator::zero(dim);
  for (std::size_t a = 0; a < dim; ++a) op.second[a][a] = 1.0;
  return op;
}

cplx inner(const GridField& a, const GridField& b) {
  cplx sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::conj(a[i]) * b[i];
  return sum * a.spec().cell_volume();
}

double max_abs(const GridField& f) {
  double m = 0.0;
  for (const auto& v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

double EvolutionProblem::max_stable_dt() const {
  const double h = min_spacing(spatial_spec);
  const double d = static_cast<double>(spatial_spec.dim());
  if (kind == Kind::Schroedinger) return mass * h * h / d;
  double bound = h / std::sqrt(d);
  // Leapfrog needs dt^2 (4 d / h^2 + c) <= 4; with c > 0 this is tighter.
  if (mass_term > 0.0) bound = std::min(bound, 2.0 / std::sqrt(4.0 * d / (h * h) + mass_term));
  return bound;
}

void EvolutionProblem::validate() const {
  spatial_spec.validate();
  if (spatial_spec.dim() < 1 || spatial_spec.dim() > 3)
    throw Error(ErrorKind::InvalidArgument, "evolution supports 1 to 3 spatial axes");
  for (std::size_t a = 0; a < spatial_spec.dim(); ++a) {
    if (!spatial_spec.periodic[a]) throw Error(ErrorKind::InvalidArgument, "evolution requires periodic axes");
    if (spatial_spec.points[a] < 4) throw Error(ErrorKind::GridTooSmall, "evolution needs 4 points per axis");
  }
  if (!(mass > 0.0)) throw Error(ErrorKind::InvalidArgument, "mass must be positive");
  if (!(dt > 0.0)) throw Error(ErrorKind::InvalidArgument, "dt must be positive");
  if (!(initial.spec() == spatial_spec)) throw Error(ErrorKind::DimensionMismatch, "initial field is not on the spatial grid");
  if (kind == Kind::KleinGordon && !(initial_velocity.spec() == spatial_spec))
    throw Error(ErrorKind::DimensionMismatch, "initial velocity is not on the spatial grid");
  if (kind == Kind::Schroedinger && se_coefficient == 0.0)
    throw Error(ErrorKind::InvalidArgument, "Schroedinger coefficient must be nonzero");
  if (dt > max_stable_dt() * (1.0 + 1e-12))
    throw Error(ErrorKind::CflViolation, "dt exceeds the stability bound " + std::to_string(max_stable_dt()));
}

double kg_mass_term(const oracle::IdentityCertificate& cert) {
  const auto& op = cert.reduced;
  if (op.second(0, 0).is_zero()) throw Error(ErrorKind::InvalidArgument, "certificate is not a Klein-Gordon operator");
  GaussRational c = op.zeroth / op.second(0, 0);
  if (!c.is_real()) throw Error(ErrorKind::InvalidArgument, "Klein-Gordon mass term is not real");
  return to_double(c.re());
}

double se_coefficient(const oracle::IdentityCertificate& cert, const Rational& m) {
  const auto& op = cert.reduced;
  if (op.second(1, 1).is_zero() || m == 0) throw Error(ErrorKind::InvalidArgument, "certificate is not a Schroedinger operator");
  GaussRational c = op.first[0] / op.second(1, 1);
  if (!c.re().is_zero()) throw Error(ErrorKind::InvalidArgument, "time coefficient is not imaginary");
  return to_double(c.im() / m);
}

KgState kg_initial_state(const EvolutionProblem& p) {
  p.validate();
  // u^{-1} from a second-order Taylor step backwards.
  GridField a = fields::apply_grid_operator(p.initial, kg_operator(p));
  GridField prev = p.initial;
  for (std::size_t i = 0; i < prev.size(); ++i)
    prev[i] = p.initial[i] - p.dt * p.initial_velocity[i] + 0.5 * p.dt * p.dt * a[i];
  return KgState{prev, p.initial, 0};
}

KgState step_kg(const EvolutionProblem& p, const KgState& s) {
  GridField a = fields::apply_grid_operator(s.current, kg_operator(p));
  GridField next = s.current;
  const double dt2 = p.dt * p.dt;
  for (std::size_t i = 0; i < next.size(); ++i)
    next[i] = 2.0 * s.current[i] - s.previous[i] + dt2 * a[i];
  return KgState{s.current, next, s.step + 1};
}

double kg_energy(const EvolutionProblem& p, const KgState& s) {
  GridField v = s.current - s.previous;
  v *= 1.0 / p.dt;
  GridField a = fields::apply_grid_operator(s.previous, kg_operator(p));
  return inner(v, v).real() - inner(s.current, a).real();
}

KgState reversed(const KgState& s) { return KgState{s.current, s.previous, s.step}; }

SeStep step_se(const EvolutionProblem& p, const GridField& psi) {
  const std::size_t d = p.spatial_spec.dim();
  const GridOperator lap = laplacian(d);
  double diag = 0.0;
  for (std::size_t a = 0; a < d; ++a) diag += 2.0 / (p.spatial_spec.spacing(a) * p.spatial_spec.spacing(a));
  // d_t psi = i lap psi / (c m); Crank-Nicolson with beta = (dt/2) i / (c m).
  const cplx beta(0.0, 0.5 * p.dt / (p.se_coefficient * p.mass));
  const cplx denom = 1.0 + beta * diag;

  GridField lap0 = fields::apply_grid_operator(psi, lap);
  GridField rhs = psi;
  for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += beta * lap0[i];

  const double scale = std::max(1.0, max_abs(psi));
  GridField x = psi;
  SeStep out;
  double update = 0.0;
  for (out.iterations = 0; out.iterations < 50; ++out.iterations) {
    GridField lx = fields::apply_grid_operator(x, lap);
    update = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      cplx next = (rhs[i] + beta * (lx[i] + diag * x[i])) / denom;
      update = std::max(update, std::abs(next - x[i]));
      x[i] = next;
    }
    if (update <= 1e-15 * scale) {
      ++out.iterations;
      break;
    }
  }
  if (update > 1e-12 * scale) throw Error(ErrorKind::NonConvergence, "Crank-Nicolson fixed point did not converge");
  GridField lx = fields::apply_grid_operator(x, lap);
  double res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    res = std::max(res, std::abs(x[i] - psi[i] - beta * (lx[i] + lap0[i])));
  out.psi = std::move(x);
  out.solve_residual = res;
  return out;
}

double l2_norm(const GridField& f) { return std::sqrt(inner(f, f).real()); }

Trajectory evolve(const EvolutionProblem& p, const Observer& observer) {
  p.validate();
  Trajectory t;
  t.growing_mode = p.growing_mode();
  if (p.kind == Kind::KleinGordon) {
    KgState s = kg_initial_state(p);
    const double e0 = kg_energy(p, s);
    auto record = [&](double residual) {
      double e = kg_energy(p, s);
      double n = l2_norm(s.current);
      t.records.push_back({s.step, static_cast<double>(s.step) * p.dt, n, e, residual});
      if (e0 != 0.0) t.energy_drift = std::max(t.energy_drift, std::abs(e - e0) / std::abs(e0));
      if (observer) observer(s.step, s.current);
    };
    record(0.0);
    for (std::size_t n = 0; n < p.steps; ++n) {
      KgState next = step_kg(p, s);
      // Consistency of the stored levels with the scheme.
      GridField a = fields::apply_grid_operator(s.current, kg_operator(p));
      double residual = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i)
        residual = std::max(residual, std::abs(next.current[i] - 2.0 * s.current[i] + s.previous[i] - p.dt * p.dt * a[i]));
      s = std::move(next);
      record(residual);
    }
    t.final_field = s.current;
  } else {
    GridField psi = p.initial;
    const double n0 = l2_norm(psi);
    auto record = [&](std::size_t step, double residual) {
      double n = l2_norm(psi);
      // Kinetic energy -<psi, lap psi> / (|c| m), also a Crank-Nicolson invariant.
      GridField lp = fields::apply_grid_operator(psi, laplacian(p.spatial_spec.dim()));
      double e = -inner(psi, lp).real() / (std::abs(p.se_coefficient) * p.mass);
      t.records.push_back({step, static_cast<double>(step) * p.dt, n, e, residual});
      if (n0 != 0.0) t.norm_drift = std::max(t.norm_drift, std::abs(n - n0) / n0);
      if (observer) observer(step, psi);
    };
    record(0, 0.0);
    for (std::size_t n = 0; n < p.steps; ++n) {
      SeStep st = step_se(p, psi);
      psi = std::move(st.psi);
      record(n + 1, st.solve_residual);
    }
    t.final_field = psi;
  }
  return t;
}

}  // namespace unfold::solver
