#include "unfold/dedonder.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace unfold::dedonder {

using fields::GridOperator;
using oracle::Field;

namespace {

void require_spec(const GridField& f, const GridSpec& spec, const char* what) {
  if (!(f.spec() == spec)) throw Error(ErrorKind::DimensionMismatch, std::string(what) + " is not on the section grid");
}

double dbl(const Rational& r) { return to_double(r); }

cplx interior_sum(const GridField& f) {
  cplx s = 0.0;
  for (std::size_t i : fields::interior_nodes(f.spec())) s += f[i];
  return s * f.spec().cell_volume();
}

cplx complex_normal(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  double re = n(rng);
  double im = n(rng);
  return {re, im};
}

PlaneWaveSum random_waves(std::size_t dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  PlaneWaveSum w;
  for (int k = 0; k < 3; ++k) {
    fields::PlaneWaveMode m;
    for (std::size_t a = 0; a < dim; ++a) m.momentum.push_back(u(rng));
    m.amplitude = complex_normal(rng);
    w.modes.push_back(std::move(m));
  }
  return w;
}

template <class T>
Matrix<T> gauss_jordan_inverse(Matrix<T> a) {
  const std::size_t n = a.rows();
  Matrix<T> inv = Matrix<T>::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && is_zero(a(p, c))) ++p;
    if (p == n) throw Error(ErrorKind::DegenerateConstraint, "momentum equations do not determine the momenta");
    if (p != c)
      for (std::size_t k = 0; k < n; ++k) {
        std::swap(a(p, k), a(c, k));
        std::swap(inv(p, k), inv(c, k));
      }
    const T piv = a(c, c);
    for (std::size_t k = 0; k < n; ++k) {
      a(c, k) = a(c, k) / piv;
      inv(c, k) = inv(c, k) / piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || is_zero(a(r, c))) continue;
      const T f = a(r, c);
      for (std::size_t k = 0; k < n; ++k) {
        a(r, k) = a(r, k) - f * a(c, k);
        inv(r, k) = inv(r, k) - f * inv(c, k);
      }
    }
  }
  return inv;
}

GaussRational gr(const Rational& r) { return GaussRational(r); }

void push(Equation& e, std::size_t unknown, int axis, const GaussRational& c) {
  if (!c.is_zero()) e.terms.push_back({unknown, axis, c});
}

// Momentum equations as M * momenta + (scalar terms) = 0.
struct Split {
  std::vector<const Equation*> momentum;
  const Equation* divergence = nullptr;
  Matrix<GaussRational> inverse;
};

Split split(const DdwSystem& s) {
  Split out;
  for (const auto& e : s.equations) {
    if (e.divergence) {
      if (out.divergence) throw Error(ErrorKind::InvalidArgument, s.name + ": more than one divergence equation");
      out.divergence = &e;
    } else {
      out.momentum.push_back(&e);
    }
  }
  const std::size_t nm = s.unknown_count() - 1;
  if (!out.divergence) throw Error(ErrorKind::InvalidArgument, s.name + ": no divergence equation");
  if (out.momentum.size() != nm)
    throw Error(ErrorKind::InvalidArgument, s.name + ": momentum equation count differs from momentum slots");
  Matrix<GaussRational> m(nm, nm);
  for (std::size_t i = 0; i < nm; ++i)
    for (const auto& t : out.momentum[i]->terms) {
      if (t.unknown == 0) continue;
      if (t.axis >= 0) throw Error(ErrorKind::InvalidArgument, s.name + ": momentum equation differentiates a momentum");
      m(i, t.unknown - 1) = m(i, t.unknown - 1) + t.coeff;
    }
  out.inverse = gauss_jordan_inverse(m);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Sections

void CovariantField::validate() const {
  const GridSpec& s = phi.spec();
  s.validate();
  require_spec(phibar, s, "phibar");
  if (P.size() != s.dim() || Pbar.size() != s.dim())
    throw Error(ErrorKind::DimensionMismatch, "momentum count differs from the grid dimension");
  for (const auto& f : P) require_spec(f, s, "P");
  for (const auto& f : Pbar) require_spec(f, s, "Pbar");
}

bool CovariantField::is_physical(double tol) const {
  auto close = [&](const GridField& a, const GridField& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (std::abs(std::conj(a[i]) - b[i]) > tol * std::max(1.0, std::abs(a[i]))) return false;
    return true;
  };
  if (!close(phi, phibar)) return false;
  for (std::size_t k = 0; k < P.size(); ++k)
    if (!close(P[k], Pbar[k])) return false;
  return true;
}

CovariantField plane_wave_section(const GridSpec& spec, const PlaneWaveSum& waves, const Metric& metric) {
  if (metric.dim() != spec.dim()) throw Error(ErrorKind::DimensionMismatch, "metric and grid dimensions differ");
  CovariantField chi;
  chi.chart = metric.chart();
  chi.phi = fields::synthesize(spec, waves);
  chi.phibar = chi.phi.conj();
  std::vector<PlaneWaveSum> grad;
  for (std::size_t nu = 0; nu < spec.dim(); ++nu) grad.push_back(waves.derivative(nu));
  for (std::size_t mu = 0; mu < spec.dim(); ++mu) {
    PlaneWaveSum p = waves.scaled(0.0);
    for (std::size_t nu = 0; nu < spec.dim(); ++nu)
      if (metric.inverse()(mu, nu) != 0) p = p + grad[nu].scaled(dbl(metric.inverse()(mu, nu)));
    chi.P.push_back(fields::synthesize(spec, p));
    chi.Pbar.push_back(chi.P.back().conj());
  }
  return chi;
}

CovariantField random_section(const GridSpec& spec, const Metric& metric, std::uint64_t seed) {
  if (metric.dim() != spec.dim()) throw Error(ErrorKind::DimensionMismatch, "metric and grid dimensions differ");
  std::mt19937_64 rng(seed);
  CovariantField chi;
  chi.chart = metric.chart();
  chi.phi = fields::synthesize(spec, random_waves(spec.dim(), rng));
  chi.phibar = chi.phi.conj();
  for (std::size_t mu = 0; mu < spec.dim(); ++mu) {
    chi.P.push_back(fields::synthesize(spec, random_waves(spec.dim(), rng)));
    chi.Pbar.push_back(chi.P.back().conj());
  }
  return chi;
}

GridField hamiltonian_density(const CovariantField& chi, const Metric& metric) {
  chi.validate();
  GridField h(chi.spec(), "H");
  for (std::size_t mu = 0; mu < metric.dim(); ++mu)
    for (std::size_t nu = 0; nu < metric.dim(); ++nu) {
      const Rational& g = metric.components()(mu, nu);
      if (g == 0) continue;
      const double gv = dbl(g);
      for (std::size_t i = 0; i < h.size(); ++i) h[i] += gv * chi.Pbar[mu][i] * chi.P[nu][i];
    }
  return h;
}

namespace {

// Pbar^mu D_mu phi + P^mu D_mu phibar - H, pointwise.
GridField lagrangian(const CovariantField& chi, const Metric& metric) {
  GridField l = hamiltonian_density(chi, metric);
  l *= -1.0;
  for (std::size_t mu = 0; mu < metric.dim(); ++mu) {
    GridField dphi = fields::central_derivative(chi.phi, mu);
    GridField dphibar = fields::central_derivative(chi.phibar, mu);
    for (std::size_t i = 0; i < l.size(); ++i) l[i] += chi.Pbar[mu][i] * dphi[i] + chi.P[mu][i] * dphibar[i];
  }
  return l;
}

CovariantField probe_section(const GridSpec& spec, const VariationProbe& probe) {
  GridField b = GridField::from_function(spec, [&](const std::vector<double>& x) { return cplx(probe.bump(x)); });
  CovariantField u;
  u.phi = probe.phi_mix * b;
  u.phibar = std::conj(probe.phi_mix) * b;
  for (const auto& c : probe.P_mix) {
    u.P.push_back(c * b);
    u.Pbar.push_back(std::conj(c) * b);
  }
  return u;
}

CovariantField shifted(const CovariantField& chi, const CovariantField& u, double eps) {
  CovariantField out = chi;
  out.phi += eps * u.phi;
  out.phibar += eps * u.phibar;
  for (std::size_t k = 0; k < out.P.size(); ++k) {
    out.P[k] += eps * u.P[k];
    out.Pbar[k] += eps * u.Pbar[k];
  }
  return out;
}

}  // namespace

cplx action_value(const CovariantField& chi, const Metric& metric) {
  chi.validate();
  if (metric.dim() != chi.spec().dim()) throw Error(ErrorKind::DimensionMismatch, "metric and section dimensions differ");
  return interior_sum(lagrangian(chi, metric));
}

double action(const CovariantField& chi, const Metric& metric) { return action_value(chi, metric).real(); }

double DdwResiduals::max_norm() const {
  double m = 0.0;
  for (const auto& e : equations) m = std::max(m, e.report.norms.max);
  return m;
}

DdwResiduals ddw_residuals(const CovariantField& chi, const Metric& metric) {
  chi.validate();
  const DdwSystem sys = full_system(metric);
  std::vector<GridField> u{chi.phi};
  std::vector<GridField> ub{chi.phibar};
  for (std::size_t k = 0; k < chi.P.size(); ++k) {
    u.push_back(chi.P[k]);
    ub.push_back(chi.Pbar[k]);
  }
  DdwResiduals r = evaluate_system(sys, u);
  DdwResiduals rb = evaluate_system(sys.conjugate(), ub);
  r.equations.insert(r.equations.end(), rb.equations.begin(), rb.equations.end());
  return r;
}

// ---------------------------------------------------------------------------
// Schwinger-Weiss

double VariationProbe::bump(const std::vector<double>& x) const {
  double b = 1.0;
  for (std::size_t a = 0; a < x.size(); ++a) {
    const double d = std::abs(x[a] - center[a]);
    if (d >= half_width[a]) return 0.0;
    const double c = std::cos(std::numbers::pi * d / (2.0 * half_width[a]));
    b *= c * c;
  }
  return b;
}

std::vector<VariationProbe> make_probes(const GridSpec& spec, std::size_t count, std::uint64_t seed) {
  spec.validate();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.45, 0.55);
  std::vector<VariationProbe> out;
  for (std::size_t n = 0; n < count; ++n) {
    VariationProbe p;
    for (std::size_t a = 0; a < spec.dim(); ++a) {
      const double ext = spec.upper[a] - spec.lower[a];
      p.center.push_back(spec.lower[a] + u(rng) * ext);
      p.half_width.push_back(0.2 * ext);
      if (spec.periodic[a]) continue;
      const std::size_t np = spec.points[a];
      for (std::size_t j : {std::size_t{0}, std::size_t{1}, np - 2, np - 1})
        if (np < 5 || std::abs(spec.coordinate(a, j) - p.center[a]) < p.half_width[a])
          throw Error(ErrorKind::GridTooSmall,
                      "variation probe reaches the boundary layers on axis " + spec.axis_names[a]);
    }
    p.phi_mix = complex_normal(rng);
    for (std::size_t a = 0; a < spec.dim(); ++a) p.P_mix.push_back(complex_normal(rng));
    out.push_back(std::move(p));
  }
  return out;
}

double directional_derivative(const CovariantField& chi, const Metric& metric, const VariationProbe& probe) {
  chi.validate();
  const CovariantField u = probe_section(chi.spec(), probe);
  // d/d eps of the quadratic action: every product with one factor from u.
  const std::size_t n = metric.dim();
  GridField l(chi.spec());
  for (std::size_t mu = 0; mu < n; ++mu) {
    GridField dphi = fields::central_derivative(chi.phi, mu);
    GridField dphibar = fields::central_derivative(chi.phibar, mu);
    GridField duphi = fields::central_derivative(u.phi, mu);
    GridField duphibar = fields::central_derivative(u.phibar, mu);
    for (std::size_t i = 0; i < l.size(); ++i)
      l[i] += u.Pbar[mu][i] * dphi[i] + chi.Pbar[mu][i] * duphi[i] + u.P[mu][i] * dphibar[i] +
              chi.P[mu][i] * duphibar[i];
    for (std::size_t nu = 0; nu < n; ++nu) {
      const Rational& g = metric.components()(mu, nu);
      if (g == 0) continue;
      const double gv = dbl(g);
      for (std::size_t i = 0; i < l.size(); ++i)
        l[i] -= gv * (u.Pbar[mu][i] * chi.P[nu][i] + chi.Pbar[mu][i] * u.P[nu][i]);
    }
  }
  return interior_sum(l).real();
}

double action_difference_quotient(const CovariantField& chi, const Metric& metric, const VariationProbe& probe,
                                  double eps) {
  if (!(eps > 0.0)) throw Error(ErrorKind::InvalidArgument, "epsilon must be positive");
  const CovariantField u = probe_section(chi.spec(), probe);
  const double plus = action(shifted(chi, u, eps), metric);
  const double minus = action(shifted(chi, u, -eps), metric);
  return (plus - minus) / (2.0 * eps);
}

namespace {

// Fields from which every probe derivative follows by summation by parts:
// dS(u) = sum_j b_j [conj(c_mu) A_mu + c_mu Abar_mu - c_phi div Pbar - conj(c_phi) div P].
// Exact on the grid because probes vanish on the two outer layers.
struct GradientFields {
  std::vector<GridField> a, abar;
  GridField div, divbar;
};

GradientFields gradient_fields(const CovariantField& chi, const Metric& metric) {
  const std::size_t n = metric.dim();
  GradientFields g;
  g.div = GridField(chi.spec());
  g.divbar = GridField(chi.spec());
  for (std::size_t mu = 0; mu < n; ++mu) {
    GridField a = fields::central_derivative(chi.phi, mu);
    GridField ab = fields::central_derivative(chi.phibar, mu);
    for (std::size_t nu = 0; nu < n; ++nu) {
      const Rational& gc = metric.components()(mu, nu);
      if (gc == 0) continue;
      const double gv = dbl(gc);
      for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] -= gv * chi.P[nu][i];
        ab[i] -= gv * chi.Pbar[nu][i];
      }
    }
    g.a.push_back(std::move(a));
    g.abar.push_back(std::move(ab));
    g.div += fields::central_derivative(chi.P[mu], mu);
    g.divbar += fields::central_derivative(chi.Pbar[mu], mu);
  }
  return g;
}

double probe_derivative(const GradientFields& g, const VariationProbe& probe) {
  const GridSpec& spec = g.div.spec();
  const std::size_t d = spec.dim();
  std::vector<std::vector<double>> w(d);
  std::vector<std::size_t> lo(d), hi(d);
  for (std::size_t a = 0; a < d; ++a) {
    lo[a] = spec.points[a];
    hi[a] = 0;
    for (std::size_t j = 0; j < spec.points[a]; ++j) {
      const double dist = std::abs(spec.coordinate(a, j) - probe.center[a]);
      double c = 0.0;
      if (dist < probe.half_width[a]) {
        c = std::cos(std::numbers::pi * dist / (2.0 * probe.half_width[a]));
        c *= c;
        lo[a] = std::min(lo[a], j);
        hi[a] = std::max(hi[a], j + 1);
      }
      w[a].push_back(c);
    }
    if (lo[a] >= hi[a]) return 0.0;
  }
  const auto strides = spec.strides();
  std::vector<std::size_t> idx = lo;
  cplx sum = 0.0;
  for (;;) {
    double b = 1.0;
    std::size_t flat = 0;
    for (std::size_t a = 0; a < d; ++a) {
      b *= w[a][idx[a]];
      flat += idx[a] * strides[a];
    }
    if (b != 0.0) {
      cplx t = -probe.phi_mix * g.divbar[flat] - std::conj(probe.phi_mix) * g.div[flat];
      for (std::size_t mu = 0; mu < d; ++mu)
        t += std::conj(probe.P_mix[mu]) * g.a[mu][flat] + probe.P_mix[mu] * g.abar[mu][flat];
      sum += b * t;
    }
    std::size_t a = d;
    while (a > 0) {
      --a;
      if (++idx[a] < hi[a]) break;
      idx[a] = lo[a];
      if (a == 0) return (sum * spec.cell_volume()).real();
    }
  }
}

}  // namespace

GradientReport schwinger_weiss_gradient(const CovariantField& chi, const Metric& metric, std::size_t num_probes,
                                        std::uint64_t seed) {
  if (num_probes == 0) throw Error(ErrorKind::InsufficientProbes, "at least one variation probe is needed");
  chi.validate();
  if (metric.dim() != chi.spec().dim()) throw Error(ErrorKind::DimensionMismatch, "metric and section dimensions differ");
  const GradientFields g = gradient_fields(chi, metric);
  GradientReport r;
  const auto probes = make_probes(chi.spec(), num_probes, seed);
  for (std::size_t k = 0; k < probes.size(); ++k) {
    const double d = probe_derivative(g, probes[k]);
    r.per_probe.push_back(d);
    r.max_abs = std::max(r.max_abs, std::abs(d));
    if (k >= r.literal_probes) continue;
    const double lit = action_difference_quotient(chi, metric, probes[k], r.literal_epsilon);
    r.literal_max_deviation = std::max(r.literal_max_deviation, std::abs(lit - d));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Reduced sections

MomentumAnsatz kg_momentum_ansatz(const Rational& m) {
  return {4, GaussRational(-m), {0, 1, 2, 3}, "kg: P^mu = exp(-m x4) pi^mu, P^4 = -m exp(-m x4) lambda"};
}

MomentumAnsatz se_momentum_ansatz(const Rational& m) {
  return {4, GaussRational(0, m), {0, 1, 2, 3}, "se: P^mu = exp(i m s) pi^mu, P^s = i m exp(i m s) lambda"};
}

namespace {

oracle::ReductionAnsatz scalar_ansatz(const MomentumAnsatz& a, const GaussRational& rate) {
  return {a.direction_axis, rate, a.reduced_axes, a.label};
}

}  // namespace

CovariantField assemble(const ReducedCovariantField& r, const MomentumAnsatz& a, const GridSpec& full,
                        geometry::Chart chart) {
  const std::size_t dim = full.dim();
  if (a.reduced_axes.size() + 1 != dim) throw Error(ErrorKind::AxisMismatch, "ansatz does not split the full grid");
  if (r.pi.size() != a.reduced_axes.size() || r.pibar.size() != a.reduced_axes.size())
    throw Error(ErrorKind::DimensionMismatch, "reduced momentum count differs from the reduced dimension");
  const auto fwd = scalar_ansatz(a, a.rate);
  const auto bwd = scalar_ansatz(a, a.rate.conj());
  CovariantField chi;
  chi.chart = chart;
  chi.phi = fields::apply_ansatz(r.psi, fwd, full);
  chi.phibar = fields::apply_ansatz(r.psibar, bwd, full);
  chi.P.resize(dim);
  chi.Pbar.resize(dim);
  for (std::size_t k = 0; k < a.reduced_axes.size(); ++k) {
    chi.P[a.reduced_axes[k]] = fields::apply_ansatz(r.pi[k], fwd, full);
    chi.Pbar[a.reduced_axes[k]] = fields::apply_ansatz(r.pibar[k], bwd, full);
  }
  chi.P[a.direction_axis] = a.rate.to_complex() * fields::apply_ansatz(r.lambda, fwd, full);
  chi.Pbar[a.direction_axis] = a.rate.conj().to_complex() * fields::apply_ansatz(r.lambdabar, bwd, full);
  return chi;
}

Extraction extract(const CovariantField& chi, const MomentumAnsatz& a) {
  chi.validate();
  if (a.rate.is_zero()) throw Error(ErrorKind::ZeroProfile, "momentum ansatz has zero rate");
  const auto fwd = scalar_ansatz(a, a.rate);
  const auto bwd = scalar_ansatz(a, a.rate.conj());
  Extraction out;
  auto take = [&](const GridField& f, const oracle::ReductionAnsatz& an, double scale) {
    auto rf = fields::reduce_field(f, an);
    out.max_equivariance_defect = std::max(out.max_equivariance_defect, rf.max_equivariance_defect / scale);
    return rf.field;
  };
  const double rabs = std::abs(a.rate.to_complex());
  out.field.psi = take(chi.phi, fwd, 1.0);
  out.field.psibar = take(chi.phibar, bwd, 1.0);
  for (std::size_t ax : a.reduced_axes) {
    out.field.pi.push_back(take(chi.P[ax], fwd, 1.0));
    out.field.pibar.push_back(take(chi.Pbar[ax], bwd, 1.0));
  }
  out.field.lambda = (1.0 / a.rate.to_complex()) * take(chi.P[a.direction_axis], fwd, rabs);
  out.field.lambdabar = (1.0 / a.rate.conj().to_complex()) * take(chi.Pbar[a.direction_axis], bwd, rabs);
  return out;
}

CovariantField reduce_chi_kg(const ReducedCovariantFieldKG& r, const Rational& m, const GridSpec& full) {
  return assemble(r, kg_momentum_ansatz(m), full, geometry::Chart::Cartesian5d);
}

CovariantField reduce_chi_se(const ReducedCovariantFieldSE& r, const Rational& m, const GridSpec& full) {
  return assemble(r, se_momentum_ansatz(m), full, geometry::Chart::Lightcone5d);
}

// ---------------------------------------------------------------------------
// Symbolic systems

std::vector<std::string> DdwSystem::unknown_names() const {
  std::vector<std::string> n{has_lambda ? "psi" : "phi"};
  for (const auto& a : axis_names) n.push_back((has_lambda ? "pi^" : "P^") + a);
  if (has_lambda) n.push_back("lambda");
  return n;
}

std::vector<std::string> DdwSystem::equation_strings() const {
  const auto names = unknown_names();
  std::vector<std::string> out;
  for (const auto& e : equations) {
    std::string s = e.name + ": ";
    bool first = true;
    for (const auto& t : e.terms) {
      if (!first) s += " + ";
      first = false;
      std::string c = to_string(t.coeff);
      if (c != "1") s += c + "*";
      if (t.axis >= 0) s += "d_" + axis_names[static_cast<std::size_t>(t.axis)] + " ";
      s += names[t.unknown];
    }
    if (first) s += "0";
    out.push_back(s + " = 0");
  }
  return out;
}

DdwSystem DdwSystem::conjugate() const {
  DdwSystem c = *this;
  c.name = "conj " + name;
  for (auto& e : c.equations) {
    e.name = "bar " + e.name;
    for (auto& t : e.terms) t.coeff = t.coeff.conj();
  }
  return c;
}

DdwSystem full_system(const Metric& metric) {
  DdwSystem s;
  s.name = "ddw " + std::string(geometry::chart_name(metric.chart()));
  s.axis_names = geometry::axis_names(metric.chart());
  const std::size_t n = metric.dim();
  for (std::size_t mu = 0; mu < n; ++mu) {
    Equation e{"grad_" + s.axis_names[mu], {}, false};
    push(e, 0, static_cast<int>(mu), gr(1));
    for (std::size_t nu = 0; nu < n; ++nu) push(e, 1 + nu, -1, gr(-metric.components()(mu, nu)));
    s.equations.push_back(std::move(e));
  }
  Equation div{"div", {}, true};
  for (std::size_t mu = 0; mu < n; ++mu) push(div, 1 + mu, static_cast<int>(mu), gr(1));
  s.equations.push_back(std::move(div));
  return s;
}

DdwSystem derived_reduced_system(const Metric& metric, const MomentumAnsatz& a) {
  const std::size_t dim = metric.dim();
  const std::size_t d = a.direction_axis;
  if (d >= dim || a.reduced_axes.size() + 1 != dim) throw Error(ErrorKind::AxisMismatch, "ansatz does not fit the metric");
  const auto full_names = geometry::axis_names(metric.chart());
  DdwSystem s;
  s.name = "reduced ddw (" + a.label + ")";
  s.has_lambda = true;
  for (std::size_t ax : a.reduced_axes) s.axis_names.push_back(full_names[ax]);
  const std::size_t n = a.reduced_axes.size();
  const GaussRational& r = a.rate;
  const auto& g = metric.components();
  for (std::size_t mu = 0; mu < dim; ++mu) {
    Equation e{"grad_" + full_names[mu], {}, false};
    for (std::size_t k = 0; k < n; ++k)
      if (a.reduced_axes[k] == mu) push(e, 0, static_cast<int>(k), gr(1));
    if (mu == d) push(e, 0, -1, r);
    for (std::size_t j = 0; j < n; ++j) push(e, 1 + j, -1, gr(-g(mu, a.reduced_axes[j])));
    push(e, n + 1, -1, gr(-g(mu, d)) * r);
    s.equations.push_back(std::move(e));
  }
  Equation div{"div", {}, true};
  for (std::size_t k = 0; k < n; ++k) push(div, 1 + k, static_cast<int>(k), gr(1));
  push(div, n + 1, -1, r * r);
  s.equations.push_back(std::move(div));
  return s;
}

DdwSystem printed_kg_system(const Rational& m) {
  DdwSystem s;
  s.name = "printed kg";
  s.has_lambda = true;
  s.axis_names = {"x0", "x1", "x2", "x3"};
  Equation l{"lambda", {}, false};
  push(l, 5, -1, gr(1));
  push(l, 0, -1, gr(1));
  s.equations.push_back(l);
  Equation e0{"grad_x0", {}, false};
  push(e0, 0, 0, gr(1));
  push(e0, 1, -1, gr(-1));
  s.equations.push_back(e0);
  for (int k = 1; k <= 3; ++k) {
    Equation e{"grad_x" + std::to_string(k), {}, false};
    push(e, 0, k, gr(1));
    push(e, 1 + static_cast<std::size_t>(k), -1, gr(1));
    s.equations.push_back(e);
  }
  Equation div{"div", {}, true};
  push(div, 1, 0, gr(1));
  push(div, 5, -1, gr(-m * m));
  for (int k = 1; k <= 3; ++k) push(div, 1 + static_cast<std::size_t>(k), k, gr(1));
  s.equations.push_back(div);
  return s;
}

DdwSystem printed_se_system(const Rational& m) {
  DdwSystem s;
  s.name = "printed se";
  s.has_lambda = true;
  s.axis_names = {"t", "x1", "x2", "x3"};
  const GaussRational im(0, m);
  Equation es{"grad_s", {}, false};
  push(es, 1, -1, gr(1));
  push(es, 0, -1, im);
  s.equations.push_back(es);
  Equation et{"grad_t", {}, false};
  push(et, 0, 0, gr(1));
  push(et, 5, -1, im);
  s.equations.push_back(et);
  for (int k = 1; k <= 3; ++k) {
    Equation e{"grad_x" + std::to_string(k), {}, false};
    push(e, 0, k, gr(1));
    push(e, 1 + static_cast<std::size_t>(k), -1, gr(1));
    s.equations.push_back(e);
  }
  Equation div{"div", {}, true};
  push(div, 1, 0, gr(1));
  push(div, 5, -1, gr(-m * m));
  for (int k = 1; k <= 3; ++k) push(div, 1 + static_cast<std::size_t>(k), k, gr(1));
  s.equations.push_back(div);
  return s;
}

oracle::LinearOperator eliminate(const DdwSystem& sys) {
  const Split sp = split(sys);
  const std::size_t n = sys.dim();
  const std::size_t nm = sys.unknown_count() - 1;
  auto apply_term = [](const Term& t, const Field& f) {
    return t.coeff * (t.axis >= 0 ? oracle::partial(f, static_cast<std::size_t>(t.axis)) : f);
  };
  auto map = [&](const Field& psi) {
    std::vector<Field> source(nm, Field(n));
    for (std::size_t i = 0; i < nm; ++i)
      for (const auto& t : sp.momentum[i]->terms)
        if (t.unknown == 0) source[i] += apply_term(t, psi);
    std::vector<Field> slots{psi};
    for (std::size_t j = 0; j < nm; ++j) {
      Field m(n);
      for (std::size_t i = 0; i < nm; ++i)
        if (!sp.inverse(j, i).is_zero()) m -= sp.inverse(j, i) * source[i];
      slots.push_back(std::move(m));
    }
    Field out(n);
    for (const auto& t : sp.divergence->terms) out += apply_term(t, slots[t.unknown]);
    return out;
  };
  oracle::LinearOperator op = oracle::identify_operator(map, n, oracle::default_probes(n));
  op.name = "eliminated " + sys.name;
  return op;
}

std::vector<PlaneWaveSum> solve_momenta(const DdwSystem& sys, const PlaneWaveSum& scalar) {
  scalar.validate();
  if (scalar.dim() != sys.dim()) throw Error(ErrorKind::DimensionMismatch, "plane-wave and system dimensions differ");
  const Split sp = split(sys);
  const std::size_t nm = sys.unknown_count() - 1;
  std::vector<PlaneWaveSum> source(nm, scalar.scaled(0.0));
  for (std::size_t i = 0; i < nm; ++i)
    for (const auto& t : sp.momentum[i]->terms)
      if (t.unknown == 0) {
        PlaneWaveSum d = t.axis >= 0 ? scalar.derivative(static_cast<std::size_t>(t.axis)) : scalar;
        source[i] = source[i] + d.scaled(t.coeff.to_complex());
      }
  std::vector<PlaneWaveSum> out{scalar};
  for (std::size_t j = 0; j < nm; ++j) {
    PlaneWaveSum m = scalar.scaled(0.0);
    for (std::size_t i = 0; i < nm; ++i)
      if (!sp.inverse(j, i).is_zero()) m = m + source[i].scaled(-sp.inverse(j, i).to_complex());
    out.push_back(std::move(m));
  }
  return out;
}

DdwResiduals evaluate_system(const DdwSystem& sys, const std::vector<GridField>& u) {
  if (u.size() != sys.unknown_count()) throw Error(ErrorKind::DimensionMismatch, sys.name + ": wrong number of unknowns");
  const GridSpec& spec = u.front().spec();
  if (spec.dim() != sys.dim()) throw Error(ErrorKind::DimensionMismatch, sys.name + ": grid dimension");
  for (const auto& f : u) require_spec(f, spec, "unknown");
  for (std::size_t a = 0; a < spec.dim(); ++a)
    if (spec.points[a] < 4) throw Error(ErrorKind::GridTooSmall, "residual needs 4 points on axis " + spec.axis_names[a]);
  DdwResiduals out;
  for (const auto& e : sys.equations) {
    std::vector<GridOperator> ops(u.size(), GridOperator::zero(spec.dim()));
    std::vector<bool> used(u.size(), false);
    for (const auto& t : e.terms) {
      used[t.unknown] = true;
      if (t.axis >= 0)
        ops[t.unknown].first[static_cast<std::size_t>(t.axis)] += t.coeff.to_complex();
      else
        ops[t.unknown].zeroth += t.coeff.to_complex();
    }
    GridField r(spec, e.name);
    for (std::size_t k = 0; k < u.size(); ++k)
      if (used[k]) r += fields::apply_grid_operator(u[k], ops[k]);
    fields::Norms norms = fields::interior_norms(r);
    out.equations.push_back({e.name, {std::move(r), norms}});
  }
  return out;
}

}  // namespace unfold::dedonder
