#include "unfold/studies.hpp"

#include <cmath>
#include <numbers>

#include "unfold/solver.hpp"

namespace unfold::studies {

using fields::GridField;
using fields::GridSpec;
using fields::PlaneWaveMode;
using fields::PlaneWaveSum;

cplx solve_frequency(const oracle::LinearOperator& op, const std::vector<cplx>& spatial) {
  const std::size_t n = op.dim();
  if (spatial.size() + 1 != n) throw Error(ErrorKind::DimensionMismatch, "spatial momentum dimension");
  auto a = [&](std::size_t i, std::size_t j) { return op.second(i, j).to_complex(); };
  auto q = [&](std::size_t i) { return spatial[i - 1]; };
  const cplx I(0.0, 1.0);
  const cplx A = -a(0, 0);
  cplx B = I * op.first[0].to_complex();
  cplx C = op.zeroth.to_complex();
  for (std::size_t k = 1; k < n; ++k) {
    B -= (a(0, k) + a(k, 0)) * q(k);
    C += I * op.first[k].to_complex() * q(k);
    for (std::size_t l = 1; l < n; ++l) C -= a(k, l) * q(k) * q(l);
  }
  if (A == 0.0) {
    if (B == 0.0) throw Error(ErrorKind::DegenerateConstraint, "operator does not involve the first axis");
    return -C / B;
  }
  const cplx disc = std::sqrt(B * B - 4.0 * A * C);
  const cplx r1 = (-B + disc) / (2.0 * A);
  const cplx r2 = (-B - disc) / (2.0 * A);
  const double i1 = std::abs(r1.imag()), i2 = std::abs(r2.imag());
  if (std::abs(i1 - i2) > 1e-14 * (1.0 + std::abs(r1) + std::abs(r2))) return i1 < i2 ? r1 : r2;
  return r1.real() >= r2.real() ? r1 : r2;
}

PlaneWaveSum reduced_mode(const oracle::LinearOperator& op, double wavenumber, double detune) {
  std::vector<cplx> spatial(op.dim() - 1, 0.0);
  spatial[0] = wavenumber;
  cplx q0 = solve_frequency(op, spatial) * detune;
  if (detune != 1.0 && std::abs(q0) < 1e-12) q0 = 0.5;
  PlaneWaveMode m;
  m.momentum.push_back(q0);
  m.momentum.insert(m.momentum.end(), spatial.begin(), spatial.end());
  return PlaneWaveSum{{m}};
}

PlaneWaveSum lift(const PlaneWaveSum& reduced, const oracle::ReductionAnsatz& a, std::size_t dim) {
  a.validate(dim);
  PlaneWaveSum out;
  for (const auto& m : reduced.modes) {
    PlaneWaveMode f;
    f.amplitude = m.amplitude;
    f.momentum.assign(dim, 0.0);
    for (std::size_t k = 0; k < a.reduced_axes.size(); ++k) f.momentum[a.reduced_axes[k]] = m.momentum.at(k);
    f.momentum[a.direction_axis] = cplx(0.0, -1.0) * a.rate.to_complex();
    out.modes.push_back(std::move(f));
  }
  return out;
}

GridSpec unit_box(const std::vector<std::string>& names, const std::vector<std::size_t>& points) {
  return GridSpec::box(names, std::vector<double>(points.size(), 0.0), std::vector<double>(points.size(), 1.0), points);
}

std::vector<std::size_t> refine(const std::vector<std::size_t>& base, int level) {
  std::vector<std::size_t> out = base;
  for (auto& n : out)
    if (n > 5) n = (n - 1) * (std::size_t{1} << level) + 1;
  return out;
}

double observed_order(double e_coarse, double e_fine, double h_coarse, double h_fine) {
  return std::log(e_coarse / e_fine) / std::log(h_coarse / h_fine);
}

bool StudyResult::orders_within(double lo, double hi) const {
  if (orders.empty()) return false;
  for (double o : orders)
    if (!(o >= lo && o <= hi)) return false;
  return true;
}

std::string_view study_name(ResidualStudy s) {
  switch (s) {
    case ResidualStudy::Kg: return "kg";
    case ResidualStudy::Se: return "se";
    case ResidualStudy::Dirac: return "dirac";
    case ResidualStudy::Ddw: return "ddw";
    case ResidualStudy::DdwKg: return "ddw-kg";
    case ResidualStudy::DdwSe: return "ddw-se";
  }
  return "";
}

ResidualStudy parse_study(std::string_view name) {
  for (auto s : {ResidualStudy::Kg, ResidualStudy::Se, ResidualStudy::Dirac, ResidualStudy::Ddw, ResidualStudy::DdwKg,
                 ResidualStudy::DdwSe})
    if (study_name(s) == name) return s;
  throw Error(ErrorKind::InvalidArgument, "unknown study '" + std::string(name) + "'");
}

std::vector<std::size_t> default_grid(ResidualStudy s) {
  switch (s) {
    case ResidualStudy::Kg:
    case ResidualStudy::Se:
    case ResidualStudy::Ddw: return {9, 9, 5, 5, 9};
    default: return {9, 9, 5, 5};
  }
}

namespace {

struct ScalarSetup {
  geometry::Metric metric;
  oracle::ReductionAnsatz ansatz;
};

ScalarSetup scalar_setup(const ResidualParams& p, bool lightlike) {
  if (lightlike) return {geometry::lightcone5(p.convention), oracle::se_ansatz(p.mass, p.orientation)};
  return {geometry::minkowski5(), oracle::kg_ansatz(p.mass, p.orientation)};
}

// Norms over the interior nodes of the coarsest grid, which every level shares;
// a node set that creeps toward the boundary would bias the observed order.
struct Nested {
  std::vector<std::size_t> base;
  int level = 0;

  fields::Norms norms(const GridField& f) const {
    const GridSpec& s = f.spec();
    const std::size_t stride = std::size_t{1} << level;
    fields::Norms n;
    double sum = 0.0;
    double vol = 1.0;
    for (std::size_t a = 0; a < s.dim(); ++a) vol *= s.spacing(a) * (base[a] > 5 ? static_cast<double>(stride) : 1.0);
    for (std::size_t i = 0; i < s.size(); ++i) {
      auto idx = s.unravel(i);
      bool keep = true;
      for (std::size_t a = 0; a < s.dim() && keep; ++a) {
        std::size_t c = idx[a];
        if (base[a] > 5) {
          if (c % stride != 0) keep = false;
          c /= stride;
        }
        keep = keep && c >= 1 && c + 2 <= base[a];
      }
      if (!keep) continue;
      const double v = std::abs(f[i]);
      n.max = std::max(n.max, v);
      sum += v * v;
      ++n.nodes;
    }
    n.l2 = std::sqrt(sum * vol);
    return n;
  }

  void add(LevelResult& lv, const std::string& name, const GridField& f) const {
    const fields::Norms n = norms(f);
    if (!name.empty()) lv.per_equation.emplace_back(name, n.max);
    lv.max = std::max(lv.max, n.max);
    lv.l2 = std::sqrt(lv.l2 * lv.l2 + n.l2 * n.l2);
  }
};

LevelResult from_residuals(const dedonder::DdwResiduals& r, const Nested& nested) {
  LevelResult lv;
  for (const auto& e : r.equations) nested.add(lv, e.name, e.report.residual);
  return lv;
}

}  // namespace

StudyResult run_residual_study(const ResidualParams& p) {
  if (p.levels < 1) throw Error(ErrorKind::InvalidArgument, "at least one level is needed");
  const std::vector<std::size_t> base = p.base_grid.empty() ? default_grid(p.study) : p.base_grid;
  const std::size_t dim = default_grid(p.study).size();
  if (base.size() != dim) throw Error(ErrorKind::DimensionMismatch, "grid needs " + std::to_string(dim) + " entries");
  std::size_t active = dim;
  for (std::size_t a = 0; a < dim; ++a) {
    if (base[a] < 5) throw Error(ErrorKind::GridTooSmall, "every axis needs at least 5 points");
    if (base[a] > 5 && active == dim) active = a;
  }
  if (active == dim) throw Error(ErrorKind::InvalidArgument, "no axis has more than 5 points to refine");
  const double detune = p.off_shell ? 1.1 : 1.0;

  StudyResult out;
  out.name = std::string(study_name(p.study));
  for (int level = 0; level < p.levels; ++level) {
    const auto points = refine(base, level);
    const Nested nested{base, level};
    LevelResult lv;
    switch (p.study) {
      case ResidualStudy::Kg:
      case ResidualStudy::Se:
      case ResidualStudy::Ddw: {
        const bool lightlike = p.study == ResidualStudy::Se;
        const ScalarSetup s = scalar_setup(p, lightlike);
        const auto op = oracle::reduced_operator(s.metric, s.ansatz);
        const PlaneWaveSum full = lift(reduced_mode(op, p.wavenumber, detune), s.ansatz, 5);
        const GridSpec spec = unit_box(geometry::axis_names(s.metric.chart()), points);
        if (p.study == ResidualStudy::Ddw) {
          lv = from_residuals(dedonder::ddw_residuals(dedonder::plane_wave_section(spec, full, s.metric), s.metric),
                              nested);
        } else {
          auto r = fields::residual(fields::synthesize(spec, full),
                                    geometry::laplace_beltrami_coeffs(s.metric), GaussRational(0));
          nested.add(lv, "", r.residual);
        }
        break;
      }
      case ResidualStudy::DdwKg:
      case ResidualStudy::DdwSe: {
        const bool lightlike = p.study == ResidualStudy::DdwSe;
        const ScalarSetup s = scalar_setup(p, lightlike);
        const auto op = oracle::reduced_operator(s.metric, s.ansatz);
        const dedonder::MomentumAnsatz ma{s.ansatz.direction_axis, s.ansatz.rate, s.ansatz.reduced_axes,
                                          s.ansatz.label};
        const dedonder::DdwSystem sys =
            p.printed_system ? (lightlike ? dedonder::printed_se_system(p.mass) : dedonder::printed_kg_system(p.mass))
                             : dedonder::derived_reduced_system(s.metric, ma);
        const PlaneWaveSum mode = reduced_mode(op, p.wavenumber, detune);
        const auto slots = dedonder::solve_momenta(sys, mode);
        std::vector<std::string> names = sys.axis_names;
        const GridSpec spec = unit_box(names, points);
        std::vector<GridField> u, ub;
        for (const auto& w : slots) {
          u.push_back(fields::synthesize(spec, w));
          ub.push_back(fields::synthesize(spec, w.conj()));
        }
        auto r = dedonder::evaluate_system(sys, u);
        auto rb = dedonder::evaluate_system(sys.conjugate(), ub);
        r.equations.insert(r.equations.end(), rb.equations.begin(), rb.equations.end());
        lv = from_residuals(r, nested);
        break;
      }
      case ResidualStudy::Dirac: {
        const auto g = dirac::GammaSet::dirac(p.normalization);
        const Rational& m = p.mass;
        dirac::ExactSpinor psi =
            dirac::plane_wave_spinor({m * Rational(5, 4), m * Rational(3, 4), Rational(0), Rational(0)}, m);
        if (p.off_shell)
          for (auto& c : psi) {
            dirac::ExactField f(4);
            for (const auto& [rate, poly] : c.terms()) {
              auto r = rate;
              r[0] = r[0] * QuadSurd(GaussRational(Rational(11, 10)));
              f.add_term(r, poly);
            }
            c = f;
          }
        const GridSpec spec = unit_box(geometry::axis_names(geometry::Chart::Reduced4d), points);
        auto r = dirac::dirac_residual(dirac::sample_spinor(spec, psi), to_double(m), g);
        for (std::size_t a = 0; a < 4; ++a) nested.add(lv, "component " + std::to_string(a), r.residual[a]);
        break;
      }
    }
    lv.points = points;
    lv.h = 1.0 / static_cast<double>(points[active] - 1);
    out.levels.push_back(std::move(lv));
  }
  for (std::size_t l = 1; l < out.levels.size(); ++l)
    out.orders.push_back(
        observed_order(out.levels[l - 1].max, out.levels[l].max, out.levels[l - 1].h, out.levels[l].h));
  return out;
}

ActionLevel action_level(const std::vector<std::size_t>& points, const std::vector<double>& momentum,
                         std::size_t probes, std::uint64_t seed) {
  if (points.size() != 5 || momentum.size() != 5)
    throw Error(ErrorKind::DimensionMismatch, "action check runs on a 5-D grid with a 5-momentum");
  const geometry::Metric metric = geometry::minkowski5();
  const GridSpec spec = unit_box(geometry::axis_names(geometry::Chart::Cartesian5d), points);
  PlaneWaveMode mode;
  for (double v : momentum) mode.momentum.push_back(v);
  const auto solution = dedonder::plane_wave_section(spec, PlaneWaveSum{{mode}}, metric);
  const auto random = dedonder::random_section(spec, metric, seed + 1);
  const auto g = dedonder::schwinger_weiss_gradient(solution, metric, probes, seed);
  const auto gr = dedonder::schwinger_weiss_gradient(random, metric, probes, seed);
  ActionLevel out;
  out.points = points;
  double h = 1.0;
  for (std::size_t n : points) h = std::min(h, 1.0 / static_cast<double>(n - 1));
  out.h = h;
  out.gradient_max = g.max_abs;
  out.random_gradient_max = gr.max_abs;
  out.contrast = g.max_abs > 0.0 ? gr.max_abs / g.max_abs : std::numeric_limits<double>::infinity();
  out.literal_max_deviation = std::max(g.literal_max_deviation, gr.literal_max_deviation);
  for (const auto& e : dedonder::ddw_residuals(solution, metric).equations)
    out.per_equation.emplace_back(e.name, e.report.norms.max);
  return out;
}

namespace {

GridSpec periodic_line(std::size_t n) {
  GridSpec s;
  s.axis_names = {"x1"};
  s.lower = {0.0};
  s.upper = {2.0 * std::numbers::pi};
  s.points = {n};
  s.periodic = {true};
  s.validate();
  return s;
}

cplx project(const GridField& f, int k) {
  cplx sum = 0.0;
  const auto& s = f.spec();
  for (std::size_t i = 0; i < f.size(); ++i) sum += std::exp(cplx(0.0, -k * s.coordinate(0, i))) * f[i];
  return sum / static_cast<double>(f.size());
}

void fill_orders(DispersionResult& r) {
  for (std::size_t l = 1; l < r.points.size(); ++l) {
    const double h0 = 1.0 / static_cast<double>(r.points[l - 1]);
    const double h1 = 1.0 / static_cast<double>(r.points[l]);
    r.orders.push_back(observed_order(r.error[l - 1], r.error[l], h0, h1));
  }
}

}  // namespace

DispersionResult kg_dispersion(double m, int k, double nu, const std::vector<std::size_t>& points) {
  DispersionResult r;
  r.target = std::sqrt(static_cast<double>(k * k) + m * m);
  for (std::size_t n : points) {
    solver::EvolutionProblem p;
    p.kind = solver::Kind::KleinGordon;
    p.mass = m;
    p.mass_term = m * m;
    p.spatial_spec = periodic_line(n);
    p.dt = nu * p.spatial_spec.spacing(0);
    p.initial = GridField::from_function(p.spatial_spec, [&](const std::vector<double>& x) {
      return std::exp(cplx(0.0, k * x[0]));
    });
    p.initial_velocity = cplx(0.0, -r.target) * p.initial;
    // The leapfrog recurrence c+ + c- = 2 cos(omega_h dt) c holds exactly for the mode.
    solver::KgState s = solver::kg_initial_state(p);
    std::vector<cplx> c{project(s.previous, k), project(s.current, k)};
    for (int step = 0; step < 16; ++step) {
      s = solver::step_kg(p, s);
      c.push_back(project(s.current, k));
    }
    double num = 0.0, den = 0.0;
    for (std::size_t i = 1; i + 1 < c.size(); ++i) {
      num += std::real((c[i + 1] + c[i - 1]) * std::conj(c[i]));
      den += 2.0 * std::norm(c[i]);
    }
    const double omega_h = std::acos(num / den) / p.dt;
    r.points.push_back(n);
    r.error.push_back(std::abs(omega_h - r.target));
  }
  fill_orders(r);
  return r;
}

DispersionResult se_dispersion(double m, int k, double mu, const std::vector<std::size_t>& points) {
  DispersionResult r;
  r.target = static_cast<double>(k * k) / (2.0 * m);
  for (std::size_t n : points) {
    solver::EvolutionProblem p;
    p.kind = solver::Kind::Schroedinger;
    p.mass = m;
    p.se_coefficient = 2.0;
    p.spatial_spec = periodic_line(n);
    const double h = p.spatial_spec.spacing(0);
    p.dt = mu * m * h * h;
    p.initial = GridField::from_function(p.spatial_spec, [&](const std::vector<double>& x) {
      return std::exp(cplx(0.0, k * x[0]));
    });
    p.validate();
    GridField psi = p.initial;
    cplx acc = 0.0;
    cplx prev = project(psi, k);
    for (int step = 0; step < 4; ++step) {
      psi = solver::step_se(p, psi).psi;
      const cplx cur = project(psi, k);
      acc += cur * std::conj(prev);
      prev = cur;
    }
    const double omega_h = -std::arg(acc) / p.dt;
    r.points.push_back(n);
    r.error.push_back(std::abs(omega_h - r.target));
  }
  fill_orders(r);
  return r;
}

}  // namespace unfold::studies
