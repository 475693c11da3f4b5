#include "unfold/dirac.hpp"

#include <cmath>

#include "unfold/geometry.hpp"

namespace unfold::dirac {

using fields::GridField;
using fields::GridOperator;
using fields::GridSpec;

std::string_view normalization_name(Normalization n) { return n == Normalization::Standard ? "standard" : "paper"; }

Normalization parse_normalization(std::string_view name) {
  if (name == "standard") return Normalization::Standard;
  if (name == "paper") return Normalization::Paper;
  throw Error(ErrorKind::InvalidArgument, "unknown normalization '" + std::string(name) + "'");
}

std::string_view eight_convention_name(EightConvention c) {
  return c == EightConvention::Printed ? "printed" : "laplace-beltrami";
}

EightConvention parse_eight_convention(std::string_view name) {
  if (name == "printed") return EightConvention::Printed;
  if (name == "laplace-beltrami") return EightConvention::LaplaceBeltrami;
  throw Error(ErrorKind::InvalidArgument, "unknown 8-D convention '" + std::string(name) + "'");
}

namespace {

QuadSurd gauss(int re, int im) { return QuadSurd(GaussRational(Rational(re), Rational(im))); }

const int kEta[4] = {1, -1, -1, -1};

}  // namespace

GammaSet GammaSet::dirac(Normalization n) {
  GammaSet g;
  g.normalization = n;
  // Pauli blocks.
  const QuadSurd sigma[3][2][2] = {
      {{gauss(0, 0), gauss(1, 0)}, {gauss(1, 0), gauss(0, 0)}},
      {{gauss(0, 0), gauss(0, -1)}, {gauss(0, 1), gauss(0, 0)}},
      {{gauss(1, 0), gauss(0, 0)}, {gauss(0, 0), gauss(-1, 0)}},
  };
  g.gamma[0] = SurdMatrix::diagonal({1, 1, -1, -1});
  for (int k = 0; k < 3; ++k) {
    SurdMatrix m(4, 4);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        m(r, 2 + c) = sigma[k][r][c];
        m(2 + r, c) = -sigma[k][r][c];
      }
    g.gamma[k + 1] = m;
  }
  if (n == Normalization::Paper) {
    const QuadSurd inv_sqrt2(GaussRational(0), GaussRational(Rational(1, 2)));
    for (auto& m : g.gamma) m = inv_sqrt2 * m;
  }
  return g;
}

CMatrix GammaSet::numeric(std::size_t mu) const {
  CMatrix out{};
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) out[r][c] = gamma.at(mu)(r, c).to_complex();
  return out;
}

std::vector<AnticommutatorEntry> anticommutator_table(const GammaSet& g) {
  const int scale = g.normalization == Normalization::Standard ? 2 : 1;
  std::vector<AnticommutatorEntry> out;
  for (std::size_t mu = 0; mu < 4; ++mu)
    for (std::size_t nu = 0; nu < 4; ++nu) {
      SurdMatrix a = g.gamma[mu] * g.gamma[nu] + g.gamma[nu] * g.gamma[mu];
      SurdMatrix expected(4, 4);
      if (mu == nu)
        for (std::size_t k = 0; k < 4; ++k) expected(k, k) = QuadSurd(scale * kEta[mu]);
      out.push_back({mu, nu, a == expected});
    }
  return out;
}

CMatrix identity4() {
  CMatrix m{};
  for (std::size_t k = 0; k < 4; ++k) m[k][k] = 1.0;
  return m;
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  CMatrix p{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t k = 0; k < 4; ++k)
      for (std::size_t j = 0; j < 4; ++j) p[i][j] += a[i][k] * b[k][j];
  return p;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) d = std::max(d, std::abs(a[i][j] - b[i][j]));
  return d;
}

namespace {

// M = m (s g0 - xi^k gk).
CMatrix clifford_generator(double s, const std::array<double, 3>& xi, double m, const GammaSet& g) {
  CMatrix out{};
  const double coef[4] = {s, -xi[0], -xi[1], -xi[2]};
  for (std::size_t mu = 0; mu < 4; ++mu) {
    CMatrix gm = g.numeric(mu);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) out[i][j] += m * coef[mu] * gm[i][j];
  }
  return out;
}

}  // namespace

CMatrix clifford_exponential(double s, const std::array<double, 3>& xi, double m, const GammaSet& g) {
  const CMatrix mm = clifford_generator(s, xi, m, g);
  const double q = g.clifford_scale() * m * m * (s * s - xi[0] * xi[0] - xi[1] * xi[1] - xi[2] * xi[2]);
  double c = 0.0;
  double sinc = 0.0;
  if (std::abs(q) < 1e-12) {
    c = 1.0 - q / 2.0 + q * q / 24.0;
    sinc = 1.0 - q / 6.0 + q * q / 120.0;
  } else if (q > 0.0) {
    const double r = std::sqrt(q);
    c = std::cos(r);
    sinc = std::sin(r) / r;
  } else {
    const double r = std::sqrt(-q);
    c = std::cosh(r);
    sinc = std::sinh(r) / r;
  }
  CMatrix e{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) e[i][j] = (i == j ? c : 0.0) + cplx(0.0, sinc) * mm[i][j];
  return e;
}

CMatrix clifford_series(double s, const std::array<double, 3>& xi, double m, const GammaSet& g, int terms) {
  CMatrix im = clifford_generator(s, xi, m, g);
  for (auto& row : im)
    for (auto& v : row) v *= cplx(0.0, 1.0);
  CMatrix sum{};
  CMatrix power = identity4();
  for (int n = 0; n < terms; ++n) {
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) sum[i][j] += power[i][j];
    power = matmul(power, im);
    for (auto& row : power)
      for (auto& v : row) v /= static_cast<double>(n + 1);
  }
  return sum;
}

ExactSpinor plane_wave_spinor(const std::vector<Rational>& p, const Rational& m) {
  if (p.size() != 4) throw Error(ErrorKind::DimensionMismatch, "spinor momentum needs 4 components");
  if (p[0] * p[0] - p[1] * p[1] - p[2] * p[2] - p[3] * p[3] != m * m)
    throw Error(ErrorKind::OffShell, "p^2 differs from m^2");
  const GammaSet g = GammaSet::dirac(Normalization::Standard);
  // pslash = g^0 p^0 - g^k p^k.
  SurdMatrix a = SurdMatrix::identity(4);
  a = QuadSurd(GaussRational(m)) * a;
  for (std::size_t mu = 0; mu < 4; ++mu) a = a + QuadSurd(GaussRational(Rational(kEta[mu]) * p[mu])) * g.gamma[mu];
  std::size_t col = 0;
  for (; col < 4; ++col) {
    bool nonzero = false;
    for (std::size_t r = 0; r < 4; ++r) nonzero = nonzero || !a(r, col).is_zero();
    if (nonzero) break;
  }
  if (col == 4) throw Error(ErrorKind::DegenerateConstraint, "pslash + m vanishes");
  ExactField::Rate rate(4);
  rate[0] = QuadSurd(GaussRational(0, -p[0]));
  for (std::size_t k = 1; k < 4; ++k) rate[k] = QuadSurd(GaussRational(0, p[k]));
  ExactSpinor psi;
  for (std::size_t r = 0; r < 4; ++r) psi[r] = ExactField::term(rate, Polynomial<QuadSurd>::constant(4, a(r, col)));
  return psi;
}

ExactSpinor constant_spinor(const std::array<GaussRational, 4>& value) {
  ExactSpinor psi;
  for (std::size_t r = 0; r < 4; ++r) psi[r] = ExactField::constant(4, QuadSurd(value[r]));
  return psi;
}

ExactSpinor dirac_operator(const ExactSpinor& psi, const Rational& m, const GammaSet& g, int sign) {
  const std::size_t dim = psi[0].dim();
  if (dim < 4) throw Error(ErrorKind::DimensionMismatch, "spinor needs 4 coordinates");
  const QuadSurd i(GaussRational::i());
  ExactSpinor out;
  for (std::size_t a = 0; a < 4; ++a) out[a] = QuadSurd(GaussRational(Rational(sign) * m)) * psi[a];
  for (std::size_t mu = 0; mu < 4; ++mu)
    for (std::size_t b = 0; b < 4; ++b) {
      ExactField d = psi[b].partial(mu);
      for (std::size_t a = 0; a < 4; ++a)
        if (!g.gamma[mu](a, b).is_zero()) out[a] += (i * g.gamma[mu](a, b)) * d;
    }
  return out;
}

namespace {

ExactField box_plus_mass(const ExactField& f, const Rational& m) {
  ExactField out = QuadSurd(GaussRational(m * m)) * f;
  for (std::size_t mu = 0; mu < 4; ++mu) {
    ExactField d2 = f.partial(mu).partial(mu);
    if (mu == 0)
      out += d2;
    else
      out -= d2;
  }
  return out;
}

std::vector<ExactSpinor> squared_probes() {
  std::vector<ExactSpinor> out;
  const Rational rates[3] = {Rational(1, 2), Rational(-1, 3), Rational(2)};
  for (std::size_t k = 0; k < 3; ++k) {
    ExactSpinor psi;
    for (std::size_t a = 0; a < 4; ++a) {
      Exponents e(4, 0);
      e[a] = 2;
      e[(a + k + 1) % 4] += 1;
      Polynomial<QuadSurd> poly = Polynomial<QuadSurd>::monomial(e, gauss(static_cast<int>(a) + 1, static_cast<int>(k)));
      ExactField::Rate r(4, QuadSurd(0));
      r[(a + k) % 4] = QuadSurd(GaussRational(rates[k], Rational(static_cast<int>(a))));
      Polynomial<QuadSurd> lin = Polynomial<QuadSurd>::variable(4, k) + Polynomial<QuadSurd>::constant(4, QuadSurd(1));
      psi[a] = ExactField(poly) + ExactField::term(r, lin);
    }
    out.push_back(std::move(psi));
  }
  return out;
}

using ExactMatrix = std::array<std::array<ExactField, 4>, 4>;

ExactMatrix exact_product(const ExactMatrix& a, const ExactMatrix& b, std::size_t dim) {
  ExactMatrix p;
  for (auto& row : p) row.fill(ExactField(dim));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t k = 0; k < 4; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < 4; ++j)
        if (!b[k][j].is_zero()) p[i][j] += a[i][k] * b[k][j];
    }
  return p;
}

std::vector<std::string> spinor_strings(const ExactSpinor& psi, const std::vector<std::string>& names,
                                        const std::string& prefix) {
  std::vector<std::string> out;
  for (std::size_t a = 0; a < 4; ++a)
    for (const auto& t : psi[a].term_strings(names)) out.push_back(prefix + "[" + std::to_string(a) + "] " + t);
  return out;
}

bool spinor_zero(const ExactSpinor& s) {
  for (const auto& f : s)
    if (!f.is_zero()) return false;
  return true;
}

// kappa with r = kappa * d, when one exists.
bool proportional(const ExactSpinor& r, const ExactSpinor& d, QuadSurd* kappa) {
  bool found = false;
  QuadSurd k;
  for (std::size_t a = 0; a < 4 && !found; ++a)
    for (const auto& [rate, poly] : d[a].terms()) {
      const auto& [e, c] = *poly.terms().begin();
      k = r[a].coefficient(rate).coefficient(e) / c;
      found = true;
      break;
    }
  if (!found) return false;
  for (std::size_t a = 0; a < 4; ++a)
    if (!(r[a] == k * d[a])) return false;
  *kappa = k;
  return true;
}

}  // namespace

bool dirac_squared_holds(const GammaSet& g, const Rational& m) {
  for (const auto& psi : squared_probes()) {
    ExactSpinor l = dirac_operator(dirac_operator(psi, m, g, +1), m, g, -1);
    for (std::size_t a = 0; a < 4; ++a)
      if (!(l[a] + box_plus_mass(psi[a], m)).is_zero()) return false;
  }
  return true;
}

DiracCertificate reduce_to_dirac(const ExactSpinor& psi, const Rational& m, const GammaSet& g,
                                 EightConvention convention, int order) {
  if (order < 2) throw Error(ErrorKind::InvalidArgument, "truncation order must be at least 2");
  for (const auto& f : psi)
    if (f.dim() != 4) throw Error(ErrorKind::DimensionMismatch, "spinor components must live on 4 coordinates");
  constexpr std::size_t dim = 8;
  const std::vector<std::size_t> z_axes{4, 5, 6, 7};
  const auto names = geometry::axis_names(geometry::Chart::Doubled8dLightcone);
  const std::vector<std::string> names4(names.begin(), names.begin() + 4);

  DiracCertificate cert;
  cert.normalization = std::string(normalization_name(g.normalization));
  cert.convention = std::string(eight_convention_name(convention));
  cert.truncation_order = order;
  cert.lhs_description = convention == EightConvention::Printed
                             ? "(-d_x0 d_s + sum_k d_xk d_xik + m^2)(E psi)"
                             : "(g^{mu nu} d_mu d_nu + m^2)(E psi) on doubled-8d-lightcone";
  cert.rhs_description = "E * kappa * (i g^mu d_mu - m) psi, E = exp(i m (s g0 - xi^k gk))";

  // iM with M = m (s g0 - xi^k gk), as exp-poly matrix entries.
  const QuadSurd i(GaussRational::i());
  ExactMatrix im;
  for (auto& row : im) row.fill(ExactField(dim));
  for (std::size_t mu = 0; mu < 4; ++mu) {
    Polynomial<QuadSurd> z = Polynomial<QuadSurd>::variable(dim, 4 + mu);
    const QuadSurd sign(mu == 0 ? 1 : -1);
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = 0; b < 4; ++b)
        if (!g.gamma[mu](a, b).is_zero())
          im[a][b] += ExactField((i * QuadSurd(GaussRational(m)) * sign * g.gamma[mu](a, b)) * z);
  }
  ExactMatrix e;
  ExactMatrix power;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      e[a][b] = a == b ? ExactField::constant(dim, QuadSurd(1)) : ExactField(dim);
      power[a][b] = e[a][b];
    }
  Rational factorial = 1;
  for (int n = 1; n <= order; ++n) {
    power = exact_product(power, im, dim);
    factorial *= n;
    const QuadSurd w(GaussRational(Rational(1) / factorial));
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = 0; b < 4; ++b) e[a][b] += w * power[a][b];
  }
  auto times_e = [&](const ExactSpinor& v) {
    ExactSpinor out;
    for (std::size_t a = 0; a < 4; ++a) {
      out[a] = ExactField(dim);
      for (std::size_t b = 0; b < 4; ++b) out[a] += e[a][b] * v[b];
    }
    return out;
  };
  auto embed = [&](const ExactSpinor& v) {
    ExactSpinor out;
    for (std::size_t a = 0; a < 4; ++a) out[a] = v[a].embed(dim, {0, 1, 2, 3});
    return out;
  };

  const ExactSpinor phi = times_e(embed(psi));
  const QuadSurd m2(GaussRational(m * m));
  const RationalMatrix ginv = geometry::doubled8_lightcone().inverse();
  ExactSpinor r;
  for (std::size_t a = 0; a < 4; ++a) {
    ExactField acc = m2 * phi[a];
    if (convention == EightConvention::Printed) {
      acc -= phi[a].partial(0).partial(4);
      for (std::size_t k = 1; k < 4; ++k) acc += phi[a].partial(k).partial(4 + k);
    } else {
      for (std::size_t mu = 0; mu < dim; ++mu)
        for (std::size_t nu = 0; nu < dim; ++nu)
          if (ginv(mu, nu) != 0) acc += QuadSurd(GaussRational(ginv(mu, nu))) * phi[a].partial(mu).partial(nu);
    }
    r[a] = acc.truncate(z_axes, order - 1);
  }

  const ExactSpinor d4 = dirac_operator(psi, m, g, -1);
  cert.residual_terms = spinor_strings(d4, names4, "(i dslash - m) psi");
  const ExactSpinor d = embed(d4);
  ExactSpinor r0;
  for (std::size_t a = 0; a < 4; ++a) r0[a] = r[a].graded_part(z_axes, 0);

  QuadSurd kappa(GaussRational(-m));
  if (spinor_zero(d)) {
    cert.degree0_matches = spinor_zero(r0);
    cert.convention_notes.push_back("degree-0 remainder and (i dslash - m) psi both vanish; kappa = -m assumed");
  } else {
    QuadSurd k;
    cert.degree0_matches = proportional(r0, d, &k);
    if (cert.degree0_matches) kappa = k;
  }
  cert.degree0_factor = kappa;

  ExactSpinor kd;
  for (std::size_t a = 0; a < 4; ++a) kd[a] = kappa * d[a];
  const ExactSpinor t = times_e(kd);
  ExactSpinor diff;
  for (std::size_t a = 0; a < 4; ++a) diff[a] = (r[a] - t[a]).truncate(z_axes, order - 1);
  for (int deg = 0; deg < order; ++deg) {
    ExactSpinor part;
    for (std::size_t a = 0; a < 4; ++a) part[a] = diff[a].graded_part(z_axes, deg);
    auto s = spinor_strings(part, names, "z-degree " + std::to_string(deg) + " component");
    cert.obstruction_terms.insert(cert.obstruction_terms.end(), s.begin(), s.end());
  }

  cert.dirac_squared = dirac_squared_holds(g, m);
  cert.verdict = cert.degree0_matches && cert.obstruction_terms.empty() && cert.residual_terms.empty();

  cert.convention_notes.push_back(std::string("gamma normalization ") + cert.normalization +
                                  (g.normalization == Normalization::Standard ? ": {g_mu, g_nu} = 2 eta_mu_nu"
                                                                              : ": {g_mu, g_nu} = eta_mu_nu"));
  cert.convention_notes.push_back("E truncated at order " + std::to_string(order) + "; z-degrees 0.." +
                                  std::to_string(order - 1) + " compared");
  cert.convention_notes.push_back(cert.degree0_matches
                                      ? "degree-0 remainder = " + to_string(kappa) + " * (i dslash - m) psi"
                                      : "degree-0 remainder is not a multiple of (i dslash - m) psi");
  cert.convention_notes.push_back(cert.dirac_squared ? "(i dslash - m)(i dslash + m) = -(box + m^2): holds"
                                                     : "(i dslash - m)(i dslash + m) = -(box + m^2): fails");
  if (!cert.obstruction_terms.empty())
    cert.convention_notes.push_back("E does not factor out of the 8-D operator: " +
                                    std::to_string(cert.obstruction_terms.size()) + " remainder terms");
  return cert;
}

void require_factorization(const DiracCertificate& cert) {
  if (cert.obstruction_terms.empty() && cert.degree0_matches) return;
  std::string msg = "Clifford exponential does not factor";
  if (!cert.obstruction_terms.empty()) msg += "; first remainder term " + cert.obstruction_terms.front();
  throw Error(ErrorKind::NonCommutingRemainder, msg);
}

SpinorGrid sample_spinor(const GridSpec& spec, const ExactSpinor& psi) {
  if (spec.dim() != 4) throw Error(ErrorKind::DimensionMismatch, "spinor grid must be 4-dimensional");
  SpinorGrid out;
  for (std::size_t a = 0; a < 4; ++a)
    out[a] = GridField::from_function(
        spec, [&](const std::vector<double>& x) { return psi[a].evaluate(std::span<const double>(x)); },
        "psi" + std::to_string(a));
  return out;
}

namespace {

// (i g^mu D_mu + sign m) psi.
SpinorGrid apply_dirac(const SpinorGrid& psi, double m, const GammaSet& g, double sign) {
  const GridSpec& spec = psi[0].spec();
  if (spec.dim() != 4) throw Error(ErrorKind::DimensionMismatch, "spinor grid must be 4-dimensional");
  for (std::size_t a = 0; a < 4; ++a) {
    if (!(psi[a].spec() == spec)) throw Error(ErrorKind::DimensionMismatch, "spinor components on different grids");
    if (spec.points[a] < 4)
      throw Error(ErrorKind::GridTooSmall, "dirac residual needs 4 points on axis " + spec.axis_names[a]);
  }
  std::array<CMatrix, 4> gm;
  for (std::size_t mu = 0; mu < 4; ++mu) gm[mu] = g.numeric(mu);
  SpinorGrid out;
  for (std::size_t a = 0; a < 4; ++a) {
    out[a] = GridField(spec, "dirac" + std::to_string(a));
    for (std::size_t b = 0; b < 4; ++b) {
      GridOperator op = GridOperator::zero(4);
      bool used = a == b;
      for (std::size_t mu = 0; mu < 4; ++mu) {
        op.first[mu] = cplx(0.0, 1.0) * gm[mu][a][b];
        used = used || gm[mu][a][b] != 0.0;
      }
      if (a == b) op.zeroth = sign * m;
      if (used) out[a] += fields::apply_grid_operator(psi[b], op);
    }
  }
  return out;
}

}  // namespace

DiracResidual dirac_residual(const SpinorGrid& psi, double m, const GammaSet& g) {
  DiracResidual r{apply_dirac(psi, m, g, -1.0), {}};
  double sum = 0.0;
  for (const auto& c : r.residual) {
    fields::Norms n = fields::interior_norms(c);
    r.norms.max = std::max(r.norms.max, n.max);
    r.norms.nodes = n.nodes;
    sum += n.l2 * n.l2;
  }
  r.norms.l2 = std::sqrt(sum);
  return r;
}

double clifford_square_gap(const SpinorGrid& psi, double m, const GammaSet& g) {
  const SpinorGrid sq = apply_dirac(apply_dirac(psi, m, g, +1.0), m, g, -1.0);
  const GridSpec& spec = psi[0].spec();
  GridOperator box = GridOperator::zero(4);
  box.second[0][0] = -1.0;
  for (std::size_t k = 1; k < 4; ++k) box.second[k][k] = 1.0;
  box.zeroth = -m * m;
  double gap = 0.0;
  for (std::size_t a = 0; a < 4; ++a) {
    GridField ref = fields::apply_grid_operator(psi[a], box);
    for (std::size_t i = 0; i < spec.size(); ++i) {
      auto idx = spec.unravel(i);
      bool inside = true;
      for (std::size_t ax = 0; ax < 4; ++ax)
        if (!spec.periodic[ax] && (idx[ax] < 2 || idx[ax] + 2 >= spec.points[ax])) inside = false;
      if (inside) gap = std::max(gap, std::abs(sq[a][i] - ref[i]));
    }
  }
  return gap;
}

}  // namespace unfold::dirac
