#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "commands.hpp"
#include "unfold/dirac.hpp"
#include "unfold/json_io.hpp"
#include "unfold/oracle.hpp"
#include "unfold/solver.hpp"
#include "unfold/studies.hpp"
#include "unfold/symbol.hpp"

namespace unfold::cli {

namespace {

using io::Json;

Rational positive_mass(const std::string& text) {
  Rational m;
  try {
    m = parse_rational(text);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  if (m <= 0) throw ConfigError("mass must be positive");
  return m;
}

template <class T, class Parse>
std::vector<T> choices(const std::string& value, const std::vector<std::string>& all, Parse parse, const char* what) {
  std::vector<T> out;
  if (value == "all") {
    for (const auto& v : all) out.push_back(parse(v));
    return out;
  }
  if (std::find(all.begin(), all.end(), value) == all.end())
    throw ConfigError(std::string("unknown ") + what + " '" + value + "'");
  out.push_back(parse(value));
  return out;
}

template <class T, class Parse>
T one_of(const std::string& value, const std::vector<std::string>& all, Parse parse, const char* what) {
  if (std::find(all.begin(), all.end(), value) == all.end())
    throw ConfigError(std::string("unknown ") + what + " '" + value + "'");
  return parse(value);
}

std::size_t axis_index(geometry::Chart chart, const std::string& name) {
  const auto names = geometry::axis_names(chart);
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end())
    throw ConfigError("unknown axis '" + name + "' on " + std::string(geometry::chart_name(chart)));
  return static_cast<std::size_t>(it - names.begin());
}

oracle::ReductionAnsatz along(oracle::ReductionAnsatz a, std::size_t axis, const std::vector<std::string>& names) {
  if (axis == a.direction_axis) return a;
  a.direction_axis = axis;
  a.reduced_axes.clear();
  for (std::size_t k = 0; k < names.size(); ++k)
    if (k != axis) a.reduced_axes.push_back(k);
  a.label += " along " + names[axis];
  return a;
}

std::string pad(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s;
}

std::string jsonl(const std::vector<Json>& lines) {
  std::string out;
  for (const auto& l : lines) out += l.dump() + "\n";
  return out;
}

const std::vector<std::string> kOrientations{"paper", "oscillatory"};
const std::vector<std::string> kConventions{"prose", "eq6-exact"};

}  // namespace

Outcome run_certify(const CertifyConfig& c) {
  const Rational m = positive_mass(c.mass);
  const auto kinds = choices<std::string>(c.ansatz, {"kg", "se", "dirac"}, [](const std::string& s) { return s; },
                                          "ansatz");
  const auto orientations = choices<oracle::Orientation>(c.orientation, kOrientations, oracle::parse_orientation,
                                                         "orientation");
  const auto conventions = choices<geometry::LightconeConvention>(c.convention, kConventions,
                                                                  geometry::parse_convention, "convention");
  const auto norms = choices<dirac::Normalization>(c.normalization, {"standard", "paper"},
                                                   dirac::parse_normalization, "normalization");
  const auto dconvs = choices<dirac::EightConvention>(c.dirac_convention, {"printed", "laplace-beltrami"},
                                                      dirac::parse_eight_convention, "dirac convention");
  const std::size_t kg_axis = axis_index(geometry::Chart::Cartesian5d, c.kg_axis);
  const std::size_t se_axis = axis_index(geometry::Chart::Lightcone5d, c.se_axis);
  if (c.truncation < 2 || c.truncation > 6) throw ConfigError("truncation must be between 2 and 6");

  Outcome out;
  std::string table = pad("certificate", 44) + pad("winner", 28) + pad("factor", 10) + "verdict\n";
  bool all_ok = true;
  auto row = [&](const std::string& file, const std::string& winner, const std::string& factor, bool verdict) {
    table += pad(file, 44) + pad(winner.empty() ? "-" : winner, 28) + pad(factor.empty() ? "-" : factor, 10) +
             (verdict ? "true" : "false") + "\n";
    all_ok = all_ok && verdict;
  };

  for (const auto& kind : kinds) {
    if (kind == "kg") {
      const auto metric = geometry::minkowski5();
      out.files.emplace_back("metric-cartesian-5d.json", io::metric_to_json(metric).dump(2) + "\n");
      for (auto o : orientations) {
        auto a = along(oracle::kg_ansatz(m, o), kg_axis, geometry::axis_names(geometry::Chart::Cartesian5d));
        auto cert = oracle::certify_reduction(metric, a, oracle::kg_candidates(m));
        const std::string file = "certificate-kg-" + std::string(oracle::orientation_name(o)) + ".json";
        out.files.emplace_back(file, io::certificate_to_json(cert).dump(2) + "\n");
        row(file, cert.winner, cert.winner.empty() ? "" : to_string(cert.winner_factor), cert.verdict);
      }
    } else if (kind == "se") {
      for (auto conv : conventions) {
        const auto metric = geometry::lightcone5(conv);
        const std::string cname(geometry::convention_name(conv));
        out.files.emplace_back("metric-lightcone-5d-" + cname + ".json", io::metric_to_json(metric).dump(2) + "\n");
        for (auto o : orientations) {
          auto a = along(oracle::se_ansatz(m, o), se_axis, geometry::axis_names(geometry::Chart::Lightcone5d));
          auto cert = oracle::certify_reduction(metric, a, oracle::se_candidates(m));
          const std::string file = "certificate-se-" + std::string(oracle::orientation_name(o)) + "-" + cname + ".json";
          out.files.emplace_back(file, io::certificate_to_json(cert).dump(2) + "\n");
          row(file, cert.winner, cert.winner.empty() ? "" : to_string(cert.winner_factor), cert.verdict);
        }
      }
    } else {
      const auto psi = dirac::plane_wave_spinor({m * Rational(5, 4), m * Rational(3, 4), Rational(0), Rational(0)}, m);
      for (auto n : norms) {
        const auto g = dirac::GammaSet::dirac(n);
        const std::string nname(dirac::normalization_name(n));
        out.files.emplace_back("gamma-" + nname + ".json", io::gamma_to_json(g).dump(2) + "\n");
        for (auto dc : dconvs) {
          auto cert = dirac::reduce_to_dirac(psi, m, g, dc, c.truncation);
          const std::string file =
              "certificate-dirac-" + nname + "-" + std::string(dirac::eight_convention_name(dc)) + ".json";
          out.files.emplace_back(file, io::dirac_certificate_to_json(cert).dump(2) + "\n");
          row(file, cert.degree0_matches ? "(i dslash - m)" : "", cert.degree0_matches ? to_string(cert.degree0_factor) : "",
              cert.verdict);
        }
      }
    }
  }
  out.summary = table;
  out.exit_code = all_ok ? 0 : 2;
  return out;
}

Outcome run_residual(const ResidualConfig& c) {
  studies::ResidualParams p;
  try {
    p.study = studies::parse_study(c.study);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  if (c.system != "derived" && c.system != "printed") throw ConfigError("unknown system '" + c.system + "'");
  p.printed_system = c.system == "printed";
  p.mass = positive_mass(c.mass);
  p.orientation = one_of<oracle::Orientation>(c.orientation, kOrientations, oracle::parse_orientation, "orientation");
  p.convention = one_of<geometry::LightconeConvention>(c.convention, kConventions, geometry::parse_convention,
                                                       "convention");
  p.normalization = one_of<dirac::Normalization>(c.normalization, {"standard", "paper"}, dirac::parse_normalization,
                                                 "normalization");
  if (c.levels < 1 || c.levels > 4) throw ConfigError("levels must be between 1 and 4");
  p.levels = c.levels;
  p.wavenumber = c.wavenumber;
  p.off_shell = c.off_shell;
  p.base_grid = c.grid;
  if (!p.base_grid.empty()) {
    if (p.base_grid.size() != studies::default_grid(p.study).size())
      throw ConfigError("grid needs " + std::to_string(studies::default_grid(p.study).size()) + " entries");
    bool any = false;
    for (std::size_t n : p.base_grid) {
      if (n < 5) throw ConfigError("every axis needs at least 5 points");
      any = any || n > 5;
    }
    if (!any) throw ConfigError("no axis has more than 5 points to refine");
  }

  const auto r = studies::run_residual_study(p);
  std::vector<Json> lines;
  for (std::size_t l = 0; l < r.levels.size(); ++l) {
    const auto& lv = r.levels[l];
    Json j;
    j["record"] = "level";
    j["study"] = r.name;
    j["level"] = l;
    j["points"] = lv.points;
    j["h"] = lv.h;
    j["residual_max"] = lv.max;
    j["residual_l2"] = lv.l2;
    if (!lv.per_equation.empty()) {
      Json eq;
      for (const auto& [name, v] : lv.per_equation) eq[name] = v;
      j["per_equation_norms"] = eq;
    }
    lines.push_back(j);
  }
  for (std::size_t l = 0; l < r.orders.size(); ++l) {
    Json j;
    j["record"] = "order";
    j["study"] = r.name;
    j["from_level"] = l;
    j["to_level"] = l + 1;
    j["order"] = r.orders[l];
    lines.push_back(j);
  }
  Outcome out;
  Json s;
  s["record"] = "summary";
  s["study"] = r.name;
  s["convention"] = c.convention;
  s["orientation"] = c.orientation;
  s["levels"] = r.levels.size();
  bool pass = true;
  if (r.levels.size() < 2) {
    Json w;
    w["record"] = "warning";
    w["message"] = "single level: no convergence order";
    lines.push_back(w);
  } else {
    pass = r.orders_within(1.9, 2.1);
  }
  s["pass"] = pass;
  lines.push_back(s);
  out.files.emplace_back("residual-" + r.name + ".jsonl", jsonl(lines));
  std::string summary = "study " + r.name + "\n";
  for (const auto& lv : r.levels) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "  h = %.6g  max residual = %.6e\n", lv.h, lv.max);
    summary += buf;
  }
  for (double o : r.orders) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "  order %.4f\n", o);
    summary += buf;
  }
  summary += pass ? "pass\n" : "FAIL\n";
  out.summary = summary;
  out.exit_code = pass ? 0 : 2;
  return out;
}

Outcome run_shell(const ShellConfig& c) {
  const Rational m = positive_mass(c.mass);
  const auto conv = one_of<geometry::LightconeConvention>(c.convention, kConventions, geometry::parse_convention,
                                                          "convention");
  if (c.shell != "spacelike" && c.shell != "lightlike") throw ConfigError("unknown shell '" + c.shell + "'");
  if (c.samples == 0) throw ConfigError("samples must be positive");
  if (!(c.bound > 0.0)) throw ConfigError("bound must be positive");
  symbol::ShellSpec spec = c.shell == "spacelike" ? symbol::spacelike_shell(m) : symbol::lightlike_shell(m, conv);
  spec.momentum_bound = c.bound;

  const auto reduced = symbol::reduce_shell(spec);
  const auto rel = reduced.polynomial();
  const auto points = symbol::sample_shell(spec, c.samples, c.seed);
  double worst = 0.0;
  for (const auto& p : points) {
    double scale = 1.0;
    for (double v : p) scale = std::max(scale, v * v);
    worst = std::max(worst, std::abs(rel.evaluate(p)) / scale);
  }
  Outcome out;
  out.files.emplace_back("shell-" + c.shell + ".csv", io::shell_csv(spec, points));
  Json j;
  j["shell"] = c.shell;
  j["convention"] = spec.convention;
  j["mass"] = to_string(m);
  j["samples"] = points.size();
  j["seed"] = c.seed;
  j["reduced_relation"] = reduced.to_string(spec.momentum_names);
  j["max_relative_relation_error"] = worst;
  const bool pass = worst <= 1e-12;
  j["pass"] = pass;
  out.files.emplace_back("shell-" + c.shell + ".json", j.dump(2) + "\n");
  out.summary = "shell " + c.shell + ": " + reduced.to_string(spec.momentum_names) + "\n  " +
                std::to_string(points.size()) + " samples, max relative error " + io::format_double(worst) + "\n";
  out.exit_code = pass ? 0 : 2;
  return out;
}

Outcome run_evolve(const EvolveConfig& c) {
  const Rational m = positive_mass(c.mass);
  if (c.kind != "se" && c.kind != "kg") throw ConfigError("unknown kind '" + c.kind + "'");
  const auto conv = one_of<geometry::LightconeConvention>(c.convention, kConventions, geometry::parse_convention,
                                                          "convention");
  const auto orient = one_of<oracle::Orientation>(c.orientation, kOrientations, oracle::parse_orientation,
                                                  "orientation");
  if (c.grid.empty() || c.grid.size() > 3) throw ConfigError("grid needs 1 to 3 axes");
  for (std::size_t n : c.grid)
    if (n < 4) throw ConfigError("every axis needs at least 4 points");
  if (!(c.length > 0.0)) throw ConfigError("length must be positive");
  if (!(c.cfl_fraction > 0.0 && c.cfl_fraction <= 1.0)) throw ConfigError("cfl fraction must be in (0, 1]");
  if (c.modes < 1) throw ConfigError("modes must be positive");

  solver::EvolutionProblem p;
  p.kind = c.kind == "se" ? solver::Kind::Schroedinger : solver::Kind::KleinGordon;
  p.mass = to_double(m);
  p.steps = c.steps;
  fields::GridSpec spec;
  for (std::size_t a = 0; a < c.grid.size(); ++a) {
    spec.axis_names.push_back("x" + std::to_string(a + 1));
    spec.lower.push_back(0.0);
    spec.upper.push_back(c.length);
    spec.points.push_back(c.grid[a]);
    spec.periodic.push_back(true);
  }
  p.spatial_spec = spec;
  std::string coefficient_note;
  if (p.kind == solver::Kind::Schroedinger) {
    auto cert = oracle::certify_reduction(geometry::lightcone5(conv), oracle::se_ansatz(m, orient),
                                          oracle::se_candidates(m));
    p.se_coefficient = solver::se_coefficient(cert, m);
    coefficient_note = cert.winner;
  } else {
    auto cert = oracle::certify_reduction(geometry::minkowski5(), oracle::kg_ansatz(m, orient),
                                          oracle::kg_candidates(m));
    p.mass_term = solver::kg_mass_term(cert);
    coefficient_note = cert.winner;
  }

  std::mt19937_64 rng(c.seed);
  std::uniform_int_distribution<int> kdist(-4, 4);
  std::normal_distribution<double> n01(0.0, 1.0);
  struct Mode {
    std::vector<int> k;
    fields::cplx a;
  };
  std::vector<Mode> modes;
  for (int i = 0; i < c.modes; ++i) {
    Mode md;
    for (std::size_t a = 0; a < spec.dim(); ++a) md.k.push_back(kdist(rng));
    const double re = n01(rng);
    const double im = n01(rng);
    md.a = {re, im};
    modes.push_back(md);
  }
  const double two_pi_over_l = 2.0 * 3.141592653589793 / c.length;
  p.initial = fields::GridField::from_function(spec, [&](const std::vector<double>& x) {
    fields::cplx v = 0.0;
    for (const auto& md : modes) {
      double ph = 0.0;
      for (std::size_t a = 0; a < x.size(); ++a) ph += md.k[a] * two_pi_over_l * x[a];
      v += md.a * std::exp(fields::cplx(0.0, ph));
    }
    return v;
  }, "initial");
  p.initial_velocity = fields::GridField(spec, "velocity");
  p.dt = c.cfl_fraction * p.max_stable_dt();

  const auto traj = solver::evolve(p);
  std::vector<Json> lines;
  for (const auto& r : traj.records) {
    Json j;
    j["step"] = r.step;
    j["time"] = r.time;
    j["l2_norm"] = r.l2_norm;
    j["energy"] = r.energy;
    j["max_residual"] = r.max_residual;
    lines.push_back(j);
  }
  const bool se = p.kind == solver::Kind::Schroedinger;
  const double drift = se ? traj.norm_drift : traj.energy_drift;
  // Tolerances per 100 steps.
  const double allowed = (se ? 1e-10 : 1e-6) * std::max(1.0, static_cast<double>(c.steps) / 100.0);
  const bool pass = drift <= allowed;
  Json s;
  s["record"] = "summary";
  s["kind"] = c.kind;
  s["operator"] = coefficient_note;
  s["dt"] = p.dt;
  s["steps"] = c.steps;
  s["growing_mode"] = traj.growing_mode;
  s[se ? "norm_drift" : "energy_drift"] = drift;
  s["pass"] = pass;
  lines.push_back(s);
  Outcome out;
  out.files.emplace_back("trajectory-" + c.kind + ".jsonl", jsonl(lines));
  if (c.dump_final) {
    out.files.emplace_back("final-" + c.kind + ".csv", io::grid_csv(traj.final_field));
    out.files.emplace_back("final-" + c.kind + ".json", io::grid_sidecar(traj.final_field).dump(2) + "\n");
  }
  out.summary = "evolve " + c.kind + " (" + coefficient_note + "): " + std::to_string(c.steps) + " steps, " +
                (se ? "norm" : "energy") + " drift " + io::format_double(drift) +
                (traj.growing_mode ? " [growing mode]" : "") + "\n";
  out.exit_code = pass ? 0 : 2;
  return out;
}

Outcome run_action(const ActionConfig& c) {
  if (c.grid.size() != 5) throw ConfigError("grid needs 5 entries");
  for (std::size_t n : c.grid)
    if (n < 5) throw ConfigError("every axis needs at least 5 points");
  if (c.momentum.size() != 5) throw ConfigError("momentum needs 5 entries");
  if (c.probes == 0) throw ConfigError("probes must be positive");
  if (c.levels < 1 || c.levels > 3) throw ConfigError("levels must be between 1 and 3");
  double shell = c.momentum[0] * c.momentum[0];
  for (std::size_t k = 1; k < 5; ++k) shell -= c.momentum[k] * c.momentum[k];
  if (std::abs(shell) > 1e-12) throw ConfigError("momentum is not null: p0^2 - |p|^2 = " + io::format_double(shell));

  std::vector<studies::ActionLevel> levels;
  for (int l = 0; l < c.levels; ++l) levels.push_back(studies::action_level(studies::refine(c.grid, l), c.momentum,
                                                                            c.probes, c.seed));
  Json j;
  j["convention"] = "minkowski";
  j["chart"] = "cartesian-5d";
  j["resolution"] = levels.front().points;
  Json eq;
  for (const auto& [name, v] : levels.front().per_equation) eq[name] = v;
  j["per_equation_norms"] = eq;
  j["gradient_max"] = levels.front().gradient_max;
  j["random_gradient_max"] = levels.front().random_gradient_max;
  j["contrast_ratio"] = levels.front().contrast;
  j["literal_quotient_max_deviation"] = levels.front().literal_max_deviation;
  bool pass = levels.front().gradient_max <= 1e-6 && levels.front().contrast >= 1e3;
  Json lv = Json::array();
  for (std::size_t l = 0; l < levels.size(); ++l) {
    Json e;
    e["points"] = levels[l].points;
    e["h"] = levels[l].h;
    e["gradient_max"] = levels[l].gradient_max;
    e["random_gradient_max"] = levels[l].random_gradient_max;
    if (l > 0) {
      const double o = studies::observed_order(levels[l - 1].gradient_max, levels[l].gradient_max, levels[l - 1].h,
                                               levels[l].h);
      e["order"] = o;
      pass = pass && o >= 2.0;
    }
    lv.push_back(e);
  }
  j["levels"] = lv;
  j["pass"] = pass;
  Outcome out;
  out.files.emplace_back("action.json", j.dump(2) + "\n");
  out.summary = "action: gradient " + io::format_double(levels.front().gradient_max) + ", random " +
                io::format_double(levels.front().random_gradient_max) + ", contrast " +
                io::format_double(levels.front().contrast) + (pass ? "\npass\n" : "\nFAIL\n");
  out.exit_code = pass ? 0 : 2;
  return out;
}

}  // namespace unfold::cli
