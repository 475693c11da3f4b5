// Acceptance checks, one line per criterion:
//   acceptance <criterion|all> <path to unfold>
// Exit status 0 when every selected criterion passes.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "unfold/dedonder.hpp"
#include "unfold/dirac.hpp"
#include "unfold/solver.hpp"
#include "unfold/studies.hpp"
#include "unfold/symbol.hpp"

namespace fs = std::filesystem;
using namespace unfold;
using Json = nlohmann::json;

namespace {

std::string g_cli;
const fs::path kWork = fs::temp_directory_path() / "unfold-acceptance";

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

int run_cli(const std::string& args) {
  const std::string cmd = g_cli + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Json read_json(const fs::path& p) { return Json::parse(slurp(p)); }

// Exact certificates for both scalar reductions, through the command line.
Outcome c1() {
  const fs::path dir = kWork / "c1";
  fs::remove_all(dir);
  const int a = run_cli("certify --ansatz kg --orientation all --out " + dir.string());
  const int b = run_cli("certify --ansatz se --convention all --out " + dir.string());
  Outcome o;
  if (a != 0 || b != 0) {
    o.detail = "certify exit codes " + std::to_string(a) + ", " + std::to_string(b);
    return o;
  }
  struct Want {
    const char* file;
    const char* winner;
    const char* factor;
  };
  const Want wants[] = {
      {"certificate-kg-paper.json", "d0^2 - lap - m^2", "1"},
      {"certificate-kg-oscillatory.json", "d0^2 - lap + m^2", "1"},
      {"certificate-se-paper-prose.json", "2 i m dt + lap", "-1"},
      {"certificate-se-paper-eq6-exact.json", "4 i m dt + lap", "-1"},
  };
  o.pass = true;
  for (const auto& w : wants) {
    const Json j = read_json(dir / w.file);
    const bool ok = j["verdict"] == true && j["winner"] == w.winner && j["winner_factor"] == w.factor &&
                    j["residuals"].empty();
    o.pass = o.pass && ok;
    o.detail += std::string(o.detail.empty() ? "" : "; ") + w.file + " -> " + j["winner"].get<std::string>() +
                " x" + j["winner_factor"].get<std::string>() + (ok ? "" : " (unexpected)");
  }
  return o;
}

Outcome c2() {
  Outcome o{true, ""};
  double worst = 0.0;
  auto check = [&](const symbol::ShellSpec& s, const std::string& name) {
    Polynomial<Rational> sub = symbol::symbol_polynomial(s.symbol_coeffs);
    for (const auto& c : s.constraints) sub = sub.substitute(c.axis, c.value);
    const bool exact = symbol::reduce_shell(s).polynomial() == sub;
    double err = 0.0;
    for (const auto& p : symbol::sample_shell(s, 10000, 7)) {
      // The reduced relations: p0^2 - |p|^2 = m^2 and 2 m p_t = |p|^2.
      const double q2 = p[1] * p[1] + p[2] * p[2] + p[3] * p[3];
      double r = 0.0, scale = 1.0 + q2;
      if (name == "spacelike") {
        r = p[0] * p[0] - q2 - p[4] * p[4];
        scale += p[0] * p[0] + p[4] * p[4];
      } else {
        r = 2.0 * p[4] * p[0] - q2;
        scale += std::abs(2.0 * p[4] * p[0]);
      }
      err = std::max(err, std::abs(r) / scale);
    }
    worst = std::max(worst, err);
    o.pass = o.pass && exact && err <= 1e-12;
    o.detail += name + (exact ? " exact" : " MISMATCH") + " max rel err " + fmt(err) + "; ";
  };
  check(symbol::spacelike_shell(1), "spacelike");
  check(symbol::lightlike_shell(1, geometry::LightconeConvention::Prose), "lightlike");
  return o;
}

Outcome c3() {
  using namespace unfold::dedonder;
  Outcome o{true, ""};
  const auto mink = geometry::minkowski5();
  const auto lc = geometry::lightcone5(geometry::LightconeConvention::Prose);
  const bool full = eliminate(full_system(mink)).second == Matrix<GaussRational>([&] {
    Matrix<GaussRational> m(5, 5);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) m(i, j) = GaussRational(mink.inverse()(i, j));
    return m;
  }());
  const bool kg = eliminate(derived_reduced_system(mink, kg_momentum_ansatz(1))) ==
                  oracle::reduced_operator(mink, oracle::kg_ansatz(1, oracle::Orientation::Paper));
  const bool se = eliminate(derived_reduced_system(lc, se_momentum_ansatz(1))) ==
                  oracle::reduced_operator(lc, oracle::se_ansatz(1, oracle::Orientation::Oscillatory));
  o.pass = full && kg && se;
  o.detail = std::string("elimination full ") + (full ? "ok" : "FAIL") + ", kg " + (kg ? "ok" : "FAIL") + ", se " +
             (se ? "ok" : "FAIL") + "; orders";
  for (auto s : {studies::ResidualStudy::Ddw, studies::ResidualStudy::DdwKg, studies::ResidualStudy::DdwSe}) {
    studies::ResidualParams p;
    p.study = s;
    p.levels = 3;
    const auto r = studies::run_residual_study(p);
    o.pass = o.pass && r.orders_within(1.9, 2.1);
    o.detail += " " + r.name + " " + fmt(r.orders[0]) + "/" + fmt(r.orders[1]);
  }
  return o;
}

Outcome c4() {
  const std::vector<double> k{0.5, 0.3, 0.0, 0.0, 0.4};
  const auto base = studies::action_level({9, 9, 9, 9, 9}, k, 8, 11);
  Outcome o;
  o.pass = base.gradient_max <= 1e-6 && base.contrast >= 1e3;
  o.detail = "9^5: gradient " + fmt(base.gradient_max) + ", contrast " + fmt(base.contrast);
  const auto l0 = studies::action_level({17, 17, 5, 5, 17}, k, 8, 11);
  const auto l1 = studies::action_level({33, 33, 5, 5, 33}, k, 8, 11);
  const double order = studies::observed_order(l0.gradient_max, l1.gradient_max, l0.h, l1.h);
  const double random_order = studies::observed_order(l0.random_gradient_max, l1.random_gradient_max, l0.h, l1.h);
  o.pass = o.pass && order >= 2.0;
  o.detail += "; refinement 17->33 order " + fmt(order) + " (random section " + fmt(random_order) + ")";
  return o;
}

fields::GridField seeded_modes(const fields::GridSpec& s, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> wave(-4, 4);
  std::normal_distribution<double> amp(0.0, 1.0);
  fields::GridField f(s);
  for (int m = 0; m < 3; ++m) {
    const int kx = wave(rng);
    const fields::cplx a(amp(rng), amp(rng));
    for (std::size_t i = 0; i < f.size(); ++i)
      f[i] += a * std::exp(fields::cplx(0.0, kx * s.coordinate(0, i)));
  }
  return f;
}

Outcome c5() {
  using namespace unfold::solver;
  fields::GridSpec s;
  s.axis_names = {"x1"};
  s.lower = {0.0};
  s.upper = {2.0 * std::numbers::pi};
  s.points = {64};
  s.periodic = {true};
  s.validate();

  EvolutionProblem se;
  se.kind = Kind::Schroedinger;
  se.spatial_spec = s;
  se.se_coefficient = se_coefficient(
      oracle::certify_reduction(geometry::lightcone5(geometry::LightconeConvention::Prose),
                                oracle::se_ansatz(1, oracle::Orientation::Paper), oracle::se_candidates(1)),
      1);
  se.initial = seeded_modes(s, 1);
  se.dt = 0.5 * se.max_stable_dt();
  se.steps = 100;
  const double norm_drift = evolve(se).norm_drift;

  EvolutionProblem kg;
  kg.kind = Kind::KleinGordon;
  kg.spatial_spec = s;
  kg.mass_term = kg_mass_term(oracle::certify_reduction(
      geometry::minkowski5(), oracle::kg_ansatz(1, oracle::Orientation::Oscillatory), oracle::kg_candidates(1)));
  kg.initial = seeded_modes(s, 2);
  kg.initial_velocity = seeded_modes(s, 3);
  kg.dt = 0.5 * kg.max_stable_dt();
  kg.steps = 100;
  const double energy_drift = evolve(kg).energy_drift;

  // Target frequencies from the reduced shell relations at |p| = 2, m = 1.
  const auto spacelike = symbol::reduce_shell(symbol::spacelike_shell(1));
  const auto lightlike = symbol::reduce_shell(symbol::lightlike_shell(1, geometry::LightconeConvention::Prose));
  const std::vector<std::size_t> n{16, 32, 64};
  const auto kd = studies::kg_dispersion(1.0, 2, 0.5, n);
  const auto sd = studies::se_dispersion(1.0, 2, 0.5, n);
  const double kg_shell = spacelike.polynomial().evaluate(std::vector<double>{kd.target, 2.0, 0.0, 0.0, 0.0}).real();
  const double se_shell = lightlike.polynomial().evaluate(std::vector<double>{sd.target, 2.0, 0.0, 0.0, 0.0}).real();

  Outcome o;
  bool orders = true;
  for (double v : kd.orders) orders = orders && v >= 2.0;
  for (double v : sd.orders) orders = orders && v >= 2.0;
  o.pass = norm_drift <= 1e-10 && energy_drift <= 1e-6 && orders && std::abs(kg_shell) < 1e-12 &&
           std::abs(se_shell) < 1e-12;
  o.detail = "se norm drift " + fmt(norm_drift) + ", kg energy drift " + fmt(energy_drift) + "; dispersion orders kg " +
             fmt(kd.orders[0]) + "/" + fmt(kd.orders[1]) + ", se " + fmt(sd.orders[0]) + "/" + fmt(sd.orders[1]) +
             " (targets " + fmt(kd.target) + ", " + fmt(sd.target) + ")";
  return o;
}

Outcome c6a() {
  using namespace unfold::dirac;
  const ExactSpinor psi = plane_wave_spinor({Rational(5, 4), Rational(3, 4), 0, 0}, 1);
  Outcome o;
  for (auto n : {Normalization::Standard, Normalization::Paper})
    for (auto c : {EightConvention::Printed, EightConvention::LaplaceBeltrami}) {
      const DiracCertificate cert = reduce_to_dirac(psi, 1, GammaSet::dirac(n), c);
      o.pass = o.pass || cert.verdict;
      o.detail += std::string(normalization_name(n)) + "/" + std::string(eight_convention_name(c)) + ": degree 0 " +
                  (cert.degree0_matches ? "x" + to_string(cert.degree0_factor) : "mismatch") + ", " +
                  std::to_string(cert.obstruction_terms.size()) + " obstruction terms; ";
    }
  return o;
}

Outcome c6b() {
  using namespace unfold::dirac;
  Outcome o{true, ""};
  for (auto n : {Normalization::Standard, Normalization::Paper}) {
    const auto table = anticommutator_table(GammaSet::dirac(n));
    int holds = 0;
    for (const auto& e : table) holds += e.holds ? 1 : 0;
    o.pass = o.pass && table.size() == 16 && holds == 16;
    o.detail += std::string(normalization_name(n)) + " " + std::to_string(holds) + "/16; ";
  }
  return o;
}

Outcome c6c() {
  studies::ResidualParams p;
  p.study = studies::ResidualStudy::Dirac;
  p.levels = 3;
  const auto r = studies::run_residual_study(p);
  return {r.orders_within(1.9, 2.1), "orders " + fmt(r.orders[0]) + "/" + fmt(r.orders[1])};
}

Outcome c7() {
  const std::vector<std::pair<std::string, std::string>> runs{
      {"certify", ""},
      {"residual", "--study ddw-se"},
      {"shell", "-n 1000 --seed 7"},
      {"shell", "--shell spacelike -n 1000 --seed 3"},
      {"evolve", "--kind se"},
      {"evolve", "--kind kg"},
      {"action", ""},
  };
  Outcome o{true, ""};
  int k = 0;
  for (const auto& [cmd, args] : runs) {
    const fs::path a = kWork / ("c7-a" + std::to_string(k)), b = kWork / ("c7-b" + std::to_string(k));
    ++k;
    fs::remove_all(a);
    fs::remove_all(b);
    const int rc = run_cli(cmd + " " + args + " --out " + a.string());
    const int rc2 = run_cli(cmd + " --config " + (a / (cmd + ".config.json")).string() + " --out " + b.string());
    bool same = rc == rc2 && rc != 1;
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(a)) {
      ++files;
      same = same && fs::exists(b / e.path().filename()) && slurp(e.path()) == slurp(b / e.path().filename());
    }
    o.pass = o.pass && same && files > 1;
    o.detail += cmd + (same ? " identical" : " DIFFERS") + " (" + std::to_string(files) + " files); ";
  }
  return o;
}

struct Criterion {
  const char* id;
  const char* title;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <C1..C7|all> <path to unfold>\n";
    return 1;
  }
  const std::string which = argv[1];
  g_cli = argv[2];
  fs::create_directories(kWork);
  const std::vector<Criterion> all{
      {"C1", "scalar reduction certificates", 5.0, c1},
      {"C2", "mass-shell reduction", 1.0, c2},
      {"C3", "de Donder-Weyl equivalence", 60.0, c3},
      {"C4", "Schwinger-Weiss stationarity", 120.0, c4},
      {"C5", "solver physics", 60.0, c5},
      {"C6a", "Dirac certificate: exact factorization", 30.0, c6a},
      {"C6b", "Dirac certificate: anticommutator table", 30.0, c6b},
      {"C6c", "Dirac certificate: grid residual order", 30.0, c6c},
      {"C7", "reproducibility from emitted configs", 600.0, c7},
  };
  bool ok = true;
  bool any = false;
  for (const auto& c : all) {
    if (which != "all" && which != c.id) continue;
    any = true;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = o.pass && in_time;
    ok = ok && pass;
    std::cout << (pass ? "PASS " : "FAIL ") << c.id << "  " << c.title << "  [" << fmt(secs) << " s / " << c.budget_s
              << " s" << (in_time ? "" : " OVER BUDGET") << "]  " << o.detail << "\n";
  }
  if (!any) {
    std::cerr << "unknown criterion " << which << "\n";
    return 1;
  }
  return ok ? 0 : 1;
}
