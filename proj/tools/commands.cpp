#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "unfold/error.hpp"
#include "unfold/json_io.hpp"

namespace unfold::cli {

namespace {

using io::Json;

// Binds CLI options to config fields and keeps enough to serialize the config
// and to let explicitly passed flags override a loaded config file.
template <class Cfg>
class Binder {
 public:
  Binder(CLI::App* app, std::string command) : app_(app), command_(std::move(command)) {}

  Cfg& parsed() { return parsed_; }

  template <class T>
  void option(const std::string& flag, const std::string& key, T Cfg::*member, const std::string& help) {
    CLI::Option* o = app_->add_option(flag, parsed_.*member, help)->capture_default_str();
    if constexpr (std::is_same_v<T, std::vector<std::size_t>> || std::is_same_v<T, std::vector<double>>)
      o->delimiter(',');
    add_field(key, o, member);
  }

  void flag(const std::string& flag, const std::string& key, bool Cfg::*member, const std::string& help) {
    add_field(key, app_->add_flag(flag, parsed_.*member, help), member);
  }

  Json to_json(const Cfg& c) const {
    Json fields;
    for (const auto& f : fields_) f.save(fields, c);
    Json j;
    j["command"] = command_;
    j["config"] = fields;
    return j;
  }

  Cfg resolve(const std::string& config_path) const {
    if (config_path.empty()) return parsed_;
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot read config " + config_path);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const std::exception& e) {
      throw ConfigError("config " + config_path + " is not valid JSON: " + e.what());
    }
    if (!j.contains("command") || j["command"] != command_)
      throw ConfigError("config " + config_path + " is not a '" + command_ + "' config");
    const Json& body = j.contains("config") ? j["config"] : Json::object();
    for (const auto& [k, v] : body.items()) {
      bool known = false;
      for (const auto& f : fields_) known = known || f.key == k;
      if (!known) throw ConfigError("unknown config key '" + k + "'");
    }
    Cfg out;
    try {
      for (const auto& f : fields_) f.load(body, out);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("config value has the wrong type: ") + e.what());
    }
    for (const auto& f : fields_)
      if (f.opt->count() > 0) f.copy(out, parsed_);
    return out;
  }

 private:
  struct Field {
    std::string key;
    CLI::Option* opt;
    std::function<void(Json&, const Cfg&)> save;
    std::function<void(const Json&, Cfg&)> load;
    std::function<void(Cfg&, const Cfg&)> copy;
  };

  template <class T>
  void add_field(const std::string& key, CLI::Option* o, T Cfg::*member) {
    fields_.push_back({key, o, [key, member](Json& j, const Cfg& c) { j[key] = c.*member; },
                       [key, member](const Json& j, Cfg& c) {
                         if (j.contains(key)) c.*member = j.at(key).template get<T>();
                       },
                       [member](Cfg& dst, const Cfg& src) { dst.*member = src.*member; }});
  }

  CLI::App* app_;
  std::string command_;
  Cfg parsed_;
  std::vector<Field> fields_;
};

struct Command {
  CLI::App* app = nullptr;
  std::string config_path;
  std::string out_dir = "unfold-out";
  std::function<Outcome(const std::string&, Json*)> run;
};

void common_options(Command& c) {
  c.app->add_option("--config", c.config_path, "Config file to run; explicit flags override its values");
  c.app->add_option("--out", c.out_dir, "Output directory")->capture_default_str();
}

template <class Cfg>
void attach(Command& cmd, const std::shared_ptr<Binder<Cfg>>& b, Outcome (*fn)(const Cfg&)) {
  cmd.run = [b, fn](const std::string& path, Json* emitted) {
    Cfg cfg = b->resolve(path);
    *emitted = b->to_json(cfg);
    return fn(cfg);
  };
}

}  // namespace

int main_entry(int argc, char** argv) {
  CLI::App app{"unfold: reduction certificates, residual studies, shell sampling, evolution and action checks"};
  app.require_subcommand(1);
  std::vector<Command> cmds(5);

  cmds[0].app = app.add_subcommand("certify", "Exact reduction certificates (scalar and Dirac)");
  auto certify = std::make_shared<Binder<CertifyConfig>>(cmds[0].app, "certify");
  certify->option("--ansatz", "ansatz", &CertifyConfig::ansatz, "kg | se | dirac | all");
  certify->option("--convention", "convention", &CertifyConfig::convention, "Light-cone metric: prose | eq6-exact | all");
  certify->option("--orientation", "orientation", &CertifyConfig::orientation, "paper | oscillatory | all");
  certify->option("--mass", "mass", &CertifyConfig::mass, "Mass, exact rational (e.g. 1, 3/2, 0.5)");
  certify->option("--kg-axis", "kg_axis", &CertifyConfig::kg_axis, "Direction axis of the spacelike ansatz");
  certify->option("--se-axis", "se_axis", &CertifyConfig::se_axis, "Direction axis of the lightlike ansatz");
  certify->option("--normalization", "normalization", &CertifyConfig::normalization,
                  "Gamma normalization: standard | paper | all");
  certify->option("--dirac-convention", "dirac_convention", &CertifyConfig::dirac_convention,
                  "8-D operator: printed | laplace-beltrami | all");
  certify->option("--truncation", "truncation", &CertifyConfig::truncation, "Taylor order of the Clifford exponential");
  common_options(cmds[0]);
  attach(cmds[0], certify, &run_certify);

  cmds[1].app = app.add_subcommand("residual", "Grid residual refinement study");
  auto residual = std::make_shared<Binder<ResidualConfig>>(cmds[1].app, "residual");
  residual->option("--study", "study", &ResidualConfig::study, "kg | se | dirac | ddw | ddw-kg | ddw-se");
  residual->option("--system", "system", &ResidualConfig::system, "Reduced first-order system: derived | printed");
  residual->option("--convention", "convention", &ResidualConfig::convention, "prose | eq6-exact");
  residual->option("--orientation", "orientation", &ResidualConfig::orientation, "paper | oscillatory");
  residual->option("--normalization", "normalization", &ResidualConfig::normalization, "standard | paper");
  residual->option("--mass", "mass", &ResidualConfig::mass, "Mass, exact rational");
  residual->option("--grid", "grid", &ResidualConfig::grid,
                   "Points per axis at the coarsest level; axes with more than 5 points are refined");
  residual->option("--levels", "levels", &ResidualConfig::levels, "Refinement levels");
  residual->option("--wavenumber", "wavenumber", &ResidualConfig::wavenumber, "Spatial wavenumber along x1");
  residual->flag("--off-shell", "off_shell", &ResidualConfig::off_shell, "Detune the frequency off the shell");
  common_options(cmds[1]);
  attach(cmds[1], residual, &run_residual);

  cmds[2].app = app.add_subcommand("shell", "Mass-shell sampling");
  auto shell = std::make_shared<Binder<ShellConfig>>(cmds[2].app, "shell");
  shell->option("--shell", "shell", &ShellConfig::shell, "spacelike | lightlike");
  shell->option("--convention", "convention", &ShellConfig::convention, "prose | eq6-exact");
  shell->option("--mass", "mass", &ShellConfig::mass, "Mass, exact rational");
  shell->option("-n,--samples", "samples", &ShellConfig::samples, "Number of samples");
  shell->option("--seed", "seed", &ShellConfig::seed, "Random seed");
  shell->option("--bound", "bound", &ShellConfig::bound, "Free momenta drawn from [-bound, bound]");
  common_options(cmds[2]);
  attach(cmds[2], shell, &run_shell);

  cmds[3].app = app.add_subcommand("evolve", "Periodic Klein-Gordon or Schroedinger evolution");
  auto evolve = std::make_shared<Binder<EvolveConfig>>(cmds[3].app, "evolve");
  evolve->option("--kind", "kind", &EvolveConfig::kind, "se | kg");
  evolve->option("--convention", "convention", &EvolveConfig::convention, "prose | eq6-exact (se coefficient)");
  evolve->option("--orientation", "orientation", &EvolveConfig::orientation, "paper | oscillatory (kg mass term)");
  evolve->option("--mass", "mass", &EvolveConfig::mass, "Mass, exact rational");
  evolve->option("--grid", "grid", &EvolveConfig::grid, "Points per spatial axis (1 to 3 axes)");
  evolve->option("--length", "length", &EvolveConfig::length, "Period of every spatial axis");
  evolve->option("--steps", "steps", &EvolveConfig::steps, "Time steps");
  evolve->option("--cfl", "cfl_fraction", &EvolveConfig::cfl_fraction, "dt as a fraction of the stability bound");
  evolve->option("--modes", "modes", &EvolveConfig::modes, "Random Fourier modes in the initial data");
  evolve->option("--seed", "seed", &EvolveConfig::seed, "Random seed");
  evolve->option("--dump-final", "dump_final", &EvolveConfig::dump_final, "Write the final field as CSV");
  common_options(cmds[3]);
  attach(cmds[3], evolve, &run_evolve);

  cmds[4].app = app.add_subcommand("action", "Discrete Schwinger-Weiss stationarity check");
  auto act = std::make_shared<Binder<ActionConfig>>(cmds[4].app, "action");
  act->option("--grid", "grid", &ActionConfig::grid, "Points per axis of the 5-D grid on [0,1]^5");
  act->option("--momentum", "momentum", &ActionConfig::momentum, "Null 5-momentum of the plane-wave solution");
  act->option("--probes", "probes", &ActionConfig::probes, "Variation directions");
  act->option("--seed", "seed", &ActionConfig::seed, "Random seed (probes and non-solution)");
  act->option("--levels", "levels", &ActionConfig::levels,
              "Refinement levels; axes with more than 5 points are refined");
  common_options(cmds[4]);
  attach(cmds[4], act, &run_action);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  for (auto& cmd : cmds) {
    if (!cmd.app->parsed()) continue;
    Json emitted;
    Outcome o;
    try {
      o = cmd.run(cmd.config_path, &emitted);
    } catch (const ConfigError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return 1;
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
    try {
      const std::filesystem::path out(cmd.out_dir);
      io::write_atomic(out / (cmd.app->get_name() + ".config.json"), emitted.dump(2) + "\n");
      for (const auto& [name, content] : o.files) io::write_atomic(out / name, content);
    } catch (const std::exception& e) {
      std::cerr << "cannot write reports: " << e.what() << "\n";
      return 1;
    }
    std::cout << o.summary;
    return o.exit_code;
  }
  return 1;
}

}  // namespace unfold::cli
