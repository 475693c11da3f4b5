#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace unfold::cli {

// Usage or configuration problem: exit code 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CertifyConfig {
  std::string ansatz = "all";        // kg | se | dirac | all
  std::string convention = "prose";  // prose | eq6-exact | all
  std::string orientation = "paper";  // paper | oscillatory | all
  std::string mass = "1";
  std::string kg_axis = "x4";
  std::string se_axis = "s";
  std::string normalization = "standard";  // standard | paper | all
  std::string dirac_convention = "printed";  // printed | laplace-beltrami | all
  int truncation = 3;
};

struct ResidualConfig {
  std::string study = "kg";  // kg | se | dirac | ddw | ddw-kg | ddw-se
  std::string system = "derived";  // derived | printed (ddw-kg, ddw-se)
  std::string convention = "prose";
  std::string orientation = "paper";
  std::string normalization = "standard";
  std::string mass = "1";
  std::vector<std::size_t> grid;  // coarsest level; empty: study default
  int levels = 3;
  double wavenumber = 2.0;
  bool off_shell = false;
};

struct ShellConfig {
  std::string shell = "lightlike";  // spacelike | lightlike
  std::string convention = "prose";
  std::string mass = "1";
  std::size_t samples = 100;
  std::uint64_t seed = 7;
  double bound = 2.0;
};

struct EvolveConfig {
  std::string kind = "se";  // se | kg
  std::string convention = "prose";
  std::string orientation = "paper";
  std::string mass = "1";
  std::vector<std::size_t> grid{64};
  double length = 6.283185307179586;
  std::size_t steps = 100;
  double cfl_fraction = 0.5;
  int modes = 3;
  std::uint64_t seed = 1;
  bool dump_final = true;
};

struct ActionConfig {
  std::vector<std::size_t> grid{9, 9, 9, 9, 9};
  std::vector<double> momentum{0.5, 0.3, 0.0, 0.0, 0.4};
  std::size_t probes = 8;
  std::uint64_t seed = 11;
  int levels = 1;
};

struct Outcome {
  int exit_code = 0;
  // (file name relative to the output directory, content)
  std::vector<std::pair<std::string, std::string>> files;
  std::string summary;
};

// Each throws ConfigError before doing any work when the configuration is invalid.
Outcome run_certify(const CertifyConfig& c);
Outcome run_residual(const ResidualConfig& c);
Outcome run_shell(const ShellConfig& c);
Outcome run_evolve(const EvolveConfig& c);
Outcome run_action(const ActionConfig& c);

int main_entry(int argc, char** argv);

}  // namespace unfold::cli
