#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "unfold/fields.hpp"
#include "unfold/oracle.hpp"

namespace unfold::solver {

using fields::GridField;
using fields::GridSpec;

enum class Kind { KleinGordon, Schroedinger };

std::string_view kind_name(Kind k);

struct EvolutionProblem {
  Kind kind = Kind::Schroedinger;
  double mass = 1.0;
  GridSpec spatial_spec;  // every axis periodic
  double dt = 0.0;
  std::size_t steps = 0;
  GridField initial;
  GridField initial_velocity;  // Klein-Gordon only
  // Klein-Gordon: d0^2 u = lap u - mass_term * u.
  double mass_term = 1.0;
  // Schroedinger: c i m dt psi = -lap psi.
  double se_coefficient = 2.0;

  void validate() const;
  // Largest dt the guard accepts.
  double max_stable_dt() const;
  bool growing_mode() const { return kind == Kind::KleinGordon && mass_term < 0.0; }
};

// Coefficients read off a certificate whose winner is normalized as
// d0^2 - lap + c (Klein-Gordon) or c i m dt + lap (Schroedinger).
double kg_mass_term(const oracle::IdentityCertificate& cert);
double se_coefficient(const oracle::IdentityCertificate& cert, const Rational& m);

struct KgState {
  GridField previous;
  GridField current;
  std::size_t step = 0;
};

KgState kg_initial_state(const EvolutionProblem& problem);
KgState step_kg(const EvolutionProblem& problem, const KgState& state);
// Staggered leapfrog energy between current and previous levels; conserved
// exactly by the scheme up to rounding.
double kg_energy(const EvolutionProblem& problem, const KgState& state);
KgState reversed(const KgState& state);

struct SeStep {
  GridField psi;
  std::size_t iterations = 0;
  double solve_residual = 0.0;
};

SeStep step_se(const EvolutionProblem& problem, const GridField& psi);

double l2_norm(const GridField& f);

struct StepRecord {
  std::size_t step = 0;
  double time = 0.0;
  double l2_norm = 0.0;
  double energy = 0.0;
  double max_residual = 0.0;
};

struct Trajectory {
  std::vector<StepRecord> records;
  GridField final_field;
  bool growing_mode = false;
  double norm_drift = 0.0;    // max |N_n - N_0| / N_0
  double energy_drift = 0.0;  // max |E_n - E_0| / |E_0|
};

using Observer = std::function<void(std::size_t step, const GridField& field)>;

Trajectory evolve(const EvolutionProblem& problem, const Observer& observer = {});

}  // namespace unfold::solver
