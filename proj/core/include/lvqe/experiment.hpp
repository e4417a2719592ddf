#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lvqe/circuit.hpp"
#include "lvqe/hamiltonians.hpp"
#include "lvqe/lattice.hpp"
#include "lvqe/sim.hpp"
#include "lvqe/vqe.hpp"

namespace lvqe {

struct AnsatzSpec {
  std::size_t reps = 1;
  Entanglement entanglement = Entanglement::Linear;

  friend bool operator==(const AnsatzSpec&, const AnsatzSpec&) = default;
};

// Where the guidance target comes from: a literal value, a classical
// eigensolver run on the reference Hamiltonian, or nowhere (guidance off).
enum class ExpectedSource { Explicit, Classical, None };

struct GuidanceSpec {
  double threshold_pct = 1.0;
  double initial_weight = 1.6;
  double bias_step = 0.25;
  double delta_trigger = 10.0;
  double weight_floor = 1.0;
  int max_recursions = 5;
  double recursion_base_step = 0.3;
  WarmStart warm_start = WarmStart::InitialPoint;

  friend bool operator==(const GuidanceSpec&, const GuidanceSpec&) = default;
};

// One experiment, as described by a JSON config file.
struct ExperimentSpec {
  std::string name;
  ModelKind model = ModelKind::Heisenberg;
  LatticeGraph lattice;
  double hubbard_u = 0.0;
  AnsatzSpec ansatz;
  GuidanceSpec guidance;
  std::size_t optimizer_max_iter = 100;
  int nft_reset_interval = kResetPerSweep;
  EstimatorConfig estimator;
  ExpectedSource expected_source = ExpectedSource::Classical;
  double expected_value = 0.0;  // Explicit source only
  std::uint64_t seed = 0;
  std::string output_dir = "results";
};

ExperimentSpec parse_experiment_spec(const std::string& json_text);
ExperimentSpec load_experiment_spec(const std::filesystem::path& path);
std::string spec_to_json(const ExperimentSpec& spec);

// Classical reference solve of the experiment's Hamiltonian at unit
// interaction weight (the lattice's own edge weights).
struct SolveSummary {
  std::size_t num_qubits = 0;
  double energy = 0.0;
  double residual = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  double wall_seconds = 0.0;
};

SolveSummary solve_reference(const ExperimentSpec& spec);

// Everything worth keeping from one run. wall_seconds covers the
// optimization loop, not the classical reference solve.
struct ExperimentRecord {
  ExperimentSpec spec;
  double computed_energy = 0.0;
  std::optional<double> expected_energy;
  std::optional<double> relative_error_pct;
  double wall_seconds = 0.0;
  std::size_t evaluations = 0;
  int recursions_used = 0;
  bool task_done = false;
  double final_weight = 0.0;
  bool solver_converged = true;
  std::vector<double> thetas;
  std::string toolkit_version;
};

std::string record_to_json(const ExperimentRecord& record);
ExperimentRecord record_from_json(const std::string& json_text);

struct ExperimentOutcome {
  ExperimentRecord record;
  std::vector<TracePoint> trace;
};

ExperimentOutcome run_experiment(const ExperimentSpec& spec);

// "eval,energy,weight" header plus one row per objective evaluation.
std::string trace_to_csv(const std::vector<TracePoint>& trace);

// Writes <name>.json and <name>.trace.csv under directory, creating it if
// needed; returns the record path.
std::filesystem::path write_outcome(const ExperimentOutcome& outcome,
                                    const std::filesystem::path& directory);

// All *.json records directly inside directory, sorted by name.
std::vector<ExperimentRecord> load_records(const std::filesystem::path& directory);

// Name-keyed energies (and optional error percentages) for the comparison
// column of the report, e.g. published results for the same grid.
struct ReferenceEntry {
  double energy = 0.0;
  std::optional<double> relative_error_pct;
};

std::map<std::string, ReferenceEntry> load_reference(
    const std::filesystem::path& path);

// Fixed-width summary table of the records, one row each; the reference
// map adds a comparison column where names match. Relative errors are
// printed to 5 decimal places.
std::string report_table(const std::vector<ExperimentRecord>& records,
                         const std::map<std::string, ReferenceEntry>& reference = {});

// Ground-state solve timing on periodic chains of growing size.
struct SolverBenchRow {
  std::size_t num_qubits = 0;
  double wall_seconds = 0.0;
  std::size_t state_bytes = 0;
  double energy = 0.0;
};

std::vector<SolverBenchRow> bench_solver(std::size_t min_qubits,
                                         std::size_t max_qubits,
                                         std::uint64_t seed = 0);

std::string solver_bench_to_csv(const std::vector<SolverBenchRow>& rows);

}  // namespace lvqe
