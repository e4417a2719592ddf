// Command line front end: runs experiment configs, solves reference
// Hamiltonians, summarizes result directories and benchmarks the solver.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lvqe/experiment.hpp"
#include "lvqe/solver.hpp"
#include "lvqe/version.hpp"

namespace {

struct RunOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> shots;
  std::optional<std::string> noise;
  std::optional<std::size_t> reps;
  std::optional<std::size_t> maxiter;
  std::optional<std::string> expected;
  std::optional<std::string> output;
};

lvqe::NoiseModel parse_noise_flag(const std::string& text) {
  lvqe::NoiseModel noise;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw CLI::ValidationError("--noise expects readout=<p>,cx=<p>");
    }
    const std::string key = item.substr(0, eq);
    const double value = std::stod(item.substr(eq + 1));
    if (key == "readout") {
      noise.readout_flip_prob = value;
    } else if (key == "cx") {
      noise.cx_depolarizing_prob = value;
    } else {
      throw CLI::ValidationError("unknown noise parameter: " + key);
    }
  }
  return noise;
}

void apply_overrides(lvqe::ExperimentSpec& spec, const RunOverrides& overrides) {
  if (overrides.seed) {
    spec.seed = *overrides.seed;
    spec.estimator.seed = *overrides.seed + 1;
  }
  if (overrides.shots) {
    spec.estimator.mode = lvqe::EstimatorMode::Shots;
    spec.estimator.shots = *overrides.shots;
  }
  if (overrides.noise) {
    spec.estimator.mode = lvqe::EstimatorMode::Shots;
    spec.estimator.noise = parse_noise_flag(*overrides.noise);
  }
  if (overrides.reps) {
    spec.ansatz.reps = *overrides.reps;
  }
  if (overrides.maxiter) {
    spec.optimizer_max_iter = *overrides.maxiter;
  }
  if (overrides.expected) {
    const std::string& value = *overrides.expected;
    if (value == "classical") {
      spec.expected_source = lvqe::ExpectedSource::Classical;
    } else if (value == "none") {
      spec.expected_source = lvqe::ExpectedSource::None;
    } else {
      spec.expected_source = lvqe::ExpectedSource::Explicit;
      spec.expected_value = std::stod(value);
    }
  }
  if (overrides.output) {
    spec.output_dir = *overrides.output;
  }
}

int command_run(const std::vector<std::string>& configs,
                const RunOverrides& overrides) {
  int failures = 0;
  for (const std::string& path : configs) {
    try {
      lvqe::ExperimentSpec spec = lvqe::load_experiment_spec(path);
      apply_overrides(spec, overrides);
      const lvqe::ExperimentOutcome outcome = lvqe::run_experiment(spec);
      const auto record_path = lvqe::write_outcome(outcome, spec.output_dir);
      const auto& r = outcome.record;
      std::cout << r.spec.name << ": energy " << r.computed_energy;
      if (r.expected_energy) {
        std::cout << " (expected " << *r.expected_energy << ")";
      }
      if (r.relative_error_pct) {
        std::cout << ", error " << *r.relative_error_pct << "%";
      }
      std::cout << ", " << r.evaluations << " evaluations, "
                << r.recursions_used << " recursions -> " << record_path.string()
                << '\n';
      if (!r.solver_converged) {
        std::cout << "  warning: classical reference solve did not converge\n";
      }
    } catch (const std::exception& e) {
      std::cerr << path << ": " << e.what() << '\n';
      ++failures;
    }
  }
  return failures == 0 ? 0 : 1;
}

int command_solve(const std::string& config_path) {
  const lvqe::ExperimentSpec spec = lvqe::load_experiment_spec(config_path);
  const lvqe::SolveSummary summary = lvqe::solve_reference(spec);
  std::cout << spec.name << ": ground energy " << std::setprecision(12)
            << summary.energy << ", residual " << summary.residual << ", "
            << summary.iterations << " iterations, " << summary.wall_seconds
            << " s\n";
  if (!summary.converged) {
    std::cout << "  warning: solve did not reach tolerance\n";
  }

  std::filesystem::create_directories(spec.output_dir);
  const auto csv_path = std::filesystem::path(spec.output_dir) / "solver_bench.csv";
  const bool fresh = !std::filesystem::exists(csv_path);
  std::ofstream out(csv_path, std::ios::app);
  if (!out) {
    throw std::runtime_error("cannot write " + csv_path.string());
  }
  if (fresh) {
    out << "name,num_qubits,energy,residual,iterations,wall_seconds\n";
  }
  out << spec.name << ',' << summary.num_qubits << ',' << std::setprecision(12)
      << summary.energy << ',' << summary.residual << ',' << summary.iterations
      << ',' << summary.wall_seconds << '\n';
  return summary.converged ? 0 : 1;
}

int command_report(const std::string& directory,
                   const std::optional<std::string>& reference_path) {
  const std::vector<lvqe::ExperimentRecord> records = lvqe::load_records(directory);
  if (records.empty()) {
    std::cout << "no records in " << directory << '\n';
    return 0;
  }
  std::map<std::string, lvqe::ReferenceEntry> reference;
  if (reference_path) {
    reference = lvqe::load_reference(*reference_path);
  }
  std::cout << lvqe::report_table(records, reference);
  return 0;
}

int command_bench_solver(std::size_t min_qubits, std::size_t max_qubits,
                         const std::optional<std::string>& csv_path) {
  const auto rows = lvqe::bench_solver(min_qubits, max_qubits);
  const std::string csv = lvqe::solver_bench_to_csv(rows);
  std::cout << csv;
  if (csv_path) {
    std::ofstream out(*csv_path);
    if (!out) {
      throw std::runtime_error("cannot write " + *csv_path);
    }
    out << csv;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice ground state toolkit"};
  app.set_version_flag("--version", std::string(lvqe::kVersion));
  app.require_subcommand(1);

  std::vector<std::string> run_configs;
  RunOverrides overrides;
  auto* run = app.add_subcommand("run", "Run experiment configs");
  run->add_option("configs", run_configs, "Experiment config JSON files")
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("--seed", overrides.seed, "Override the experiment seed");
  run->add_option("--shots", overrides.shots,
                  "Override shot count (switches the estimator to shots mode)");
  run->add_option("--noise", overrides.noise,
                  "Noise model, e.g. readout=0.02,cx=0.01 (implies shots mode)");
  run->add_option("--reps", overrides.reps, "Override ansatz repetitions");
  run->add_option("--maxiter", overrides.maxiter,
                  "Override optimizer iteration budget");
  run->add_option("--expected", overrides.expected,
                  "Guidance target: a number, 'classical' or 'none'");
  run->add_option("--output", overrides.output, "Override the output directory");

  std::string solve_config;
  auto* solve = app.add_subcommand("solve", "Classically solve a config's model");
  solve->add_option("config", solve_config, "Experiment config JSON file")
      ->required()
      ->check(CLI::ExistingFile);

  std::string report_dir;
  std::optional<std::string> report_reference;
  auto* report = app.add_subcommand("report", "Summarize a results directory");
  report->add_option("dir", report_dir, "Directory of result records")
      ->required()
      ->check(CLI::ExistingDirectory);
  report->add_option("--reference", report_reference,
                     "Reference results JSON for a comparison column")
      ->check(CLI::ExistingFile);

  std::size_t bench_min = 8;
  std::size_t bench_max = 14;
  std::optional<std::string> bench_csv;
  auto* bench = app.add_subcommand("bench-solver", "Time the iterative solver "
                                                   "on growing periodic chains");
  bench->add_option("--max-qubits", bench_max, "Largest chain size")->required();
  bench->add_option("--min-qubits", bench_min, "Smallest chain size");
  bench->add_option("--csv", bench_csv, "Also write the CSV to this file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      return command_run(run_configs, overrides);
    }
    if (*solve) {
      return command_solve(solve_config);
    }
    if (*report) {
      return command_report(report_dir, report_reference);
    }
    if (*bench) {
      return command_bench_solver(bench_min, bench_max, bench_csv);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
