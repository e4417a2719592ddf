#include "lvqe/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "lvqe/solver.hpp"
#include "lvqe/version.hpp"

namespace lvqe {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

std::string warm_start_name(WarmStart w) {
  return w == WarmStart::InitialPoint ? "initial-point" : "final-point";
}

WarmStart warm_start_from_name(const std::string& name) {
  if (name == "initial-point") return WarmStart::InitialPoint;
  if (name == "final-point") return WarmStart::FinalPoint;
  throw std::invalid_argument("unknown warm start: " + name);
}

std::string entanglement_name(Entanglement e) {
  return e == Entanglement::Linear ? "linear" : "full";
}

Entanglement entanglement_from_name(const std::string& name) {
  if (name == "linear") return Entanglement::Linear;
  if (name == "full") return Entanglement::Full;
  throw std::invalid_argument("unknown entanglement: " + name);
}

LatticeGraph parse_lattice(const json& j) {
  const auto kind = lattice_kind_from_string(j.at("kind").get<std::string>());
  const double weight = j.value("weight", 1.0);
  const bool periodic = j.value("periodic", true);
  if (j.contains("edges")) {
    // Explicit edge list; kind and periodic are kept as annotations.
    std::vector<Edge> edges;
    for (const auto& item : j.at("edges")) {
      edges.push_back(Edge{item.at(0).get<std::uint32_t>(),
                           item.at(1).get<std::uint32_t>(),
                           item.at(2).get<double>()});
    }
    return LatticeGraph(j.at("num_vertices").get<std::size_t>(), std::move(edges),
                        kind, j.value("periodic", false));
  }
  switch (kind) {
    case LatticeKind::Line:
      return line_lattice(j.at("size").get<std::size_t>(), periodic, weight);
    case LatticeKind::Square:
      return square_lattice(j.at("rows").get<std::size_t>(),
                            j.at("cols").get<std::size_t>(), periodic, weight);
    case LatticeKind::Triangular:
      return triangular_lattice(j.at("rows").get<std::size_t>(),
                                j.at("cols").get<std::size_t>(), periodic, weight);
    case LatticeKind::Kagome:
      return kagome_lattice(weight);
    case LatticeKind::Custom:
      throw std::invalid_argument("custom lattice needs an edges list");
  }
  throw std::invalid_argument("unknown lattice kind");
}

EstimatorConfig parse_estimator(const json& j, std::uint64_t default_seed) {
  EstimatorConfig config;
  config.seed = default_seed;
  if (j.is_null()) {
    return config;
  }
  const std::string mode = j.value("mode", "exact");
  if (mode == "exact") {
    config.mode = EstimatorMode::Exact;
  } else if (mode == "shots") {
    config.mode = EstimatorMode::Shots;
  } else {
    throw std::invalid_argument("unknown estimator mode: " + mode);
  }
  config.shots = j.value("shots", std::size_t{1024});
  if (j.contains("seed")) {
    config.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("noise") && !j.at("noise").is_null()) {
    const auto& n = j.at("noise");
    NoiseModel noise;
    noise.readout_flip_prob = n.value("readout", noise.readout_flip_prob);
    noise.cx_depolarizing_prob = n.value("cx", noise.cx_depolarizing_prob);
    config.noise = noise;
  }
  return config;
}

void check_name(const std::string& name) {
  if (name.empty()) {
    throw std::invalid_argument("experiment name must be non-empty");
  }
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '-' || c == '_' || c == '.';
    if (!ok) {
      throw std::invalid_argument(
          "experiment name may only contain letters, digits, '-', '_', '.'");
    }
  }
}

ExperimentSpec spec_from_json_value(const json& j) {
  static const std::vector<std::string> known = {
      "name",     "model",     "lattice",   "hubbard_u",       "ansatz",
      "guidance", "optimizer", "estimator", "expected_energy", "seed",
      "output"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw std::invalid_argument("unknown config key: " + key);
    }
  }

  ExperimentSpec spec;
  spec.name = j.at("name").get<std::string>();
  check_name(spec.name);
  spec.model = model_kind_from_string(j.at("model").get<std::string>());
  spec.lattice = parse_lattice(j.at("lattice"));
  spec.hubbard_u = j.value("hubbard_u", 0.0);
  spec.seed = j.value("seed", std::uint64_t{0});
  spec.output_dir = j.value("output", std::string{"results"});

  if (j.contains("ansatz")) {
    const auto& a = j.at("ansatz");
    spec.ansatz.reps = a.value("reps", std::size_t{1});
    spec.ansatz.entanglement =
        entanglement_from_name(a.value("entanglement", std::string{"linear"}));
  }
  if (j.contains("guidance")) {
    const auto& g = j.at("guidance");
    spec.guidance.threshold_pct = g.value("threshold_pct", 1.0);
    spec.guidance.initial_weight = g.value("initial_weight", 1.6);
    spec.guidance.bias_step = g.value("bias_step", 0.25);
    spec.guidance.delta_trigger = g.value("delta_trigger", 10.0);
    spec.guidance.weight_floor = g.value("weight_floor", 1.0);
    spec.guidance.max_recursions = g.value("max_recursions", 5);
    spec.guidance.recursion_base_step = g.value("recursion_base_step", 0.3);
    spec.guidance.warm_start =
        warm_start_from_name(g.value("warm_start", std::string{"initial-point"}));
  }
  if (j.contains("optimizer")) {
    const auto& o = j.at("optimizer");
    spec.optimizer_max_iter = o.value("max_iter", std::size_t{100});
    spec.nft_reset_interval = o.value("reset_interval", kResetPerSweep);
  }
  // The estimator RNG gets its own default stream so it does not mirror
  // the initial point draw.
  spec.estimator = parse_estimator(j.contains("estimator") ? j.at("estimator") : json(),
                                   spec.seed + 1);

  if (j.contains("expected_energy")) {
    const auto& e = j.at("expected_energy");
    if (e.is_number()) {
      spec.expected_source = ExpectedSource::Explicit;
      spec.expected_value = e.get<double>();
    } else if (e.get<std::string>() == "classical") {
      spec.expected_source = ExpectedSource::Classical;
    } else if (e.get<std::string>() == "none") {
      spec.expected_source = ExpectedSource::None;
    } else {
      throw std::invalid_argument("expected_energy must be a number, "
                                  "\"classical\" or \"none\"");
    }
  }
  return spec;
}

ordered_json spec_to_json_value(const ExperimentSpec& spec) {
  ordered_json j;
  j["name"] = spec.name;
  j["model"] = to_string(spec.model);
  j["lattice"] = ordered_json::parse(spec.lattice.to_record());
  j["hubbard_u"] = spec.hubbard_u;
  j["ansatz"] = {{"reps", spec.ansatz.reps},
                 {"entanglement", entanglement_name(spec.ansatz.entanglement)}};
  j["guidance"] = {{"threshold_pct", spec.guidance.threshold_pct},
                   {"initial_weight", spec.guidance.initial_weight},
                   {"bias_step", spec.guidance.bias_step},
                   {"delta_trigger", spec.guidance.delta_trigger},
                   {"weight_floor", spec.guidance.weight_floor},
                   {"max_recursions", spec.guidance.max_recursions},
                   {"recursion_base_step", spec.guidance.recursion_base_step},
                   {"warm_start", warm_start_name(spec.guidance.warm_start)}};
  j["optimizer"] = {{"max_iter", spec.optimizer_max_iter},
                    {"reset_interval", spec.nft_reset_interval}};
  ordered_json estimator;
  estimator["mode"] =
      spec.estimator.mode == EstimatorMode::Exact ? "exact" : "shots";
  estimator["shots"] = spec.estimator.shots;
  estimator["seed"] = spec.estimator.seed;
  if (spec.estimator.noise) {
    estimator["noise"] = {{"readout", spec.estimator.noise->readout_flip_prob},
                          {"cx", spec.estimator.noise->cx_depolarizing_prob}};
  } else {
    estimator["noise"] = nullptr;
  }
  j["estimator"] = std::move(estimator);
  switch (spec.expected_source) {
    case ExpectedSource::Explicit: j["expected_energy"] = spec.expected_value; break;
    case ExpectedSource::Classical: j["expected_energy"] = "classical"; break;
    case ExpectedSource::None: j["expected_energy"] = "none"; break;
  }
  j["seed"] = spec.seed;
  j["output"] = spec.output_dir;
  return j;
}

}  // namespace

ExperimentSpec parse_experiment_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("bad experiment config: ") + e.what());
  }
  try {
    return spec_from_json_value(j);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad experiment config: ") + e.what());
  }
}

ExperimentSpec load_experiment_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config file: " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_experiment_spec(buffer.str());
  } catch (const std::exception& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

std::string spec_to_json(const ExperimentSpec& spec) {
  return spec_to_json_value(spec).dump(2);
}

SolveSummary solve_reference(const ExperimentSpec& spec) {
  const PauliSum h = get_hamiltonian(spec.model, spec.lattice, 1.0, spec.hubbard_u);
  SolveSummary summary;
  summary.num_qubits = h.num_qubits();
  const auto start = std::chrono::steady_clock::now();
  const EigenResult result = solve_iterative(h, 1e-8, 4000, spec.seed);
  summary.wall_seconds = elapsed_seconds(start);
  summary.energy = result.ground_energy;
  summary.residual = result.residual;
  summary.iterations = result.iterations;
  summary.converged = result.converged;
  return summary;
}

ExperimentOutcome run_experiment(const ExperimentSpec& spec) {
  ExperimentRecord record;
  record.spec = spec;
  record.toolkit_version = std::string(kVersion);

  std::optional<double> expected;
  if (spec.expected_source == ExpectedSource::Explicit) {
    expected = spec.expected_value;
  } else if (spec.expected_source == ExpectedSource::Classical) {
    const SolveSummary summary = solve_reference(spec);
    record.solver_converged = summary.converged;
    expected = summary.energy;
  }
  record.expected_energy = expected;

  GuidedVqeConfig config;
  config.model = spec.model;
  config.lattice = spec.lattice;
  config.hubbard_u = spec.hubbard_u;
  config.expected_energy = expected;
  config.threshold_pct = spec.guidance.threshold_pct;
  config.initial_weight = spec.guidance.initial_weight;
  config.bias_step = spec.guidance.bias_step;
  config.delta_trigger = spec.guidance.delta_trigger;
  config.weight_floor = spec.guidance.weight_floor;
  config.max_recursions = spec.guidance.max_recursions;
  config.recursion_base_step = spec.guidance.recursion_base_step;
  config.warm_start = spec.guidance.warm_start;
  config.optimizer_max_iter = spec.optimizer_max_iter;
  config.nft_reset_interval = spec.nft_reset_interval;
  config.estimator = spec.estimator;
  config.seed = spec.seed;

  const Circuit ansatz =
      efficient_su2(model_num_qubits(spec.model, spec.lattice), spec.ansatz.reps,
                    spec.ansatz.entanglement);

  const auto start = std::chrono::steady_clock::now();
  VqeResult result = guided_vqe(config, ansatz);
  record.wall_seconds = elapsed_seconds(start);

  record.computed_energy = result.value;
  record.relative_error_pct = result.relative_error_pct;
  record.evaluations = result.evaluations;
  record.recursions_used = result.recursions_used;
  record.task_done = result.task_done;
  record.final_weight = result.final_weight;
  record.thetas = std::move(result.thetas);
  return ExperimentOutcome{std::move(record), std::move(result.trace)};
}

std::string record_to_json(const ExperimentRecord& record) {
  ordered_json j;
  j["spec"] = spec_to_json_value(record.spec);
  j["computed_energy"] = record.computed_energy;
  if (record.expected_energy) {
    j["expected_energy"] = *record.expected_energy;
  } else {
    j["expected_energy"] = nullptr;
  }
  if (record.relative_error_pct) {
    j["relative_error_pct"] = *record.relative_error_pct;
  } else {
    j["relative_error_pct"] = nullptr;
  }
  j["wall_seconds"] = record.wall_seconds;
  j["evaluations"] = record.evaluations;
  j["recursions_used"] = record.recursions_used;
  j["task_done"] = record.task_done;
  j["final_weight"] = record.final_weight;
  j["solver_converged"] = record.solver_converged;
  j["thetas"] = record.thetas;
  j["seed"] = record.spec.seed;
  j["toolkit_version"] = record.toolkit_version;
  return j.dump(2);
}

ExperimentRecord record_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("bad experiment record: ") + e.what());
  }
  try {
    ExperimentRecord record;
    record.spec = spec_from_json_value(j.at("spec"));
    record.computed_energy = j.at("computed_energy").get<double>();
    if (!j.at("expected_energy").is_null()) {
      record.expected_energy = j.at("expected_energy").get<double>();
    }
    if (!j.at("relative_error_pct").is_null()) {
      record.relative_error_pct = j.at("relative_error_pct").get<double>();
    }
    record.wall_seconds = j.at("wall_seconds").get<double>();
    record.evaluations = j.at("evaluations").get<std::size_t>();
    record.recursions_used = j.at("recursions_used").get<int>();
    record.task_done = j.at("task_done").get<bool>();
    record.final_weight = j.at("final_weight").get<double>();
    record.solver_converged = j.value("solver_converged", true);
    record.thetas = j.at("thetas").get<std::vector<double>>();
    record.toolkit_version = j.at("toolkit_version").get<std::string>();
    return record;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad experiment record: ") + e.what());
  }
}

std::string trace_to_csv(const std::vector<TracePoint>& trace) {
  std::ostringstream out;
  out.precision(17);
  out << "eval,energy,weight\n";
  for (const TracePoint& p : trace) {
    out << p.eval_index << ',' << p.energy << ',' << p.weight << '\n';
  }
  return out.str();
}

std::filesystem::path write_outcome(const ExperimentOutcome& outcome,
                                    const std::filesystem::path& directory) {
  std::filesystem::create_directories(directory);
  const auto record_path = directory / (outcome.record.spec.name + ".json");
  {
    std::ofstream out(record_path);
    if (!out) {
      throw std::runtime_error("cannot write " + record_path.string());
    }
    out << record_to_json(outcome.record) << '\n';
  }
  const auto trace_path = directory / (outcome.record.spec.name + ".trace.csv");
  std::ofstream trace_out(trace_path);
  if (!trace_out) {
    throw std::runtime_error("cannot write " + trace_path.string());
  }
  trace_out << trace_to_csv(outcome.trace);
  return record_path;
}

std::vector<ExperimentRecord> load_records(const std::filesystem::path& directory) {
  if (!std::filesystem::is_directory(directory)) {
    throw std::runtime_error("not a directory: " + directory.string());
  }
  std::vector<ExperimentRecord> records;
  for (const auto& entry : std::filesystem::directory_iterator(directory)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".json") {
      continue;
    }
    std::ifstream in(entry.path());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
      records.push_back(record_from_json(buffer.str()));
    } catch (const std::exception& e) {
      throw std::runtime_error(entry.path().string() + ": " + e.what());
    }
  }
  std::sort(records.begin(), records.end(),
            [](const ExperimentRecord& a, const ExperimentRecord& b) {
              return a.spec.name < b.spec.name;
            });
  return records;
}

std::map<std::string, ReferenceEntry> load_reference(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open reference file: " + path.string());
  }
  json j;
  in >> j;
  std::map<std::string, ReferenceEntry> reference;
  for (const auto& [name, value] : j.items()) {
    ReferenceEntry entry;
    entry.energy = value.at("energy").get<double>();
    if (value.contains("relative_error_pct") &&
        !value.at("relative_error_pct").is_null()) {
      entry.relative_error_pct = value.at("relative_error_pct").get<double>();
    }
    reference[name] = entry;
  }
  return reference;
}

std::string report_table(const std::vector<ExperimentRecord>& records,
                         const std::map<std::string, ReferenceEntry>& reference) {
  std::size_t name_width = 4;
  for (const ExperimentRecord& r : records) {
    name_width = std::max(name_width, r.spec.name.size());
  }
  const bool with_reference = !reference.empty();

  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(name_width)) << "name"
      << std::right << std::setw(14) << "energy" << std::setw(14) << "expected"
      << std::setw(10) << "err_pct" << std::setw(7) << "evals" << std::setw(6)
      << "rec" << std::setw(9) << "wall_s";
  if (with_reference) {
    out << std::setw(14) << "ref_energy" << std::setw(12) << "ref_err_pct";
  }
  out << '\n';

  auto number = [](double v, int precision) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(precision) << v;
    return s.str();
  };

  for (const ExperimentRecord& r : records) {
    out << std::left << std::setw(static_cast<int>(name_width)) << r.spec.name
        << std::right << std::setw(14) << number(r.computed_energy, 6)
        << std::setw(14)
        << (r.expected_energy ? number(*r.expected_energy, 6) : "-")
        << std::setw(10)
        << (r.relative_error_pct ? number(*r.relative_error_pct, 5) : "-")
        << std::setw(7) << r.evaluations << std::setw(6) << r.recursions_used
        << std::setw(9) << number(r.wall_seconds, 3);
    if (with_reference) {
      const auto it = reference.find(r.spec.name);
      if (it == reference.end()) {
        out << std::setw(14) << "-" << std::setw(12) << "-";
      } else {
        out << std::setw(14) << number(it->second.energy, 6) << std::setw(12)
            << (it->second.relative_error_pct
                    ? number(*it->second.relative_error_pct, 5)
                    : "-");
      }
    }
    out << '\n';
    if (!r.solver_converged) {
      out << "  warning: classical reference solve did not converge\n";
    }
  }
  return out.str();
}

std::vector<SolverBenchRow> bench_solver(std::size_t min_qubits,
                                         std::size_t max_qubits,
                                         std::uint64_t seed) {
  if (min_qubits < 3 || min_qubits > max_qubits || max_qubits > 24) {
    throw std::invalid_argument("bench_solver needs 3 <= min <= max <= 24");
  }
  std::vector<SolverBenchRow> rows;
  for (std::size_t n = min_qubits; n <= max_qubits; n += 2) {
    const PauliSum h = heisenberg(line_lattice(n, true, 1.0), HeisenbergParams{});
    LanczosOptions options;
    options.seed = seed;
    // Small systems solve in microseconds; take the best of a few runs so
    // timer noise does not hide the scaling trend.
    const int repeats = n <= 12 ? 3 : 1;
    SolverBenchRow row;
    row.num_qubits = n;
    row.wall_seconds = std::numeric_limits<double>::infinity();
    for (int r = 0; r < repeats; ++r) {
      const auto start = std::chrono::steady_clock::now();
      const EigenResult result = solve_iterative(h, options);
      row.wall_seconds = std::min(row.wall_seconds, elapsed_seconds(start));
      row.energy = result.ground_energy;
    }
    const std::size_t dim = std::size_t{1} << n;
    row.state_bytes = (std::min<std::size_t>(options.restart_dim, dim) + 3) * dim *
                      sizeof(std::complex<double>);
    rows.push_back(row);
  }
  return rows;
}

std::string solver_bench_to_csv(const std::vector<SolverBenchRow>& rows) {
  std::ostringstream out;
  out.precision(9);
  out << "num_qubits,wall_seconds,state_bytes,energy\n";
  for (const SolverBenchRow& row : rows) {
    out << row.num_qubits << ',' << std::fixed << std::setprecision(6)
        << row.wall_seconds << ',' << row.state_bytes << ','
        << std::setprecision(9) << row.energy << '\n';
  }
  return out.str();
}

}  // namespace lvqe
