#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "lvqe/circuit.hpp"
#include "lvqe/hamiltonians.hpp"
#include "lvqe/lattice.hpp"
#include "lvqe/sim.hpp"

namespace lvqe {

// |value - expected| / |expected|, as a fraction. expected must be non-zero.
double compute_relative_error(double expected, double value);

// reset_interval: refresh the cached objective value every k coordinate
// updates. kResetPerSweep refreshes once per full parameter sweep, 1 is the
// conservative three-evaluations-per-update mode, 0 trusts the model fit
// for the whole run.
inline constexpr int kResetPerSweep = -1;

struct NftOptions {
  // One iteration moves one coordinate.
  std::size_t max_iter = 100;
  int reset_interval = kResetPerSweep;
  // Polled between objective calls; true aborts the run immediately and
  // keeps the last value seen. Lets the objective's owner end the search.
  std::function<bool()> should_stop;
};

struct NftResult {
  std::vector<double> parameters;
  double value = 0.0;
  std::size_t evaluations = 0;
  std::size_t iterations = 0;
};

// Sequential minimal optimization for objectives that are sinusoidal in
// each coordinate, f(t) = a cos(t - b) + c along coordinate j. Each update
// reconstructs (a, b, c) from the cached value plus probes at +-pi/2 and
// jumps to the minimum b + pi; the cached value continues as c - |a|
// without an extra evaluation.
NftResult nft_minimize(const std::function<double(const std::vector<double>&)>& objective,
                       std::vector<double> x0, const NftOptions& options = {});

// Restart point for guided recursions: the original random initial point
// (the published behaviour) or the previous run's final parameters.
enum class WarmStart { InitialPoint, FinalPoint };

struct GuidedVqeConfig {
  ModelKind model = ModelKind::Heisenberg;
  LatticeGraph lattice;
  double hubbard_u = 0.0;

  // Classical target energy. Unset disables every guidance branch; the
  // exact value 0 disables early stop and recursion but keeps bias
  // correction (the relative error would divide by zero).
  std::optional<double> expected_energy;

  // Early-stop band around the target, in percent.
  double threshold_pct = 1.0;
  // Uniform interaction weight the first Hamiltonian is built with.
  double initial_weight = 1.6;
  // Bias correction: while the estimate undershoots the target by more
  // than delta_trigger in magnitude and |weight| stays above weight_floor,
  // the next evaluation's Hamiltonian is rebuilt with weight - bias_step.
  double bias_step = 0.25;
  double delta_trigger = 10.0;
  double weight_floor = 1.0;
  // Post-optimization recursion: up to max_recursions restarts, each
  // retuning the weight by |delta|/100 + recursion_base_step towards the
  // target before optimizing again.
  int max_recursions = 5;
  double recursion_base_step = 0.3;
  WarmStart warm_start = WarmStart::InitialPoint;

  std::size_t optimizer_max_iter = 100;
  int nft_reset_interval = kResetPerSweep;
  EstimatorConfig estimator;

  // Seeds the pi/4-scaled uniform initial point draw.
  std::uint64_t seed = 0;
  // Explicit initial point, overriding the random draw.
  std::optional<std::vector<double>> initial_point;
};

// One objective evaluation: index, energy and the interaction weight of
// the Hamiltonian that produced it.
struct TracePoint {
  std::size_t eval_index = 0;
  double energy = 0.0;
  double weight = 0.0;

  friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

struct VqeResult {
  double value = 0.0;
  std::vector<double> thetas;
  // Present iff a non-zero expected energy was configured.
  std::optional<double> relative_error_pct;
  int recursions_used = 0;
  // Fresh objective evaluations; equals trace.size().
  std::size_t evaluations = 0;
  // True when the run ended inside the early-stop band.
  bool task_done = false;
  // Interaction weight after the last retune.
  double final_weight = 0.0;
  std::vector<TracePoint> trace;
};

using EnergyCallback = std::function<void(std::size_t eval_index, double energy)>;
// Pluggable energy backend, mainly a test seam; the default builds an
// Estimator from config.estimator.
using EnergyFn = std::function<double(const Circuit& ansatz, const PauliSum& h,
                                      const std::vector<double>& thetas)>;

// Variational search that steers the Hamiltonian towards a classically
// known target energy: the interaction weight starts deliberately biased
// (initial_weight), gets corrected between evaluations while estimates
// undershoot the target, stops early inside the threshold band, and
// retunes + reoptimizes up to max_recursions times when the optimizer
// lands outside it. Faithful to its published form, including quirks: a
// mid-run weight change shifts the optimizer's objective under it, and the
// final parameters may not reproduce value once task_done froze the run.
VqeResult guided_vqe(const GuidedVqeConfig& config, const Circuit& ansatz,
                     const EnergyFn& energy, EnergyCallback callback = {});

VqeResult guided_vqe(const GuidedVqeConfig& config, const Circuit& ansatz,
                     EnergyCallback callback = {});

}  // namespace lvqe
