#include "lvqe/vqe.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace lvqe {

double compute_relative_error(double expected, double value) {
  if (expected == 0.0) {
    throw std::invalid_argument("relative error needs a non-zero expected value");
  }
  return std::abs(value - expected) / std::abs(expected);
}

NftResult nft_minimize(const std::function<double(const std::vector<double>&)>& objective,
                       std::vector<double> x0, const NftOptions& options) {
  if (!objective) {
    throw std::invalid_argument("nft_minimize needs an objective");
  }
  if (x0.empty()) {
    throw std::invalid_argument("nft_minimize needs at least one parameter");
  }
  if (options.reset_interval < kResetPerSweep) {
    throw std::invalid_argument("bad reset interval");
  }
  const std::size_t n = x0.size();
  const std::size_t reset = options.reset_interval == kResetPerSweep
                                ? n
                                : static_cast<std::size_t>(options.reset_interval);
  const double half_pi = std::numbers::pi / 2.0;
  auto stopped = [&options] { return options.should_stop && options.should_stop(); };

  NftResult result;
  result.parameters = std::move(x0);
  auto& x = result.parameters;

  // Anchor evaluation; afterwards the cached value is carried analytically
  // and only refreshed on the reset schedule.
  double cached = objective(x);
  ++result.evaluations;
  result.value = cached;
  if (stopped()) {
    return result;
  }

  while (result.iterations < options.max_iter) {
    const std::size_t j = result.iterations % n;
    if (reset != 0 && result.iterations > 0 && result.iterations % reset == 0) {
      cached = objective(x);
      ++result.evaluations;
      result.value = cached;
      if (stopped()) {
        return result;
      }
    }

    const double original = x[j];
    x[j] = original + half_pi;
    const double z2 = objective(x);
    ++result.evaluations;
    result.value = z2;
    if (stopped()) {
      x[j] = original;
      return result;
    }

    x[j] = original - half_pi;
    const double z3 = objective(x);
    ++result.evaluations;
    result.value = z3;
    if (stopped()) {
      x[j] = original;
      return result;
    }

    // Fit f(t) = a cos(t - b) + c through the cached value z1 = f(original)
    // and the two probes, then move to the minimum at b + pi.
    const double z1 = cached;
    const double c = 0.5 * (z2 + z3);
    const double a_cos = z1 - c;
    const double a_sin = 0.5 * (z3 - z2);
    const double amplitude = std::hypot(a_cos, a_sin);
    if (amplitude > 1e-14) {
      const double b = original - std::atan2(a_sin, a_cos);
      x[j] = b + std::numbers::pi;
    } else {
      // Flat coordinate; leave it where it was.
      x[j] = original;
    }
    cached = c - amplitude;
    result.value = cached;
    ++result.iterations;
    if (stopped()) {
      return result;
    }
  }
  return result;
}

namespace {

std::vector<double> draw_initial_point(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> x(count);
  for (auto& value : x) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    value = u * std::numbers::pi / 4.0;
  }
  return x;
}

}  // namespace

VqeResult guided_vqe(const GuidedVqeConfig& config, const Circuit& ansatz,
                     const EnergyFn& energy, EnergyCallback callback) {
  if (!energy) {
    throw std::invalid_argument("guided_vqe needs an energy function");
  }
  if (config.lattice.empty()) {
    throw std::invalid_argument("guided_vqe needs a non-empty lattice");
  }
  if (ansatz.num_qubits() != model_num_qubits(config.model, config.lattice)) {
    throw std::invalid_argument("ansatz width does not match the Hamiltonian");
  }
  if (ansatz.num_parameters() == 0) {
    throw std::invalid_argument("ansatz has no parameters");
  }
  if (config.max_recursions < 0 || config.threshold_pct <= 0.0) {
    throw std::invalid_argument("bad guidance parameters");
  }

  const std::vector<double> x0 =
      config.initial_point ? *config.initial_point
                           : draw_initial_point(ansatz.num_parameters(), config.seed);
  if (x0.size() != ansatz.num_parameters()) {
    throw std::invalid_argument("initial point size does not match the ansatz");
  }

  double weight = config.initial_weight;
  PauliSum ham = get_hamiltonian(config.model, config.lattice, weight,
                                 config.hubbard_u);
  double ham_weight = weight;
  bool fix_pending = false;
  bool task_done = false;
  double last_value = 0.0;

  VqeResult result;

  auto objective = [&](const std::vector<double>& thetas) -> double {
    // Frozen after early stop: hand back the stored value, no estimate, no
    // trace growth.
    if (task_done) {
      return last_value;
    }
    // A bias correction requested by the previous evaluation lands here,
    // so it affects this evaluation onwards, never the one that asked.
    if (fix_pending) {
      ham = get_hamiltonian(config.model, config.lattice, weight, config.hubbard_u);
      ham_weight = weight;
      fix_pending = false;
    }
    const double used_weight = ham_weight;
    const double value = energy(ansatz, ham, thetas);
    last_value = value;

    if (config.expected_energy) {
      const double expected = *config.expected_energy;
      // Undershooting the target by more than the trigger while the weight
      // still has room above the floor: schedule a weight cut.
      if (value < expected &&
          std::abs(value) - std::abs(expected) > config.delta_trigger &&
          std::abs(weight) > config.weight_floor) {
        weight -= config.bias_step;
        fix_pending = true;
      }
      if (expected != 0.0 &&
          100.0 * compute_relative_error(expected, value) <= config.threshold_pct) {
        task_done = true;
      }
    }

    const std::size_t index = result.evaluations++;
    result.trace.push_back(TracePoint{index, value, used_weight});
    if (callback) {
      callback(index, value);
    }
    return value;
  };

  int recursions = 0;
  std::vector<double> start = x0;
  NftResult nft;
  while (true) {
    NftOptions nft_options;
    nft_options.max_iter = config.optimizer_max_iter;
    nft_options.reset_interval = config.nft_reset_interval;
    nft_options.should_stop = [&task_done] { return task_done; };
    nft = nft_minimize(objective, std::move(start), nft_options);

    if (!config.expected_energy || *config.expected_energy == 0.0 || task_done) {
      break;
    }
    const double expected = *config.expected_energy;
    const double error_pct = 100.0 * compute_relative_error(expected, nft.value);
    if (error_pct <= config.threshold_pct || recursions >= config.max_recursions) {
      break;
    }
    // Landed outside the band with recursion budget left: retune the weight
    // towards the target and optimize again.
    ++recursions;
    const double delta = std::abs(nft.value) - std::abs(expected);
    const double step = std::abs(delta) / 100.0 + config.recursion_base_step;
    weight += delta < 0.0 ? step : -step;
    ham = get_hamiltonian(config.model, config.lattice, weight, config.hubbard_u);
    ham_weight = weight;
    start = config.warm_start == WarmStart::FinalPoint ? nft.parameters : x0;
  }

  result.value = nft.value;
  result.thetas = std::move(nft.parameters);
  result.recursions_used = recursions;
  result.task_done = task_done;
  result.final_weight = weight;
  if (config.expected_energy && *config.expected_energy != 0.0) {
    result.relative_error_pct =
        100.0 * compute_relative_error(*config.expected_energy, result.value);
  }
  return result;
}

VqeResult guided_vqe(const GuidedVqeConfig& config, const Circuit& ansatz,
                     EnergyCallback callback) {
  Estimator estimator(config.estimator);
  return guided_vqe(
      config, ansatz,
      [&estimator](const Circuit& circuit, const PauliSum& h,
                   const std::vector<double>& thetas) {
        return estimator.estimate(circuit, h, thetas);
      },
      std::move(callback));
}

}  // namespace lvqe
