#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "lvqe/circuit.hpp"
#include "lvqe/pauli.hpp"

namespace lvqe {

struct StateVector {
  std::size_t num_qubits = 0;
  std::vector<std::complex<double>> amplitudes;

  static StateVector zero_state(std::size_t num_qubits);
  double norm() const;
};

// Simple device noise: each measured qubit flips independently in the
// readout, and each CX is followed by a uniformly random two-qubit Pauli
// with the given probability (depolarizing channel, sampled per shot).
struct NoiseModel {
  double readout_flip_prob = 0.02;
  double cx_depolarizing_prob = 0.01;
};

enum class EstimatorMode { Exact, Shots };

struct EstimatorConfig {
  EstimatorMode mode = EstimatorMode::Exact;
  std::size_t shots = 1024;
  std::optional<NoiseModel> noise;  // Shots mode only; Exact ignores it
  std::uint64_t seed = 0;
};

// |0..0> evolved through the circuit. parameters bind the circuit's slots
// and must match num_parameters exactly.
StateVector run_circuit(const Circuit& circuit, std::span<const double> parameters);

// Expectation value backend. Exact mode contracts the statevector with the
// observable; Shots mode measures each Pauli term in its own rotated basis
// and averages sampled eigenvalues, optionally through the noise model.
// One estimator instance owns one seeded RNG stream, so a fixed seed and
// call sequence reproduces bit-identical results.
class Estimator {
 public:
  explicit Estimator(EstimatorConfig config);

  double estimate(const Circuit& circuit, const PauliSum& observable,
                  std::span<const double> parameters);

  const EstimatorConfig& config() const { return config_; }

 private:
  double estimate_shots(const Circuit& circuit, const PauliSum& observable,
                        std::span<const double> parameters);

  EstimatorConfig config_;
  std::mt19937_64 rng_;
};

// One-off convenience wrapper around a freshly seeded Estimator.
double estimate(const Circuit& circuit, const PauliSum& observable,
                std::span<const double> parameters, const EstimatorConfig& config);

}  // namespace lvqe
