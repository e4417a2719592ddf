#include "lvqe/sim.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lvqe {

namespace {

using Amps = std::vector<std::complex<double>>;
using Mat2 = std::array<std::complex<double>, 4>;  // row major

constexpr std::complex<double> kI{0.0, 1.0};

void apply_1q(Amps& a, std::uint32_t qubit, const Mat2& m) {
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  for (std::uint64_t k = 0; k < a.size(); ++k) {
    if ((k & bit) == 0) {
      const std::complex<double> a0 = a[k];
      const std::complex<double> a1 = a[k | bit];
      a[k] = m[0] * a0 + m[1] * a1;
      a[k | bit] = m[2] * a0 + m[3] * a1;
    }
  }
}

void apply_cx(Amps& a, std::uint32_t control, std::uint32_t target) {
  const std::uint64_t cbit = std::uint64_t{1} << control;
  const std::uint64_t tbit = std::uint64_t{1} << target;
  for (std::uint64_t k = 0; k < a.size(); ++k) {
    if ((k & cbit) != 0 && (k & tbit) == 0) {
      std::swap(a[k], a[k | tbit]);
    }
  }
}

Mat2 ry_matrix(double angle) {
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  return {c, -s, s, c};
}

Mat2 rz_matrix(double angle) {
  return {std::exp(-kI * (angle / 2.0)), 0.0, 0.0, std::exp(kI * (angle / 2.0))};
}

// Maps the measurement basis of one Pauli factor onto Z: H for X, and
// (1/sqrt2) [[1, -i], [1, i]] (H after S†) for Y.
constexpr double kInvSqrt2 = 0.70710678118654752440;
const Mat2 kHadamard = {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
const Mat2 kYBasis = {kInvSqrt2, -kI * kInvSqrt2, kInvSqrt2, kI * kInvSqrt2};

const std::array<Mat2, 4> kPauli1q = {
    Mat2{1, 0, 0, 1}, Mat2{0, 1, 1, 0}, Mat2{0, -kI, kI, 0}, Mat2{1, 0, 0, -1}};

double gate_angle(const Gate& g, std::span<const double> parameters) {
  return g.parameter >= 0 ? parameters[static_cast<std::size_t>(g.parameter)]
                          : g.angle;
}

void check_parameters(const Circuit& circuit, std::span<const double> parameters) {
  if (parameters.size() != circuit.num_parameters()) {
    throw std::invalid_argument("parameter count does not match circuit");
  }
}

void apply_gate(Amps& a, const Gate& g, std::span<const double> parameters) {
  switch (g.kind) {
    case GateKind::RY:
      apply_1q(a, g.target, ry_matrix(gate_angle(g, parameters)));
      break;
    case GateKind::RZ:
      apply_1q(a, g.target, rz_matrix(gate_angle(g, parameters)));
      break;
    case GateKind::CX:
      apply_cx(a, g.control, g.target);
      break;
  }
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Rotates every qubit in the term's support into the Z basis.
void rotate_to_z_basis(Amps& a, const PauliString& word) {
  for (std::size_t q = 0; q < word.num_qubits(); ++q) {
    const bool x = (word.x_mask() >> q) & 1;
    const bool z = (word.z_mask() >> q) & 1;
    if (x) {
      apply_1q(a, static_cast<std::uint32_t>(q), z ? kYBasis : kHadamard);
    }
  }
}

std::uint64_t sample_bitstring(const Amps& a, double u) {
  double acc = 0.0;
  for (std::uint64_t k = 0; k < a.size(); ++k) {
    acc += std::norm(a[k]);
    if (u < acc) {
      return k;
    }
  }
  return a.size() - 1;
}

std::uint64_t flip_readout(std::uint64_t bits, std::uint64_t support,
                           double flip_prob, std::mt19937_64& rng) {
  if (flip_prob <= 0.0) {
    return bits;
  }
  for (std::uint64_t mask = support; mask != 0; mask &= mask - 1) {
    if (uniform01(rng) < flip_prob) {
      bits ^= mask & ~(mask - 1);
    }
  }
  return bits;
}

double term_eigenvalue(std::uint64_t bits, std::uint64_t support) {
  return (std::popcount(bits & support) & 1) ? -1.0 : 1.0;
}

}  // namespace

StateVector StateVector::zero_state(std::size_t num_qubits) {
  if (num_qubits == 0 || num_qubits > 30) {
    throw std::invalid_argument("qubit count must be in [1, 30]");
  }
  StateVector sv;
  sv.num_qubits = num_qubits;
  sv.amplitudes.assign(std::size_t{1} << num_qubits, 0.0);
  sv.amplitudes[0] = 1.0;
  return sv;
}

double StateVector::norm() const {
  double acc = 0.0;
  for (const auto& a : amplitudes) {
    acc += std::norm(a);
  }
  return std::sqrt(acc);
}

StateVector run_circuit(const Circuit& circuit, std::span<const double> parameters) {
  check_parameters(circuit, parameters);
  StateVector sv = StateVector::zero_state(circuit.num_qubits());
  for (const Gate& g : circuit.gates()) {
    apply_gate(sv.amplitudes, g, parameters);
  }
  return sv;
}

Estimator::Estimator(EstimatorConfig config)
    : config_(config), rng_(config.seed) {
  if (config_.mode == EstimatorMode::Shots && config_.shots == 0) {
    throw std::invalid_argument("shots must be positive");
  }
  if (config_.noise) {
    const auto& n = *config_.noise;
    if (n.readout_flip_prob < 0.0 || n.readout_flip_prob > 1.0 ||
        n.cx_depolarizing_prob < 0.0 || n.cx_depolarizing_prob > 1.0) {
      throw std::invalid_argument("noise probabilities must be in [0, 1]");
    }
  }
}

double Estimator::estimate(const Circuit& circuit, const PauliSum& observable,
                           std::span<const double> parameters) {
  if (observable.num_qubits() != circuit.num_qubits()) {
    throw std::invalid_argument("observable and circuit qubit counts differ");
  }
  if (!observable.is_hermitian()) {
    throw std::invalid_argument("estimate needs a Hermitian observable");
  }
  if (config_.mode == EstimatorMode::Exact) {
    const StateVector sv = run_circuit(circuit, parameters);
    return expectation(observable, sv.amplitudes);
  }
  return estimate_shots(circuit, observable, parameters);
}

double Estimator::estimate_shots(const Circuit& circuit, const PauliSum& observable,
                                 std::span<const double> parameters) {
  check_parameters(circuit, parameters);
  const NoiseModel noise = config_.noise.value_or(NoiseModel{0.0, 0.0});
  const bool noisy_gates = noise.cx_depolarizing_prob > 0.0;

  // Noiseless gates let every term reuse one prepared state; a depolarizing
  // channel makes each shot its own trajectory.
  StateVector prepared;
  if (!noisy_gates) {
    prepared = run_circuit(circuit, parameters);
  }

  double total = 0.0;
  for (const PauliTerm& term : observable.terms()) {
    const double coefficient = term.coefficient.real();
    if (term.word.is_identity()) {
      total += coefficient;
      continue;
    }
    const std::uint64_t support = term.word.support();
    double eigenvalue_sum = 0.0;
    if (!noisy_gates) {
      Amps rotated = prepared.amplitudes;
      rotate_to_z_basis(rotated, term.word);
      for (std::size_t s = 0; s < config_.shots; ++s) {
        std::uint64_t bits = sample_bitstring(rotated, uniform01(rng_));
        bits = flip_readout(bits, support, noise.readout_flip_prob, rng_);
        eigenvalue_sum += term_eigenvalue(bits, support);
      }
    } else {
      for (std::size_t s = 0; s < config_.shots; ++s) {
        StateVector sv = StateVector::zero_state(circuit.num_qubits());
        for (const Gate& g : circuit.gates()) {
          apply_gate(sv.amplitudes, g, parameters);
          if (g.kind == GateKind::CX &&
              uniform01(rng_) < noise.cx_depolarizing_prob) {
            const auto pauli = static_cast<std::size_t>(uniform01(rng_) * 16.0);
            apply_1q(sv.amplitudes, g.control, kPauli1q[pauli & 3]);
            apply_1q(sv.amplitudes, g.target, kPauli1q[(pauli >> 2) & 3]);
          }
        }
        rotate_to_z_basis(sv.amplitudes, term.word);
        std::uint64_t bits = sample_bitstring(sv.amplitudes, uniform01(rng_));
        bits = flip_readout(bits, support, noise.readout_flip_prob, rng_);
        eigenvalue_sum += term_eigenvalue(bits, support);
      }
    }
    total += coefficient * eigenvalue_sum / static_cast<double>(config_.shots);
  }
  return total;
}

double estimate(const Circuit& circuit, const PauliSum& observable,
                std::span<const double> parameters, const EstimatorConfig& config) {
  Estimator estimator(config);
  return estimator.estimate(circuit, observable, parameters);
}

}  // namespace lvqe
