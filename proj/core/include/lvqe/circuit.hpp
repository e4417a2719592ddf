#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace lvqe {

enum class GateKind { RY, RZ, CX };

// One gate in program order. Rotations either reference a parameter slot
// (parameter >= 0) or carry a bound angle (parameter < 0).
struct Gate {
  GateKind kind = GateKind::RY;
  std::uint32_t target = 0;
  std::uint32_t control = 0;  // CX only
  int parameter = -1;
  double angle = 0.0;

  static Gate ry(std::uint32_t qubit, int parameter_slot);
  static Gate ry_bound(std::uint32_t qubit, double angle);
  static Gate rz(std::uint32_t qubit, int parameter_slot);
  static Gate rz_bound(std::uint32_t qubit, double angle);
  static Gate cx(std::uint32_t control, std::uint32_t target);

  bool is_rotation() const { return kind != GateKind::CX; }
  bool is_parameterized() const { return is_rotation() && parameter >= 0; }

  friend bool operator==(const Gate&, const Gate&) = default;
};

// Gate list on a fixed qubit count. num_parameters is one past the highest
// slot referenced; builders hand out slots densely so every slot in
// [0, num_parameters) is used.
class Circuit {
 public:
  explicit Circuit(std::size_t num_qubits);

  void push(const Gate& gate);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t num_parameters() const { return num_parameters_; }
  const std::vector<Gate>& gates() const { return gates_; }

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  std::size_t num_qubits_ = 0;
  std::size_t num_parameters_ = 0;
  std::vector<Gate> gates_;
};

enum class Entanglement { Linear, Full };

// Hardware-efficient ansatz: reps + 1 rotation layers (RY on every qubit,
// then RZ on every qubit), a CX entangler layer between consecutive
// rotation layers. Linear entanglement chains CX(q, q+1); Full pairs every
// control with every higher target. 2 * num_qubits * (reps + 1) parameters.
Circuit efficient_su2(std::size_t num_qubits, std::size_t reps = 1,
                      Entanglement entanglement = Entanglement::Linear);

// Copy with every parameter slot replaced by its bound angle.
Circuit bind(const Circuit& circuit, std::span<const double> parameters);

// Binds, then peephole-simplifies: adjacent same-axis rotations on a qubit
// merge (angles summed, wrapped to the 4 pi rotation period), rotations
// with angle 0 drop, adjacent identical CX pairs cancel. The unitary is
// preserved exactly, global phase included. Idempotent.
Circuit reduce(const Circuit& circuit, std::span<const double> parameters);

struct GateMetrics {
  std::size_t cx_count = 0;
  std::size_t depth = 0;
  std::size_t parameter_count = 0;

  friend bool operator==(const GateMetrics&, const GateMetrics&) = default;
};

GateMetrics gate_metrics(const Circuit& circuit);

// One gate per line, e.g. "RY q3 p7", "RZ q0 1.5707963", "CX q0 q1".
std::string to_text(const Circuit& circuit);

}  // namespace lvqe
