#include "lvqe/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace lvqe {

namespace {

constexpr double kAngleTolerance = 1e-12;
// RY and RZ have matrix period 4 pi (a 2 pi turn flips the global sign).
constexpr double kRotationPeriod = 4.0 * std::numbers::pi;

}  // namespace

Gate Gate::ry(std::uint32_t qubit, int parameter_slot) {
  if (parameter_slot < 0) {
    throw std::invalid_argument("parameter slot must be non-negative");
  }
  return Gate{GateKind::RY, qubit, 0, parameter_slot, 0.0};
}

Gate Gate::ry_bound(std::uint32_t qubit, double angle) {
  return Gate{GateKind::RY, qubit, 0, -1, angle};
}

Gate Gate::rz(std::uint32_t qubit, int parameter_slot) {
  if (parameter_slot < 0) {
    throw std::invalid_argument("parameter slot must be non-negative");
  }
  return Gate{GateKind::RZ, qubit, 0, parameter_slot, 0.0};
}

Gate Gate::rz_bound(std::uint32_t qubit, double angle) {
  return Gate{GateKind::RZ, qubit, 0, -1, angle};
}

Gate Gate::cx(std::uint32_t control, std::uint32_t target) {
  return Gate{GateKind::CX, target, control, -1, 0.0};
}

Circuit::Circuit(std::size_t num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits_ == 0 || num_qubits_ > 30) {
    throw std::invalid_argument("qubit count must be in [1, 30]");
  }
}

void Circuit::push(const Gate& gate) {
  if (gate.target >= num_qubits_) {
    throw std::invalid_argument("gate target out of range");
  }
  if (gate.kind == GateKind::CX) {
    if (gate.control >= num_qubits_) {
      throw std::invalid_argument("gate control out of range");
    }
    if (gate.control == gate.target) {
      throw std::invalid_argument("CX control and target must differ");
    }
  }
  if (gate.is_parameterized()) {
    num_parameters_ = std::max(num_parameters_,
                               static_cast<std::size_t>(gate.parameter) + 1);
  }
  gates_.push_back(gate);
}

Circuit efficient_su2(std::size_t num_qubits, std::size_t reps,
                      Entanglement entanglement) {
  Circuit c(num_qubits);
  int slot = 0;
  auto rotation_layer = [&] {
    for (std::uint32_t q = 0; q < num_qubits; ++q) {
      c.push(Gate::ry(q, slot++));
    }
    for (std::uint32_t q = 0; q < num_qubits; ++q) {
      c.push(Gate::rz(q, slot++));
    }
  };
  auto entangler_layer = [&] {
    if (entanglement == Entanglement::Linear) {
      for (std::uint32_t q = 0; q + 1 < num_qubits; ++q) {
        c.push(Gate::cx(q, q + 1));
      }
    } else {
      for (std::uint32_t a = 0; a + 1 < num_qubits; ++a) {
        for (std::uint32_t b = a + 1; b < num_qubits; ++b) {
          c.push(Gate::cx(a, b));
        }
      }
    }
  };
  rotation_layer();
  for (std::size_t r = 0; r < reps; ++r) {
    entangler_layer();
    rotation_layer();
  }
  return c;
}

Circuit bind(const Circuit& circuit, std::span<const double> parameters) {
  if (parameters.size() != circuit.num_parameters()) {
    throw std::invalid_argument("parameter count does not match circuit");
  }
  Circuit out(circuit.num_qubits());
  for (Gate g : circuit.gates()) {
    if (g.is_parameterized()) {
      g.angle = parameters[static_cast<std::size_t>(g.parameter)];
      g.parameter = -1;
    }
    out.push(g);
  }
  return out;
}

Circuit reduce(const Circuit& circuit, std::span<const double> parameters) {
  const Circuit bound = bind(circuit, parameters);

  // Peephole pass over the bound gates: alive[i] marks survivors, last[q]
  // is a stack of surviving gate indices touching qubit q. Merging a
  // rotation to zero (or cancelling a CX pair) pops the stacks, which can
  // expose further merges behind it in the same pass.
  std::vector<Gate> gates;
  std::vector<char> alive;
  std::vector<std::vector<std::size_t>> last(circuit.num_qubits());

  auto top = [&](std::uint32_t q) -> long {
    return last[q].empty() ? -1 : static_cast<long>(last[q].back());
  };
  auto wrap = [](double angle) { return std::remainder(angle, kRotationPeriod); };

  for (const Gate& g : bound.gates()) {
    if (g.is_rotation()) {
      const long i = top(g.target);
      if (i >= 0 && alive[i] && gates[i].kind == g.kind &&
          gates[i].target == g.target) {
        const double merged = wrap(gates[i].angle + g.angle);
        if (std::abs(merged) < kAngleTolerance) {
          alive[i] = 0;
          last[g.target].pop_back();
        } else {
          gates[i].angle = merged;
        }
        continue;
      }
      if (std::abs(wrap(g.angle)) < kAngleTolerance) {
        continue;
      }
      Gate wrapped = g;
      wrapped.angle = wrap(g.angle);
      gates.push_back(wrapped);
      alive.push_back(1);
      last[g.target].push_back(gates.size() - 1);
    } else {
      const long i = top(g.control);
      const long j = top(g.target);
      if (i >= 0 && i == j && alive[i] && gates[i] == g) {
        alive[i] = 0;
        last[g.control].pop_back();
        last[g.target].pop_back();
        continue;
      }
      gates.push_back(g);
      alive.push_back(1);
      last[g.control].push_back(gates.size() - 1);
      last[g.target].push_back(gates.size() - 1);
    }
  }

  Circuit out(circuit.num_qubits());
  for (std::size_t i = 0; i < gates.size(); ++i) {
    if (alive[i]) {
      out.push(gates[i]);
    }
  }
  return out;
}

GateMetrics gate_metrics(const Circuit& circuit) {
  GateMetrics m;
  m.parameter_count = circuit.num_parameters();
  std::vector<std::size_t> frontier(circuit.num_qubits(), 0);
  for (const Gate& g : circuit.gates()) {
    if (g.kind == GateKind::CX) {
      ++m.cx_count;
      const std::size_t layer =
          std::max(frontier[g.control], frontier[g.target]) + 1;
      frontier[g.control] = layer;
      frontier[g.target] = layer;
    } else {
      frontier[g.target] += 1;
    }
  }
  m.depth = *std::max_element(frontier.begin(), frontier.end());
  return m;
}

std::string to_text(const Circuit& circuit) {
  std::ostringstream out;
  out.precision(12);
  for (const Gate& g : circuit.gates()) {
    switch (g.kind) {
      case GateKind::RY:
      case GateKind::RZ:
        out << (g.kind == GateKind::RY ? "RY" : "RZ") << " q" << g.target;
        if (g.parameter >= 0) {
          out << " p" << g.parameter;
        } else {
          out << ' ' << g.angle;
        }
        break;
      case GateKind::CX:
        out << "CX q" << g.control << " q" << g.target;
        break;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace lvqe
