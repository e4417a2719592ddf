#pragma once

#include <cstddef>
#include <string>

#include "lvqe/fermion.hpp"
#include "lvqe/lattice.hpp"
#include "lvqe/pauli.hpp"

namespace lvqe {

enum class ModelKind { Heisenberg, FermiHubbard };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

enum class FieldAxis { X, Y, Z };

struct HeisenbergParams {
  // Multiplies every edge weight; the uniform interaction knob.
  double coupling_scale = 1.0;
  double field_h = 0.0;
  FieldAxis field_axis = FieldAxis::Z;
};

struct HubbardParams {
  // Multiplies every edge weight in the kinetic term.
  double hopping_t = 1.0;
  double onsite_u = 0.0;
};

// H = sum_edges (coupling_scale * w_ij) (X_i X_j + Y_i Y_j + Z_i Z_j)
//     + field_h * sum_i P_i   with P the field axis.
// One qubit per lattice site.
PauliSum heisenberg(const LatticeGraph& lattice, const HeisenbergParams& params);

// Hubbard model on the lattice, two spin modes per site (block layout,
// see mode_index): kinetic part -hopping_t * w_ij sum_spin (c†_i c_j + c†_j c_i),
// interaction onsite_u * sum_i n_i_up n_i_down.
FermionicOp fermi_hubbard(const LatticeGraph& lattice, const HubbardParams& params);

// Qubit count of the model on this lattice: one per site for Heisenberg,
// two per site for Fermi-Hubbard.
std::size_t model_num_qubits(ModelKind model, const LatticeGraph& lattice);

// Qubit Hamiltonian with a single uniform interaction knob, the form the
// guided optimizer retunes between evaluations. weight multiplies every
// edge weight (Heisenberg coupling or Hubbard hopping); hubbard_u is used
// by the Fermi-Hubbard model only.
PauliSum get_hamiltonian(ModelKind model, const LatticeGraph& lattice,
                         double weight, double hubbard_u = 0.0);

}  // namespace lvqe
