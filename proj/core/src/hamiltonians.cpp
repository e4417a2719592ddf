#include "lvqe/hamiltonians.hpp"

#include <stdexcept>

namespace lvqe {

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Heisenberg: return "heisenberg";
    case ModelKind::FermiHubbard: return "fermi-hubbard";
  }
  throw std::invalid_argument("unknown model kind");
}

ModelKind model_kind_from_string(const std::string& name) {
  if (name == "heisenberg") return ModelKind::Heisenberg;
  if (name == "fermi-hubbard") return ModelKind::FermiHubbard;
  throw std::invalid_argument("unknown model kind: " + name);
}

PauliSum heisenberg(const LatticeGraph& lattice, const HeisenbergParams& params) {
  if (lattice.empty()) {
    throw std::invalid_argument("heisenberg needs a non-empty lattice");
  }
  if (params.coupling_scale == 0.0) {
    throw std::invalid_argument("heisenberg coupling scale must be non-zero");
  }
  const std::size_t n = lattice.num_vertices();
  PauliSum h(n);
  for (const Edge& e : lattice.edges()) {
    const double coupling = params.coupling_scale * e.weight;
    const std::uint64_t bu = std::uint64_t{1} << e.u;
    const std::uint64_t bv = std::uint64_t{1} << e.v;
    h.add_term(PauliString(n, bu | bv, 0), coupling);        // XX
    h.add_term(PauliString(n, bu | bv, bu | bv), coupling);  // YY
    h.add_term(PauliString(n, 0, bu | bv), coupling);        // ZZ
  }
  if (params.field_h != 0.0) {
    for (std::size_t q = 0; q < n; ++q) {
      const std::uint64_t bit = std::uint64_t{1} << q;
      const std::uint64_t x = params.field_axis == FieldAxis::Z ? 0 : bit;
      const std::uint64_t z = params.field_axis == FieldAxis::X ? 0 : bit;
      h.add_term(PauliString(n, x, z), params.field_h);
    }
  }
  return h;
}

FermionicOp fermi_hubbard(const LatticeGraph& lattice, const HubbardParams& params) {
  if (lattice.empty()) {
    throw std::invalid_argument("fermi_hubbard needs a non-empty lattice");
  }
  const std::size_t sites = lattice.num_vertices();
  FermionicOp op(2 * sites);
  for (const Edge& e : lattice.edges()) {
    const double t = params.hopping_t * e.weight;
    for (Spin spin : {Spin::Up, Spin::Down}) {
      const auto i = static_cast<std::uint32_t>(mode_index(e.u, spin, sites));
      const auto j = static_cast<std::uint32_t>(mode_index(e.v, spin, sites));
      op.add_term(-t, {{i, true}, {j, false}});
      op.add_term(-t, {{j, true}, {i, false}});
    }
  }
  if (params.onsite_u != 0.0) {
    for (std::uint32_t s = 0; s < sites; ++s) {
      const auto up = static_cast<std::uint32_t>(mode_index(s, Spin::Up, sites));
      const auto dn = static_cast<std::uint32_t>(mode_index(s, Spin::Down, sites));
      op.add_term(params.onsite_u,
                  {{up, true}, {up, false}, {dn, true}, {dn, false}});
    }
  }
  return op;
}

std::size_t model_num_qubits(ModelKind model, const LatticeGraph& lattice) {
  return model == ModelKind::Heisenberg ? lattice.num_vertices()
                                        : 2 * lattice.num_vertices();
}

PauliSum get_hamiltonian(ModelKind model, const LatticeGraph& lattice,
                         double weight, double hubbard_u) {
  switch (model) {
    case ModelKind::Heisenberg:
      return heisenberg(lattice, HeisenbergParams{weight, 0.0, FieldAxis::Z});
    case ModelKind::FermiHubbard:
      return jordan_wigner(
          fermi_hubbard(lattice, HubbardParams{weight, hubbard_u}));
  }
  throw std::invalid_argument("unknown model kind");
}

}  // namespace lvqe
