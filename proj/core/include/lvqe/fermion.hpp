#pragma once

#include <complex>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lvqe/pauli.hpp"

namespace lvqe {

// One creation (dagger) or annihilation operator acting on a mode.
struct FermionicFactor {
  std::uint32_t mode = 0;
  bool dagger = false;

  friend bool operator==(const FermionicFactor&, const FermionicFactor&) = default;
  friend auto operator<=>(const FermionicFactor&, const FermionicFactor&) = default;
};

// coefficient * product of factors, applied right to left. An empty factor
// list is the identity.
struct FermionicTerm {
  std::complex<double> coefficient;
  std::vector<FermionicFactor> factors;
};

// Sum of fermionic operator products on a fixed number of modes.
class FermionicOp {
 public:
  explicit FermionicOp(std::size_t num_modes);

  void add_term(std::complex<double> coefficient,
                std::vector<FermionicFactor> factors);

  std::size_t num_modes() const { return num_modes_; }
  const std::vector<FermionicTerm>& terms() const { return terms_; }

  std::string to_string() const;

 private:
  std::size_t num_modes_ = 0;
  std::vector<FermionicTerm> terms_;
};

// Canonical form under {c_p, c†_q} = δ_pq: every term has all creation
// operators before annihilation operators, each group in ascending mode
// order, like terms combined, coefficients below 1e-12 dropped. Terms with
// a repeated creation (or annihilation) operator vanish. Idempotent.
FermionicOp normal_order(const FermionicOp& op);

// Qubit image of the operator, one qubit per mode:
//   c†_p -> 0.5 (X_p - i Y_p) Z_{p-1} ... Z_0,   c_p its adjoint.
// The Z string keeps the anticommutation relations intact.
PauliSum jordan_wigner(const FermionicOp& op);

enum class Spin { Up, Down };

// Block spin layout: modes [0, num_sites) are spin up, [num_sites, 2n) down.
std::size_t mode_index(std::size_t site, Spin spin, std::size_t num_sites);

}  // namespace lvqe
