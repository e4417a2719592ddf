#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "lvqe/pauli.hpp"
#include "lvqe/sim.hpp"

namespace lvqe {

struct EigenResult {
  double ground_energy = 0.0;
  std::optional<StateVector> ground_state;
  // Matrix-vector products spent (0 for the dense route).
  std::size_t iterations = 0;
  // Explicitly recomputed ||h v - E v|| of the returned pair.
  double residual = 0.0;
  bool converged = false;
};

// Full eigendecomposition of the dense matrix; exact reference for small
// systems. Limited to 12 qubits by the dense representation.
EigenResult solve_dense(const PauliSum& h);

struct LanczosOptions {
  double tol = 1e-8;
  // Budget of matrix-vector products across restarts.
  std::size_t max_iter = 2000;
  std::uint64_t seed = 0;
  // Krylov basis size per restart cycle; memory is about
  // (restart_dim + 3) statevectors.
  std::size_t restart_dim = 40;
};

// Restarted Lanczos iteration with full reorthogonalization, matrix-free
// via apply(). Converged means the explicit residual of the returned pair
// is at most tol; otherwise the best estimate so far is returned with
// converged = false. Limited to 24 qubits.
EigenResult solve_iterative(const PauliSum& h, const LanczosOptions& options = {});

inline EigenResult solve_iterative(const PauliSum& h, double tol,
                                   std::size_t max_iter, std::uint64_t seed = 0) {
  return solve_iterative(h, LanczosOptions{tol, max_iter, seed, 40});
}

}  // namespace lvqe
