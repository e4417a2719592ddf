#include "lvqe/solver.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

namespace lvqe {

namespace {

using Amps = std::vector<std::complex<double>>;

std::complex<double> dot(const Amps& a, const Amps& b) {
  std::complex<double> acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc += std::conj(a[i]) * b[i];
  }
  return acc;
}

double norm(const Amps& a) { return std::sqrt(std::abs(dot(a, a))); }

void axpy(Amps& y, std::complex<double> alpha, const Amps& x) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    y[i] += alpha * x[i];
  }
}

void scale_vec(Amps& a, double factor) {
  for (auto& v : a) {
    v *= factor;
  }
}

double explicit_residual(const PauliSum& h, const Amps& v, double theta,
                         Amps& scratch) {
  apply_into(h, v, scratch);
  axpy(scratch, -theta, v);
  return norm(scratch);
}

// Lowest eigenpair of the symmetric tridiagonal matrix with diagonal alpha
// and off-diagonal beta.
std::pair<double, Eigen::VectorXd> tridiag_lowest(const std::vector<double>& alpha,
                                                  const std::vector<double>& beta) {
  const auto m = static_cast<Eigen::Index>(alpha.size());
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    t(i, i) = alpha[static_cast<std::size_t>(i)];
    if (i + 1 < m) {
      t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
  return {es.eigenvalues()(0), es.eigenvectors().col(0)};
}

}  // namespace

EigenResult solve_dense(const PauliSum& h) {
  if (h.num_qubits() > 12) {
    throw std::invalid_argument("solve_dense is limited to 12 qubits");
  }
  if (!h.is_hermitian()) {
    throw std::invalid_argument("solve_dense needs a Hermitian operator");
  }
  const Eigen::MatrixXcd mat = to_dense(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(mat);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("dense eigendecomposition failed");
  }

  EigenResult result;
  result.ground_energy = es.eigenvalues()(0);
  StateVector sv;
  sv.num_qubits = h.num_qubits();
  sv.amplitudes.assign(es.eigenvectors().col(0).data(),
                       es.eigenvectors().col(0).data() + mat.rows());
  Amps scratch;
  result.residual =
      explicit_residual(h, sv.amplitudes, result.ground_energy, scratch);
  result.ground_state = std::move(sv);
  result.iterations = 0;
  result.converged = true;
  return result;
}

EigenResult solve_iterative(const PauliSum& h, const LanczosOptions& options) {
  if (h.num_qubits() > 24) {
    throw std::invalid_argument("solve_iterative is limited to 24 qubits");
  }
  if (!h.is_hermitian()) {
    throw std::invalid_argument("solve_iterative needs a Hermitian operator");
  }
  if (options.tol <= 0.0 || options.max_iter == 0 || options.restart_dim < 2) {
    throw std::invalid_argument("bad Lanczos options");
  }

  const std::size_t dim = std::size_t{1} << h.num_qubits();
  const std::size_t m = std::min<std::size_t>(options.restart_dim, dim);

  // Gaussian start vector (Box-Muller over the estimator's uniform scheme)
  // so runs are reproducible across standard libraries.
  std::mt19937_64 rng(options.seed);
  auto uniform = [&rng] {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
  };
  Amps v(dim);
  for (auto& a : v) {
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double phi = 2.0 * std::numbers::pi * uniform();
    a = {r * std::cos(phi), r * std::sin(phi)};
  }
  scale_vec(v, 1.0 / norm(v));

  EigenResult best;
  best.ground_energy = 0.0;
  best.residual = std::numeric_limits<double>::infinity();
  best.converged = false;

  std::size_t matvecs = 0;
  Amps scratch;
  std::vector<Amps> basis;
  std::vector<double> alpha;
  std::vector<double> beta;

  while (matvecs < options.max_iter) {
    basis.clear();
    alpha.clear();
    beta.clear();
    basis.push_back(v);

    bool breakdown = false;
    for (std::size_t j = 0; j < m && matvecs < options.max_iter; ++j) {
      apply_into(h, basis[j], scratch);
      ++matvecs;
      Amps w = scratch;
      alpha.push_back(dot(basis[j], w).real());
      axpy(w, -alpha[j], basis[j]);
      if (j > 0) {
        axpy(w, -beta[j - 1], basis[j - 1]);
      }
      // Full reorthogonalization, two passes, keeps the basis numerically
      // orthogonal even for tightly clustered spectra.
      for (int pass = 0; pass < 2; ++pass) {
        for (const Amps& u : basis) {
          axpy(w, -dot(u, w), u);
        }
      }
      const double b = norm(w);
      if (b < 1e-12 || j + 1 == m) {
        breakdown = b < 1e-12;
        break;
      }
      beta.push_back(b);
      scale_vec(w, 1.0 / b);
      basis.push_back(std::move(w));
    }

    // Rayleigh-Ritz on the Krylov subspace, then restart from the Ritz
    // vector. The residual is always recomputed explicitly.
    const auto [theta, y] = tridiag_lowest(alpha, beta);
    Amps ritz(dim, 0.0);
    for (std::size_t j = 0; j < basis.size(); ++j) {
      axpy(ritz, y(static_cast<Eigen::Index>(j)), basis[j]);
    }
    scale_vec(ritz, 1.0 / norm(ritz));

    const double residual = explicit_residual(h, ritz, theta, scratch);
    if (residual < best.residual) {
      best.ground_energy = theta;
      best.residual = residual;
      StateVector sv;
      sv.num_qubits = h.num_qubits();
      sv.amplitudes = ritz;
      best.ground_state = std::move(sv);
    }
    best.iterations = matvecs;
    if (residual <= options.tol) {
      best.converged = true;
      return best;
    }
    if (breakdown) {
      // Invariant subspace that still misses the tolerance: restart from a
      // perturbed vector rather than looping on the same space.
      for (auto& a : ritz) {
        a += 1e-8 * std::complex<double>(uniform() - 0.5, uniform() - 0.5);
      }
      scale_vec(ritz, 1.0 / norm(ritz));
    }
    v = std::move(ritz);
  }
  return best;
}

}  // namespace lvqe
