#include "lvqe/fermion.hpp"

#include <cmath>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace lvqe {

namespace {

constexpr double kCoefficientTolerance = 1e-12;

void check_modes(std::size_t num_modes, const std::vector<FermionicFactor>& factors) {
  for (const FermionicFactor& f : factors) {
    if (f.mode >= num_modes) {
      throw std::invalid_argument("fermionic mode out of range");
    }
  }
}

}  // namespace

FermionicOp::FermionicOp(std::size_t num_modes) : num_modes_(num_modes) {
  if (num_modes_ == 0 || num_modes_ > 64) {
    throw std::invalid_argument("mode count must be in [1, 64]");
  }
}

void FermionicOp::add_term(std::complex<double> coefficient,
                           std::vector<FermionicFactor> factors) {
  check_modes(num_modes_, factors);
  terms_.push_back(FermionicTerm{coefficient, std::move(factors)});
}

std::string FermionicOp::to_string() const {
  if (terms_.empty()) {
    return "0";
  }
  std::ostringstream out;
  out.precision(12);
  bool first = true;
  for (const FermionicTerm& t : terms_) {
    if (!first) {
      out << " + ";
    }
    first = false;
    out << '(' << t.coefficient.real();
    if (std::abs(t.coefficient.imag()) >= kCoefficientTolerance) {
      out << (t.coefficient.imag() < 0 ? "" : "+") << t.coefficient.imag() << 'i';
    }
    out << ')';
    for (const FermionicFactor& f : t.factors) {
      out << " c" << (f.dagger ? "+" : "-") << '_' << f.mode;
    }
  }
  return out.str();
}

FermionicOp normal_order(const FermionicOp& op) {
  // Rewrites each term with the anticommutator rule until no factor is out
  // of place, accumulating finished terms in a canonical map.
  std::map<std::vector<FermionicFactor>, std::complex<double>> finished;
  std::deque<FermionicTerm> work(op.terms().begin(), op.terms().end());

  while (!work.empty()) {
    FermionicTerm term = std::move(work.front());
    work.pop_front();

    bool rewritten = false;
    auto& fs = term.factors;
    for (std::size_t i = 0; i + 1 < fs.size(); ++i) {
      const FermionicFactor a = fs[i];
      const FermionicFactor b = fs[i + 1];
      if (!a.dagger && b.dagger) {
        // c_p c†_q = δ_pq - c†_q c_p
        if (a.mode == b.mode) {
          FermionicTerm contracted{term.coefficient, {}};
          contracted.factors.reserve(fs.size() - 2);
          contracted.factors.insert(contracted.factors.end(), fs.begin(),
                                    fs.begin() + i);
          contracted.factors.insert(contracted.factors.end(), fs.begin() + i + 2,
                                    fs.end());
          work.push_back(std::move(contracted));
        }
        std::swap(fs[i], fs[i + 1]);
        term.coefficient = -term.coefficient;
        work.push_back(std::move(term));
        rewritten = true;
        break;
      }
      if (a.dagger == b.dagger) {
        if (a.mode == b.mode) {
          // Repeated operator annihilates the term (Pauli exclusion).
          rewritten = true;
          break;
        }
        if (a.mode > b.mode) {
          // Same-type neighbours anticommute freely.
          std::swap(fs[i], fs[i + 1]);
          term.coefficient = -term.coefficient;
          work.push_back(std::move(term));
          rewritten = true;
          break;
        }
      }
    }
    if (!rewritten) {
      finished[fs] += term.coefficient;
    }
  }

  FermionicOp out(op.num_modes());
  for (auto& [factors, coefficient] : finished) {
    if (std::abs(coefficient) >= kCoefficientTolerance) {
      out.add_term(coefficient, factors);
    }
  }
  return out;
}

namespace {

// Qubit image of a single ladder operator, two Pauli words of weight 0.5.
PauliSum ladder_operator(std::size_t num_modes, std::uint32_t mode, bool dagger) {
  const std::uint64_t site = std::uint64_t{1} << mode;
  const std::uint64_t z_string = site - 1;
  PauliSum out(num_modes);
  // X_p Z_{p-1}..Z_0 and Y_p Z_{p-1}..Z_0; the Y coefficient flips sign
  // between creation (-i/2) and annihilation (+i/2).
  out.add_term(PauliString(num_modes, site, z_string), 0.5);
  out.add_term(PauliString(num_modes, site, z_string | site),
               std::complex<double>(0.0, dagger ? -0.5 : 0.5));
  return out;
}

}  // namespace

PauliSum jordan_wigner(const FermionicOp& op) {
  PauliSum out(op.num_modes());
  for (const FermionicTerm& term : op.terms()) {
    PauliSum product = PauliSum::identity(op.num_modes(), term.coefficient);
    for (const FermionicFactor& f : term.factors) {
      product = matmul(product, ladder_operator(op.num_modes(), f.mode, f.dagger));
    }
    out = add(out, product);
  }
  return out;
}

std::size_t mode_index(std::size_t site, Spin spin, std::size_t num_sites) {
  if (site >= num_sites) {
    throw std::invalid_argument("site out of range");
  }
  return spin == Spin::Up ? site : num_sites + site;
}

}  // namespace lvqe
