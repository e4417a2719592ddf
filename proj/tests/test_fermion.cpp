#include <doctest.h>

#include <complex>
#include <random>

#include "lvqe/fermion.hpp"
#include "support/oracles.hpp"

using namespace lvqe;
using Complex = std::complex<double>;

namespace {

double matrix_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

FermionicOp random_op(std::size_t modes, std::size_t terms, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  FermionicOp op(modes);
  for (std::size_t t = 0; t < terms; ++t) {
    const std::size_t len = rng() % 5;
    std::vector<FermionicFactor> factors;
    for (std::size_t f = 0; f < len; ++f) {
      factors.push_back(FermionicFactor{static_cast<std::uint32_t>(rng() % modes),
                                        (rng() & 1) != 0});
    }
    op.add_term(Complex{coeff(rng), coeff(rng)}, std::move(factors));
  }
  return op;
}

bool is_normal_ordered(const FermionicOp& op) {
  for (const FermionicTerm& t : op.terms()) {
    bool seen_annihilation = false;
    for (std::size_t i = 0; i < t.factors.size(); ++i) {
      if (!t.factors[i].dagger) {
        seen_annihilation = true;
      } else if (seen_annihilation) {
        return false;
      }
      if (i > 0 && t.factors[i - 1].dagger == t.factors[i].dagger &&
          t.factors[i - 1].mode >= t.factors[i].mode) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("fermion") {

TEST_CASE("mode layout splits spins into blocks") {
  CHECK(mode_index(0, Spin::Up, 4) == 0);
  CHECK(mode_index(3, Spin::Up, 4) == 3);
  CHECK(mode_index(0, Spin::Down, 4) == 4);
  CHECK(mode_index(3, Spin::Down, 4) == 7);
  CHECK_THROWS_AS(mode_index(4, Spin::Up, 4), std::invalid_argument);
}

TEST_CASE("construction validates modes") {
  CHECK_THROWS_AS(FermionicOp(0), std::invalid_argument);
  FermionicOp op(2);
  CHECK_THROWS_AS(op.add_term(1.0, {FermionicFactor{2, true}}),
                  std::invalid_argument);
}

TEST_CASE("contraction rule") {
  // c_0 c+_0 = 1 - c+_0 c_0
  FermionicOp op(1);
  op.add_term(1.0, {FermionicFactor{0, false}, FermionicFactor{0, true}});
  const FermionicOp ordered = normal_order(op);
  REQUIRE(ordered.terms().size() == 2);
  CHECK(ordered.terms()[0].factors.empty());
  CHECK(ordered.terms()[0].coefficient == Complex{1.0});
  CHECK(ordered.terms()[1].factors ==
        std::vector<FermionicFactor>{{0, true}, {0, false}});
  CHECK(ordered.terms()[1].coefficient == Complex{-1.0});
}

TEST_CASE("pauli exclusion zeroes repeated operators") {
  FermionicOp op(2);
  op.add_term(1.0, {FermionicFactor{1, true}, FermionicFactor{1, true}});
  CHECK(normal_order(op).terms().empty());
}

TEST_CASE("same-type swap flips the sign") {
  FermionicOp op(3);
  op.add_term(2.0, {FermionicFactor{2, true}, FermionicFactor{0, true}});
  const FermionicOp ordered = normal_order(op);
  REQUIRE(ordered.terms().size() == 1);
  CHECK(ordered.terms()[0].coefficient == Complex{-2.0});
  CHECK(ordered.terms()[0].factors ==
        std::vector<FermionicFactor>{{0, true}, {2, true}});
}

TEST_CASE("normal order is canonical, idempotent and spectrum preserving") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const FermionicOp op = random_op(4, 5, 40 + seed);
    const FermionicOp once = normal_order(op);
    CHECK(is_normal_ordered(once));
    const FermionicOp twice = normal_order(once);
    CHECK(once.to_string() == twice.to_string());
    // The rewrite must be the same operator, entry for entry.
    CHECK(matrix_diff(oracles::fock_matrix(once), oracles::fock_matrix(op)) <=
          1e-12);
  }
}

TEST_CASE("jordan wigner of a number operator") {
  FermionicOp number(2);
  number.add_term(1.0, {FermionicFactor{0, true}, FermionicFactor{0, false}});
  const PauliSum image = jordan_wigner(number);
  // n_0 = (I - Z_0) / 2
  CHECK(image.term_count() == 2);
  CHECK(std::abs(image.coefficient(PauliString::from_word("II")) - 0.5) <= 1e-12);
  CHECK(std::abs(image.coefficient(PauliString::from_word("ZI")) + 0.5) <= 1e-12);
}

TEST_CASE("jordan wigner attaches the Z string below the mode") {
  FermionicOp creation(3);
  creation.add_term(1.0, {FermionicFactor{2, true}});
  const PauliSum image = jordan_wigner(creation);
  CHECK(image.term_count() == 2);
  CHECK(std::abs(image.coefficient(PauliString::from_word("ZZX")) - 0.5) <= 1e-12);
  CHECK(std::abs(image.coefficient(PauliString::from_word("ZZY")) -
                 Complex{0.0, -0.5}) <= 1e-12);
}

TEST_CASE("jordan wigner image equals the fock matrix") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const std::size_t modes = 2 + seed % 3;
    const FermionicOp op = random_op(modes, 4, 90 + seed);
    CHECK(matrix_diff(to_dense(jordan_wigner(op)), oracles::fock_matrix(op)) <=
          1e-10);
  }
}

TEST_CASE("jordan wigner preserves anticommutation") {
  const std::size_t modes = 4;
  auto ladder = [&](std::uint32_t mode, bool dagger) {
    FermionicOp op(modes);
    op.add_term(1.0, {FermionicFactor{mode, dagger}});
    return jordan_wigner(op);
  };
  for (std::uint32_t p = 0; p < modes; ++p) {
    for (std::uint32_t q = 0; q < modes; ++q) {
      const PauliSum cp = ladder(p, false);
      const PauliSum cq_dag = ladder(q, true);
      const PauliSum anti = add(matmul(cp, cq_dag), matmul(cq_dag, cp));
      if (p == q) {
        // {c_p, c+_p} = 1
        CHECK(anti.term_count() == 1);
        CHECK(std::abs(anti.coefficient(PauliString::identity(modes)) - 1.0) <=
              1e-12);
      } else {
        CHECK(anti.is_zero());
      }
      const PauliSum cq = ladder(q, false);
      CHECK(add(matmul(cp, cq), matmul(cq, cp)).is_zero());
    }
  }
}

}  // TEST_SUITE
