#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <numbers>
#include <utility>
#include <vector>

#include "lvqe/hamiltonians.hpp"
#include "lvqe/solver.hpp"
#include "support/oracles.hpp"

using namespace lvqe;

TEST_SUITE("hamiltonians") {

TEST_CASE("single bond heisenberg") {
  const LatticeGraph bond = custom_lattice(2, {Edge{0, 1, 1.0}});
  const PauliSum h = heisenberg(bond, HeisenbergParams{1.5, 0.0, FieldAxis::Z});
  CHECK(h.num_qubits() == 2);
  CHECK(h.term_count() == 3);
  for (const char* word : {"XX", "YY", "ZZ"}) {
    CHECK(h.coefficient(PauliString::from_word(word)).real() ==
          doctest::Approx(1.5));
  }
}

TEST_CASE("term count is three per edge plus field terms") {
  const LatticeGraph kagome = kagome_lattice();
  CHECK(heisenberg(kagome, HeisenbergParams{}).term_count() == 3 * 18);
  const PauliSum with_field =
      heisenberg(kagome, HeisenbergParams{1.0, 0.7, FieldAxis::X});
  CHECK(with_field.term_count() == 3 * 18 + 12);
  CHECK(with_field.coefficient(PauliString(12, 1, 0)).real() ==
        doctest::Approx(0.7));
}

TEST_CASE("field axis selects the single-qubit word") {
  const LatticeGraph bond = custom_lattice(2, {Edge{0, 1, 1.0}});
  const PauliSum hz = heisenberg(bond, HeisenbergParams{1.0, 0.3, FieldAxis::Z});
  CHECK(hz.coefficient(PauliString::from_word("ZI")).real() ==
        doctest::Approx(0.3));
  const PauliSum hy = heisenberg(bond, HeisenbergParams{1.0, 0.3, FieldAxis::Y});
  CHECK(hy.coefficient(PauliString::from_word("IY")).real() ==
        doctest::Approx(0.3));
}

TEST_CASE("heisenberg validation") {
  CHECK_THROWS_AS(heisenberg(LatticeGraph{}, HeisenbergParams{}),
                  std::invalid_argument);
  const LatticeGraph bond = custom_lattice(2, {Edge{0, 1, 1.0}});
  CHECK_THROWS_AS(heisenberg(bond, HeisenbergParams{0.0, 0.0, FieldAxis::Z}),
                  std::invalid_argument);
}

TEST_CASE("two-site ground state is the singlet") {
  const LatticeGraph bond = custom_lattice(2, {Edge{0, 1, 1.0}});
  const EigenResult result = solve_dense(heisenberg(bond, HeisenbergParams{}));
  CHECK(result.ground_energy == doctest::Approx(-3.0).epsilon(1e-10));
}

TEST_CASE("four-site ring ground energy") {
  const EigenResult result =
      solve_dense(heisenberg(line_lattice(4, true), HeisenbergParams{}));
  CHECK(result.ground_energy == doctest::Approx(-8.0).epsilon(1e-10));
}

TEST_CASE("weight scales every coupling uniformly") {
  const LatticeGraph ring = line_lattice(4, true);
  const PauliSum h1 = get_hamiltonian(ModelKind::Heisenberg, ring, 1.0);
  const PauliSum h2 = get_hamiltonian(ModelKind::Heisenberg, ring, 2.5);
  REQUIRE(h1.term_count() == h2.term_count());
  for (std::size_t i = 0; i < h1.term_count(); ++i) {
    CHECK(h2.terms()[i].word == h1.terms()[i].word);
    CHECK(h2.terms()[i].coefficient.real() ==
          doctest::Approx(2.5 * h1.terms()[i].coefficient.real()));
  }
}

TEST_CASE("hubbard operator structure") {
  const LatticeGraph bond = custom_lattice(2, {Edge{0, 1, 1.0}});
  const FermionicOp op = fermi_hubbard(bond, HubbardParams{1.0, 4.0});
  CHECK(op.num_modes() == 4);
  // Four hopping directions and two on-site terms.
  CHECK(op.terms().size() == 6);

  const FermionicOp kinetic_only = fermi_hubbard(bond, HubbardParams{1.0, 0.0});
  CHECK(kinetic_only.terms().size() == 4);
}

TEST_CASE("hubbard dimer ground energy formula") {
  // Half filling (2 particles) on one bond: (U - sqrt(U^2 + 16 t^2)) / 2.
  const LatticeGraph bond = custom_lattice(2, {Edge{0, 1, 1.0}});
  for (const auto [t, u] : std::vector<std::pair<double, double>>{
           {1.0, 4.0}, {1.0, 8.0}, {2.0, 1.0}}) {
    const PauliSum h = get_hamiltonian(ModelKind::FermiHubbard, bond, t, u);
    CHECK(h.num_qubits() == 4);
    const double ground =
        oracles::sector_ground_energy(to_dense(h), 2);
    const double expected = (u - std::sqrt(u * u + 16.0 * t * t)) / 2.0;
    CHECK(ground == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("free hopping ring reproduces the single-particle spectrum") {
  const std::size_t sites = 4;
  const double t = 1.0;
  const PauliSum h =
      get_hamiltonian(ModelKind::FermiHubbard, line_lattice(sites, true), t, 0.0);
  std::vector<double> single;
  for (std::size_t k = 0; k < sites; ++k) {
    const double e =
        -2.0 * t * std::cos(2.0 * std::numbers::pi * double(k) / double(sites));
    single.push_back(e);  // spin up
    single.push_back(e);  // spin down
  }
  std::sort(single.begin(), single.end());

  // One-particle sector of the 8-mode operator.
  const Eigen::MatrixXcd dense = to_dense(h);
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < static_cast<std::size_t>(dense.rows()); ++k) {
    if (std::popcount(k) == 1) {
      keep.push_back(k);
    }
  }
  Eigen::MatrixXcd sub(keep.size(), keep.size());
  for (std::size_t r = 0; r < keep.size(); ++r) {
    for (std::size_t c = 0; c < keep.size(); ++c) {
      sub(r, c) = dense(keep[r], keep[c]);
    }
  }
  const std::vector<double> got = oracles::sorted_eigenvalues(sub);
  REQUIRE(got.size() == single.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    CHECK(got[i] == doctest::Approx(single[i]).epsilon(1e-9));
  }
}

TEST_CASE("model qubit counts") {
  const LatticeGraph ring = line_lattice(3, true);
  CHECK(model_num_qubits(ModelKind::Heisenberg, ring) == 3);
  CHECK(model_num_qubits(ModelKind::FermiHubbard, ring) == 6);
}

TEST_CASE("model names round trip") {
  CHECK(model_kind_from_string(to_string(ModelKind::Heisenberg)) ==
        ModelKind::Heisenberg);
  CHECK(model_kind_from_string(to_string(ModelKind::FermiHubbard)) ==
        ModelKind::FermiHubbard);
  CHECK_THROWS_AS(model_kind_from_string("ising"), std::invalid_argument);
}

}  // TEST_SUITE
