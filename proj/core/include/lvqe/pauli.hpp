#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace lvqe {

// Tensor product of single-qubit Pauli operators, encoded as two bitmasks.
// Bit q of (x_mask, z_mask) selects the factor on qubit q:
//   (0,0) -> I, (1,0) -> X, (1,1) -> Y, (0,1) -> Z.
// The word is the literal tensor product of those factors (no implicit
// phase). Limited to 64 qubits by the mask width.
class PauliString {
 public:
  PauliString(std::size_t num_qubits, std::uint64_t x_mask, std::uint64_t z_mask);

  static PauliString identity(std::size_t num_qubits);
  // Word text such as "XIZY"; index 0 of the string is qubit 0.
  static PauliString from_word(std::string_view word);

  std::size_t num_qubits() const { return num_qubits_; }
  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }
  // Qubits the word acts on non-trivially.
  std::uint64_t support() const { return x_ | z_; }
  bool is_identity() const { return (x_ | z_) == 0; }

  std::string to_word() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend auto operator<=>(const PauliString&, const PauliString&) = default;

 private:
  std::size_t num_qubits_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

// Product of two words as (word, phase); the phase is exactly one of
// {1, i, -1, -i}. Tracks the i factors hidden in Y = iXZ:
//   phase exponent = p(a) + p(b) - p(ab) + 2 * popcount(z_a & x_b)  (mod 4)
// with p(w) = popcount(x_w & z_w).
std::pair<PauliString, std::complex<double>> mul(const PauliString& a,
                                                 const PauliString& b);

struct PauliTerm {
  PauliString word;
  std::complex<double> coefficient;
};

// Complex linear combination of Pauli words on a fixed qubit count.
// Terms are kept simplified: sorted by word, like terms combined,
// coefficients below 1e-12 dropped. All operations return simplified
// values, so iteration order (and everything downstream) is deterministic.
class PauliSum {
 public:
  explicit PauliSum(std::size_t num_qubits);

  static PauliSum identity(std::size_t num_qubits,
                           std::complex<double> coefficient = 1.0);
  static PauliSum from_terms(std::size_t num_qubits,
                             const std::vector<PauliTerm>& terms);

  // Accumulates a term, combining with an existing equal word. Intended
  // for operator construction; keeps the sum simplified.
  void add_term(const PauliString& word, std::complex<double> coefficient);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t term_count() const { return terms_.size(); }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // True when every coefficient is real to within 1e-12 (Pauli words are
  // Hermitian and linearly independent, so this decides Hermiticity).
  bool is_hermitian() const;

  // Coefficient of a word, zero if absent.
  std::complex<double> coefficient(const PauliString& word) const;

  // Terms joined as "coeff * WORD + ...".
  std::string to_string() const;

 private:
  std::size_t num_qubits_ = 0;
  std::vector<PauliTerm> terms_;  // sorted by word
};

PauliSum add(const PauliSum& a, const PauliSum& b);
PauliSum scale(const PauliSum& a, std::complex<double> factor);
PauliSum matmul(const PauliSum& a, const PauliSum& b);

inline PauliSum operator+(const PauliSum& a, const PauliSum& b) { return add(a, b); }
inline PauliSum operator*(std::complex<double> c, const PauliSum& a) { return scale(a, c); }
inline PauliSum operator*(const PauliSum& a, const PauliSum& b) { return matmul(a, b); }

// h |state> without materializing a matrix. A single word acts as
//   W |k> = i^{popcount(x & z)} * (-1)^{popcount(k & z)} |k xor x>.
// state.size() must be 2^num_qubits; out-of-place into the returned vector.
std::vector<std::complex<double>> apply(const PauliSum& h,
                                        std::span<const std::complex<double>> state);

// Same kernel accumulating into out (resized and zeroed first).
void apply_into(const PauliSum& h, std::span<const std::complex<double>> state,
                std::vector<std::complex<double>>& out);

// <state| h |state> for Hermitian h and a normalized state.
double expectation(const PauliSum& h, std::span<const std::complex<double>> state);

// Dense 2^n x 2^n matrix built by Kronecker products of the 2x2 factors,
// qubit 0 on the least significant index bit. Independent of the apply()
// kernel, which makes it a cross-check for it. Guarded to n <= 12.
Eigen::MatrixXcd to_dense(const PauliSum& h);

}  // namespace lvqe
