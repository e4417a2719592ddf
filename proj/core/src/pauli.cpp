#include "lvqe/pauli.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace lvqe {

namespace {

constexpr double kCoefficientTolerance = 1e-12;
constexpr std::size_t kMaxQubits = 64;
constexpr std::size_t kMaxDenseQubits = 12;

// i^k for k in 0..3.
constexpr std::array<std::complex<double>, 4> kPhases = {
    std::complex<double>{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

void check_same_width(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": qubit counts differ");
  }
}

void check_state_size(std::size_t num_qubits, std::size_t size) {
  if (num_qubits > 30 || size != (std::size_t{1} << num_qubits)) {
    throw std::invalid_argument("state size is not 2^num_qubits");
  }
}

}  // namespace

PauliString::PauliString(std::size_t num_qubits, std::uint64_t x_mask,
                         std::uint64_t z_mask)
    : num_qubits_(num_qubits), x_(x_mask), z_(z_mask) {
  if (num_qubits_ == 0 || num_qubits_ > kMaxQubits) {
    throw std::invalid_argument("qubit count must be in [1, 64]");
  }
  if (num_qubits_ < kMaxQubits) {
    const std::uint64_t valid = (std::uint64_t{1} << num_qubits_) - 1;
    if ((x_ | z_) & ~valid) {
      throw std::invalid_argument("pauli mask exceeds qubit count");
    }
  }
}

PauliString PauliString::identity(std::size_t num_qubits) {
  return PauliString(num_qubits, 0, 0);
}

PauliString PauliString::from_word(std::string_view word) {
  if (word.empty() || word.size() > kMaxQubits) {
    throw std::invalid_argument("pauli word length must be in [1, 64]");
  }
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  for (std::size_t q = 0; q < word.size(); ++q) {
    const std::uint64_t bit = std::uint64_t{1} << q;
    switch (word[q]) {
      case 'I': break;
      case 'X': x |= bit; break;
      case 'Y': x |= bit; z |= bit; break;
      case 'Z': z |= bit; break;
      default:
        throw std::invalid_argument("pauli word may only contain I, X, Y, Z");
    }
  }
  return PauliString(word.size(), x, z);
}

std::string PauliString::to_word() const {
  std::string word(num_qubits_, 'I');
  for (std::size_t q = 0; q < num_qubits_; ++q) {
    const bool x = (x_ >> q) & 1;
    const bool z = (z_ >> q) & 1;
    word[q] = x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
  }
  return word;
}

std::pair<PauliString, std::complex<double>> mul(const PauliString& a,
                                                 const PauliString& b) {
  check_same_width(a.num_qubits(), b.num_qubits(), "pauli mul");
  const std::uint64_t x = a.x_mask() ^ b.x_mask();
  const std::uint64_t z = a.z_mask() ^ b.z_mask();
  const int pa = std::popcount(a.x_mask() & a.z_mask());
  const int pb = std::popcount(b.x_mask() & b.z_mask());
  const int pc = std::popcount(x & z);
  const int swaps = std::popcount(a.z_mask() & b.x_mask());
  const int exponent = ((pa + pb - pc + 2 * swaps) % 4 + 4) % 4;
  return {PauliString(a.num_qubits(), x, z), kPhases[exponent]};
}

PauliSum::PauliSum(std::size_t num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits_ == 0 || num_qubits_ > kMaxQubits) {
    throw std::invalid_argument("qubit count must be in [1, 64]");
  }
}

PauliSum PauliSum::identity(std::size_t num_qubits, std::complex<double> coefficient) {
  PauliSum s(num_qubits);
  s.add_term(PauliString::identity(num_qubits), coefficient);
  return s;
}

PauliSum PauliSum::from_terms(std::size_t num_qubits,
                              const std::vector<PauliTerm>& terms) {
  PauliSum s(num_qubits);
  for (const PauliTerm& t : terms) {
    s.add_term(t.word, t.coefficient);
  }
  return s;
}

void PauliSum::add_term(const PauliString& word, std::complex<double> coefficient) {
  check_same_width(num_qubits_, word.num_qubits(), "pauli add_term");
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), word,
      [](const PauliTerm& t, const PauliString& w) { return t.word < w; });
  if (it != terms_.end() && it->word == word) {
    it->coefficient += coefficient;
    if (std::abs(it->coefficient) < kCoefficientTolerance) {
      terms_.erase(it);
    }
    return;
  }
  if (std::abs(coefficient) >= kCoefficientTolerance) {
    terms_.insert(it, PauliTerm{word, coefficient});
  }
}

bool PauliSum::is_hermitian() const {
  for (const PauliTerm& t : terms_) {
    if (std::abs(t.coefficient.imag()) > kCoefficientTolerance) {
      return false;
    }
  }
  return true;
}

std::complex<double> PauliSum::coefficient(const PauliString& word) const {
  check_same_width(num_qubits_, word.num_qubits(), "pauli coefficient");
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), word,
      [](const PauliTerm& t, const PauliString& w) { return t.word < w; });
  if (it != terms_.end() && it->word == word) {
    return it->coefficient;
  }
  return 0.0;
}

std::string PauliSum::to_string() const {
  if (terms_.empty()) {
    return "0";
  }
  std::ostringstream out;
  out.precision(12);
  bool first = true;
  for (const PauliTerm& t : terms_) {
    if (!first) {
      out << " + ";
    }
    first = false;
    if (std::abs(t.coefficient.imag()) < kCoefficientTolerance) {
      out << t.coefficient.real();
    } else {
      out << '(' << t.coefficient.real() << (t.coefficient.imag() < 0 ? "" : "+")
          << t.coefficient.imag() << "i)";
    }
    out << " * " << t.word.to_word();
  }
  return out.str();
}

PauliSum add(const PauliSum& a, const PauliSum& b) {
  check_same_width(a.num_qubits(), b.num_qubits(), "pauli add");
  PauliSum out = a;
  for (const PauliTerm& t : b.terms()) {
    out.add_term(t.word, t.coefficient);
  }
  return out;
}

PauliSum scale(const PauliSum& a, std::complex<double> factor) {
  PauliSum out(a.num_qubits());
  for (const PauliTerm& t : a.terms()) {
    out.add_term(t.word, t.coefficient * factor);
  }
  return out;
}

PauliSum matmul(const PauliSum& a, const PauliSum& b) {
  check_same_width(a.num_qubits(), b.num_qubits(), "pauli matmul");
  PauliSum out(a.num_qubits());
  for (const PauliTerm& ta : a.terms()) {
    for (const PauliTerm& tb : b.terms()) {
      const auto [word, phase] = mul(ta.word, tb.word);
      out.add_term(word, ta.coefficient * tb.coefficient * phase);
    }
  }
  return out;
}

void apply_into(const PauliSum& h, std::span<const std::complex<double>> state,
                std::vector<std::complex<double>>& out) {
  check_state_size(h.num_qubits(), state.size());
  out.assign(state.size(), 0.0);
  for (const PauliTerm& t : h.terms()) {
    const std::uint64_t x = t.word.x_mask();
    const std::uint64_t z = t.word.z_mask();
    const std::complex<double> base =
        t.coefficient * kPhases[std::popcount(x & z) % 4];
    for (std::uint64_t k = 0; k < state.size(); ++k) {
      const double sign = (std::popcount(k & z) & 1) ? -1.0 : 1.0;
      out[k ^ x] += base * sign * state[k];
    }
  }
}

std::vector<std::complex<double>> apply(const PauliSum& h,
                                        std::span<const std::complex<double>> state) {
  std::vector<std::complex<double>> out;
  apply_into(h, state, out);
  return out;
}

double expectation(const PauliSum& h, std::span<const std::complex<double>> state) {
  check_state_size(h.num_qubits(), state.size());
  if (!h.is_hermitian()) {
    throw std::invalid_argument("expectation needs a Hermitian operator");
  }
  std::complex<double> acc = 0.0;
  for (const PauliTerm& t : h.terms()) {
    const std::uint64_t x = t.word.x_mask();
    const std::uint64_t z = t.word.z_mask();
    const std::complex<double> base =
        t.coefficient * kPhases[std::popcount(x & z) % 4];
    std::complex<double> term = 0.0;
    for (std::uint64_t k = 0; k < state.size(); ++k) {
      const double sign = (std::popcount(k & z) & 1) ? -1.0 : 1.0;
      term += std::conj(state[k ^ x]) * sign * state[k];
    }
    acc += base * term;
  }
  if (std::abs(acc.imag()) > 1e-9) {
    throw std::runtime_error("expectation has a non-negligible imaginary part");
  }
  return acc.real();
}

Eigen::MatrixXcd to_dense(const PauliSum& h) {
  if (h.num_qubits() > kMaxDenseQubits) {
    throw std::invalid_argument("to_dense is limited to 12 qubits");
  }
  const std::size_t dim = std::size_t{1} << h.num_qubits();
  Eigen::MatrixXcd result = Eigen::MatrixXcd::Zero(dim, dim);

  using Factor = Eigen::Matrix2cd;
  const std::complex<double> im{0.0, 1.0};
  Factor fi, fx, fy, fz;
  fi << 1, 0, 0, 1;
  fx << 0, 1, 1, 0;
  fy << 0, -im, im, 0;
  fz << 1, 0, 0, -1;

  for (const PauliTerm& t : h.terms()) {
    const std::string word = t.word.to_word();
    // kron(high qubit factor, low) keeps index bit q aligned with qubit q.
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Constant(1, 1, t.coefficient);
    for (std::size_t q = 0; q < h.num_qubits(); ++q) {
      const Factor& f = word[q] == 'X'   ? fx
                        : word[q] == 'Y' ? fy
                        : word[q] == 'Z' ? fz
                                         : fi;
      Eigen::MatrixXcd next(m.rows() * 2, m.cols() * 2);
      for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
          next.block(r * m.rows(), c * m.cols(), m.rows(), m.cols()) = f(r, c) * m;
        }
      }
      m = std::move(next);
    }
    result += m;
  }
  return result;
}

}  // namespace lvqe
