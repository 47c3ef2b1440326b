#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace plateau {

// Single-qubit Pauli, encoded so that bit 0 is the X component and bit 1 the
// Z component: I=00, X=01, Z=10, Y=11.
enum class Pauli : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);
// The remaining axis, given two distinct non-identity axes.
Pauli third_axis(Pauli a, Pauli b);

// n-qubit Pauli operator in symplectic form: two bit masks (X and Z
// components per qubit, qubit 0 = least significant bit) plus a phase
// exponent, so the represented operator is i^phase * (s_0 x s_1 x ... s_{n-1})
// with s_q the textbook Pauli matrix selected by the q-th bit pair.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t n);

  static PauliString identity(std::size_t n) { return PauliString(n); }
  // Label reads left to right as qubit 0, 1, ...; optional "+"/"-"/"+i"/"-i" prefix.
  static PauliString from_label(std::string_view label);
  static PauliString single(std::size_t n, std::size_t qubit, Pauli p);

  std::size_t num_qubits() const { return n_; }
  // Phase exponent k in i^k, always reduced mod 4.
  int phase() const { return phase_; }
  bool is_identity() const;
  std::size_t weight() const;

  Pauli at(std::size_t q) const;
  void set(std::size_t q, Pauli p);
  void set_phase(int k) { phase_ = static_cast<std::uint8_t>(((k % 4) + 4) % 4); }

  // Label without sign prefix.
  std::string label() const;
  // Label with sign prefix when phase != 0 ("-XY", "+iZZ", ...).
  std::string signed_label() const;

  bool commutes_with(const PauliString& other) const;

  // Exact operator product, phase included.
  PauliString& operator*=(const PauliString& rhs);
  friend PauliString operator*(PauliString lhs, const PauliString& rhs) {
    lhs *= rhs;
    return lhs;
  }

  // Multiply by i^k.
  PauliString& times_i(int k) {
    set_phase(phase_ + k);
    return *this;
  }

  bool is_hermitian() const { return phase_ == 0 || phase_ == 2; }
  // +1 or -1; requires Hermitian form.
  double sign() const;
  // Copy with phase forced to 0.
  PauliString unsigned_form() const;

  // Smallest/largest qubit index in the support; weight()==0 gives {0, -1}.
  std::size_t support_min() const;
  std::ptrdiff_t support_max() const;
  // Number of neighbouring qubits spanned by the support (0 for identity).
  std::size_t support_span() const;

  bool operator==(const PauliString& other) const;
  bool operator!=(const PauliString& other) const { return !(*this == other); }
  // Ignores phase.
  bool same_letters(const PauliString& other) const;
  bool operator<(const PauliString& other) const;  // ordering for map keys, phase included

  std::span<const std::uint64_t> x_words() const { return x_; }
  std::span<const std::uint64_t> z_words() const { return z_; }

  std::size_t hash() const;

 private:
  void check_same_size(const PauliString& other) const;

  std::size_t n_ = 0;
  std::uint8_t phase_ = 0;
  std::vector<std::uint64_t> x_;
  std::vector<std::uint64_t> z_;
};

// Product phase-exact by construction; these are thin conveniences.
PauliString pauli_mul(const PauliString& a, const PauliString& b);
bool commutes(const PauliString& a, const PauliString& b);

}  // namespace plateau
