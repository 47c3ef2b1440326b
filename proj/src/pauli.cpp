#include "plateau/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace plateau {

namespace {
constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t n) { return (n + kWordBits - 1) / kWordBits; }
}  // namespace

char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Z: return 'Z';
    case Pauli::Y: return 'Y';
  }
  throw std::logic_error("bad Pauli");
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': case 'i': return Pauli::I;
    case 'X': case 'x': return Pauli::X;
    case 'Z': case 'z': return Pauli::Z;
    case 'Y': case 'y': return Pauli::Y;
  }
  throw std::invalid_argument(std::string("invalid Pauli character '") + c + "'");
}

Pauli third_axis(Pauli a, Pauli b) {
  if (a == Pauli::I || b == Pauli::I || a == b)
    throw std::invalid_argument("third_axis: need two distinct non-identity axes");
  return static_cast<Pauli>(static_cast<std::uint8_t>(a) ^ static_cast<std::uint8_t>(b));
}

PauliString::PauliString(std::size_t n)
    : n_(n), phase_(0), x_(word_count(n), 0), z_(word_count(n), 0) {}

PauliString PauliString::from_label(std::string_view label) {
  int phase = 0;
  if (!label.empty() && (label[0] == '+' || label[0] == '-')) {
    if (label[0] == '-') phase += 2;
    label.remove_prefix(1);
    if (!label.empty() && (label[0] == 'i' || label[0] == 'j')) {
      phase += 1;
      label.remove_prefix(1);
    }
  }
  PauliString p(label.size());
  for (std::size_t q = 0; q < label.size(); ++q) p.set(q, pauli_from_char(label[q]));
  p.set_phase(phase);
  return p;
}

PauliString PauliString::single(std::size_t n, std::size_t qubit, Pauli pauli) {
  PauliString p(n);
  p.set(qubit, pauli);
  return p;
}

bool PauliString::is_identity() const { return weight() == 0; }

std::size_t PauliString::weight() const {
  std::size_t c = 0;
  for (std::size_t w = 0; w < x_.size(); ++w)
    c += static_cast<std::size_t>(std::popcount(x_[w] | z_[w]));
  return c;
}

Pauli PauliString::at(std::size_t q) const {
  if (q >= n_) throw std::out_of_range("PauliString::at: qubit out of range");
  std::uint8_t xb = (x_[q / kWordBits] >> (q % kWordBits)) & 1u;
  std::uint8_t zb = (z_[q / kWordBits] >> (q % kWordBits)) & 1u;
  return static_cast<Pauli>(xb | (zb << 1));
}

void PauliString::set(std::size_t q, Pauli p) {
  if (q >= n_) throw std::out_of_range("PauliString::set: qubit out of range");
  std::uint64_t bit = std::uint64_t{1} << (q % kWordBits);
  std::uint8_t code = static_cast<std::uint8_t>(p);
  if (code & 1u)
    x_[q / kWordBits] |= bit;
  else
    x_[q / kWordBits] &= ~bit;
  if (code & 2u)
    z_[q / kWordBits] |= bit;
  else
    z_[q / kWordBits] &= ~bit;
}

std::string PauliString::label() const {
  std::string s(n_, 'I');
  for (std::size_t q = 0; q < n_; ++q) s[q] = pauli_char(at(q));
  return s;
}

std::string PauliString::signed_label() const {
  static const char* prefix[4] = {"", "+i", "-", "-i"};
  return prefix[phase_] + label();
}

bool PauliString::commutes_with(const PauliString& other) const {
  check_same_size(other);
  // Symplectic form: parity of |x_a & z_b| + |z_a & x_b|.
  unsigned acc = 0;
  for (std::size_t w = 0; w < x_.size(); ++w)
    acc ^= static_cast<unsigned>(std::popcount(x_[w] & other.z_[w]) +
                                 std::popcount(z_[w] & other.x_[w])) &
           1u;
  return acc == 0;
}

PauliString& PauliString::operator*=(const PauliString& rhs) {
  check_same_size(rhs);
  // Work through the X^x Z^z normal form: each operand carries an extra
  // i^{|x&z|}, reordering Z^za past X^xb costs (-1)^{|za & xb|}, and the
  // result converts back with i^{-|xc&zc|}.
  int w = phase_ + rhs.phase_;
  std::size_t ya = 0, yb = 0, swaps = 0, yc = 0;
  for (std::size_t i = 0; i < x_.size(); ++i) {
    ya += static_cast<std::size_t>(std::popcount(x_[i] & z_[i]));
    yb += static_cast<std::size_t>(std::popcount(rhs.x_[i] & rhs.z_[i]));
    swaps += static_cast<std::size_t>(std::popcount(z_[i] & rhs.x_[i]));
    std::uint64_t xc = x_[i] ^ rhs.x_[i];
    std::uint64_t zc = z_[i] ^ rhs.z_[i];
    yc += static_cast<std::size_t>(std::popcount(xc & zc));
    x_[i] = xc;
    z_[i] = zc;
  }
  w += static_cast<int>(ya % 4) + static_cast<int>(yb % 4) + 2 * static_cast<int>(swaps % 2);
  w += 4 - static_cast<int>(yc % 4);
  set_phase(w);
  return *this;
}

double PauliString::sign() const {
  if (!is_hermitian()) throw std::domain_error("PauliString::sign: phase is imaginary");
  return phase_ == 0 ? 1.0 : -1.0;
}

PauliString PauliString::unsigned_form() const {
  PauliString p = *this;
  p.phase_ = 0;
  return p;
}

std::size_t PauliString::support_min() const {
  for (std::size_t w = 0; w < x_.size(); ++w) {
    std::uint64_t v = x_[w] | z_[w];
    if (v) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(v));
  }
  return 0;
}

std::ptrdiff_t PauliString::support_max() const {
  for (std::size_t w = x_.size(); w-- > 0;) {
    std::uint64_t v = x_[w] | z_[w];
    if (v) return static_cast<std::ptrdiff_t>(w * kWordBits + 63 -
                                              static_cast<std::size_t>(std::countl_zero(v)));
  }
  return -1;
}

std::size_t PauliString::support_span() const {
  std::ptrdiff_t hi = support_max();
  if (hi < 0) return 0;
  return static_cast<std::size_t>(hi) - support_min() + 1;
}

bool PauliString::operator==(const PauliString& other) const {
  return n_ == other.n_ && phase_ == other.phase_ && x_ == other.x_ && z_ == other.z_;
}

bool PauliString::same_letters(const PauliString& other) const {
  return n_ == other.n_ && x_ == other.x_ && z_ == other.z_;
}

bool PauliString::operator<(const PauliString& other) const {
  if (n_ != other.n_) return n_ < other.n_;
  if (x_ != other.x_) return x_ < other.x_;
  if (z_ != other.z_) return z_ < other.z_;
  return phase_ < other.phase_;
}

std::size_t PauliString::hash() const {
  std::uint64_t h = 0x9E3779B97F4A7C15ULL * (n_ + 1) + phase_;
  auto mix = [&h](std::uint64_t v) {
    h ^= v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  };
  for (auto v : x_) mix(v);
  for (auto v : z_) mix(~v);
  return static_cast<std::size_t>(h);
}

void PauliString::check_same_size(const PauliString& other) const {
  if (n_ != other.n_)
    throw std::invalid_argument("PauliString: qubit counts differ (" + std::to_string(n_) +
                                " vs " + std::to_string(other.n_) + ")");
}

PauliString pauli_mul(const PauliString& a, const PauliString& b) { return a * b; }

bool commutes(const PauliString& a, const PauliString& b) { return a.commutes_with(b); }

}  // namespace plateau
