#include "plateau/polynomial.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "plateau/rng.hpp"
#include "plateau/stats.hpp"

namespace plateau {

BinaryPolynomial::BinaryPolynomial(std::size_t n) : n_(n) {
  if (n > 64) throw std::invalid_argument("BinaryPolynomial: at most 64 variables supported");
}

std::size_t BinaryPolynomial::degree() const {
  std::size_t d = 0;
  for (const auto& m : monomials_)
    d = std::max(d, static_cast<std::size_t>(std::popcount(m.support)));
  return d;
}

void BinaryPolynomial::add_monomial(double coeff, std::uint64_t support) {
  if (n_ < 64 && (support >> n_) != 0)
    throw std::invalid_argument("BinaryPolynomial: support outside variable range");
  for (std::size_t i = 0; i < monomials_.size(); ++i) {
    if (monomials_[i].support == support) {
      monomials_[i].coeff += coeff;
      if (monomials_[i].coeff == 0.0)
        monomials_.erase(monomials_.begin() + static_cast<std::ptrdiff_t>(i));
      return;
    }
  }
  if (coeff != 0.0) monomials_.push_back(Monomial{coeff, support});
}

void BinaryPolynomial::add_monomial(double coeff, const std::vector<std::size_t>& variables) {
  std::uint64_t mask = 0;
  for (std::size_t v : variables) {
    if (v < 1 || v > n_) throw std::invalid_argument("BinaryPolynomial: variable index out of range");
    mask |= std::uint64_t{1} << (v - 1);
  }
  add_monomial(coeff, mask);
}

double BinaryPolynomial::evaluate(std::uint64_t x) const {
  double v = 0.0;
  for (const auto& m : monomials_)
    if ((x & m.support) == m.support) v += m.coeff;
  return v;
}

bool BinaryPolynomial::operator==(const BinaryPolynomial& other) const {
  if (n_ != other.n_ || monomials_.size() != other.monomials_.size()) return false;
  for (const auto& m : monomials_) {
    bool found = false;
    for (const auto& u : other.monomials_)
      if (m.support == u.support) {
        if (m.coeff != u.coeff) return false;
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

namespace {
PauliString z_string(std::size_t n, std::uint64_t mask) {
  PauliString p(n);
  for (std::size_t q = 0; q < n; ++q)
    if ((mask >> q) & 1u) p.set(q, Pauli::Z);
  return p;
}
}  // namespace

Observable poly_to_observable(const BinaryPolynomial& f) {
  std::size_t n = f.num_variables();
  Observable h(n);
  for (const auto& m : f.monomials()) {
    // x_S = prod_{i in S} (1 - Z_i)/2 = 2^-|S| sum_{T subset S} (-1)^{|T|} Z_T
    int k = std::popcount(m.support);
    double scale = m.coeff * std::ldexp(1.0, -k);
    std::uint64_t sub = 0;
    while (true) {
      double sign = (std::popcount(sub) & 1) ? -1.0 : 1.0;
      h.add_term(scale * sign, z_string(n, sub));
      if (sub == m.support) break;
      sub = (sub - m.support) & m.support;  // next subset of the support
    }
  }
  return h;
}

BinaryPolynomial observable_to_poly(const Observable& h) {
  if (!h.is_diagonal())
    throw std::domain_error("observable_to_poly: observable has X or Y components");
  std::size_t n = h.num_qubits();
  if (n > 64) throw std::invalid_argument("observable_to_poly: at most 64 qubits supported");
  BinaryPolynomial f(n);
  for (const auto& t : h.terms()) {
    // Z_S = prod_{i in S} (1 - 2 x_i) = sum_{T subset S} (-2)^{|T|} x_T
    std::uint64_t mask = 0;
    for (std::size_t q = 0; q < n; ++q)
      if (t.pauli.at(q) == Pauli::Z) mask |= std::uint64_t{1} << q;
    std::uint64_t sub = 0;
    while (true) {
      double factor = 1.0;
      for (int i = 0; i < std::popcount(sub); ++i) factor *= -2.0;
      f.add_monomial(t.coeff * factor, sub);
      if (sub == mask) break;
      sub = (sub - mask) & mask;
    }
  }
  return f;
}

Observable diagonal_observable_from_function(const std::function<double(std::uint64_t)>& f,
                                             std::size_t n, std::size_t enumeration_limit) {
  if (n > enumeration_limit)
    throw std::invalid_argument("diagonal_observable_from_function: n exceeds enumeration limit");
  std::size_t size = std::size_t{1} << n;
  std::vector<double> table(size);
  for (std::uint64_t x = 0; x < size; ++x) table[x] = f(x);
  walsh_hadamard_transform(table);
  double scale = std::ldexp(1.0, -static_cast<int>(n));
  Observable h(n);
  for (std::uint64_t alpha = 0; alpha < size; ++alpha) {
    double c = table[alpha] * scale;
    if (c != 0.0) h.add_term(c, z_string(n, alpha));
  }
  return h;
}

void walsh_hadamard_transform(std::vector<double>& table) {
  std::size_t size = table.size();
  if (size == 0 || (size & (size - 1)) != 0)
    throw std::invalid_argument("walsh_hadamard_transform: size must be a power of two");
  for (std::size_t h = 1; h < size; h <<= 1) {
    for (std::size_t i = 0; i < size; i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        double a = table[j];
        double b = table[j + h];
        table[j] = a + b;
        table[j + h] = a - b;
      }
    }
  }
}

std::vector<CoefficientEstimate> estimate_blackbox_coefficients(
    const std::function<double(std::uint64_t)>& f, std::size_t n,
    const std::vector<PauliString>& targets, std::size_t n_samples, std::uint64_t seed) {
  if (n_samples == 0)
    throw std::invalid_argument("estimate_blackbox_coefficients: n_samples must be positive");
  if (n > 64) throw std::invalid_argument("estimate_blackbox_coefficients: at most 64 bits");
  std::vector<std::uint64_t> masks;
  masks.reserve(targets.size());
  for (const auto& t : targets) {
    if (t.num_qubits() != n)
      throw std::invalid_argument("estimate_blackbox_coefficients: target size mismatch");
    std::uint64_t mask = 0;
    for (std::size_t q = 0; q < n; ++q) {
      Pauli p = t.at(q);
      if (p == Pauli::X || p == Pauli::Y)
        throw std::invalid_argument("estimate_blackbox_coefficients: targets must be diagonal");
      if (p == Pauli::Z) mask |= std::uint64_t{1} << q;
    }
    masks.push_back(mask);
  }

  std::vector<MeanAccumulator> acc(targets.size());
  std::uint64_t limit = (n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
  for (std::size_t s = 0; s < n_samples; ++s) {
    CounterRng rng(seed, s);
    std::uint64_t x = rng.next_u64() & limit;
    double fx = f(x);
    for (std::size_t t = 0; t < masks.size(); ++t) {
      double sign = (std::popcount(x & masks[t]) & 1) ? -1.0 : 1.0;
      acc[t].add(sign * fx);
    }
  }

  std::vector<CoefficientEstimate> out;
  out.reserve(acc.size());
  for (const auto& a : acc) {
    double se = a.std_error();
    if (!std::isfinite(se)) se = 0.0;
    out.push_back(CoefficientEstimate{a.mean(), se});
  }
  return out;
}

}  // namespace plateau
