#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "plateau/observable.hpp"

namespace plateau {

// Real polynomial over binary variables x_1..x_n (x_i in {0,1}, variable x_i
// attached to qubit i-1). Monomials are keyed by their support set; duplicate
// supports are merged on construction.
class BinaryPolynomial {
 public:
  struct Monomial {
    double coeff;
    std::uint64_t support;  // bit i set = variable x_{i+1} present
  };

  explicit BinaryPolynomial(std::size_t n);

  std::size_t num_variables() const { return n_; }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  std::size_t degree() const;

  void add_monomial(double coeff, std::uint64_t support);
  void add_monomial(double coeff, const std::vector<std::size_t>& variables);

  double evaluate(std::uint64_t x) const;

  bool operator==(const BinaryPolynomial& other) const;

 private:
  std::size_t n_ = 0;
  std::vector<Monomial> monomials_;
};

// Diagonal observable T(f) = sum_x f(x)|x><x| in the Z basis, built exactly by
// expanding each monomial through x_i = (I - Z_i)/2. A degree-k polynomial
// maps to Z-strings of weight at most k.
Observable poly_to_observable(const BinaryPolynomial& f);

// Inverse map; requires a diagonal observable. Round trips are exact up to
// floating rounding.
BinaryPolynomial observable_to_poly(const Observable& h);

// Brute-force companion to poly_to_observable: tabulates f over all 2^n
// bitstrings (n <= enumeration_limit) and transforms the table.
Observable diagonal_observable_from_function(const std::function<double(std::uint64_t)>& f,
                                             std::size_t n, std::size_t enumeration_limit = 20);

// In-place Walsh-Hadamard butterfly; after scaling by 2^-n the entry at mask
// alpha equals 2^-n * sum_x (-1)^{alpha.x} table[x].
void walsh_hadamard_transform(std::vector<double>& table);

struct CoefficientEstimate {
  double value;
  double std_error;
};

// Monte Carlo estimates of c_alpha = E_x[(-1)^{alpha.x} f(x)] under uniform x,
// one shared sample stream for all targets. Convergence is O(1/sqrt(N))
// regardless of n.
std::vector<CoefficientEstimate> estimate_blackbox_coefficients(
    const std::function<double(std::uint64_t)>& f, std::size_t n,
    const std::vector<PauliString>& targets, std::size_t n_samples, std::uint64_t seed);

}  // namespace plateau
