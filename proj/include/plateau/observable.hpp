#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "plateau/pauli.hpp"

namespace plateau {

// Weighted sum of Hermitian Pauli strings. Terms are keyed by the Pauli
// letters: any phase/sign on an added Pauli is folded into the coefficient,
// equal Paulis have their coefficients summed, and exact-zero sums are
// dropped.
class Observable {
 public:
  struct Term {
    double coeff;
    PauliString pauli;  // phase 0 by construction
  };

  Observable() = default;
  explicit Observable(std::size_t n) : n_(n) {}

  std::size_t num_qubits() const { return n_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }

  void add_term(double coeff, const PauliString& pauli);

  // Coefficient of the weight-0 term, 0.0 if absent.
  double identity_coefficient() const;
  double coefficient(const PauliString& pauli) const;

  bool is_diagonal() const;  // all terms pure-Z
  std::size_t max_weight() const;

  // One term per line: "<coeff> <label>", leftmost label character = qubit 0.
  // Coefficients are printed with round-trip precision, so parse(print(h))
  // reproduces h exactly.
  std::string to_text() const;
  static Observable parse(std::string_view text);

  bool operator==(const Observable& other) const;

 private:
  std::size_t n_ = 0;
  std::vector<Term> terms_;
};

enum class LocalityClass { Local, Mixed, Global };

std::string locality_name(LocalityClass c);

// Local: every non-identity term has weight <= threshold. Mixed: some term
// within the threshold carries |coeff| >= coeff_floor while others exceed it.
// Global otherwise. The identity term is ignored throughout.
LocalityClass classify_observable(const Observable& h, std::size_t locality_threshold,
                                  double coeff_floor = 1e-9);

}  // namespace plateau
