#pragma once

#include <array>
#include <vector>

#include "plateau/pauli.hpp"

namespace plateau {

// Product state given per qubit by its Bloch coefficients
// (Tr(X rho_i), Tr(Y rho_i), Tr(Z rho_i)). Norm 1 means pure, below 1 mixed.
class ProductState {
 public:
  using Bloch = std::array<double, 3>;  // (rX, rY, rZ)

  ProductState() = default;
  ProductState(std::size_t n, const std::vector<Bloch>& bloch);

  std::size_t num_qubits() const { return bloch_.size(); }
  const Bloch& bloch(std::size_t q) const { return bloch_.at(q); }
  const std::vector<Bloch>& bloch_vectors() const { return bloch_; }

  // Tr(sigma rho_q); identity gives 1.
  double component(std::size_t q, Pauli axis) const;
  double norm_sq(std::size_t q) const;

  bool is_pure_product(double tol = 1e-9) const;

  static ProductState zero(std::size_t n);   // |0...0>, bloch (0,0,1)
  static ProductState plus(std::size_t n);   // |+...+>, bloch (1,0,0)
  static ProductState mixed(const std::vector<Bloch>& bloch);

 private:
  std::vector<Bloch> bloch_;
};

}  // namespace plateau
