#include "plateau/state.hpp"

#include <cmath>
#include <stdexcept>

namespace plateau {

namespace {
void check_norms(const std::vector<ProductState::Bloch>& bloch) {
  for (std::size_t q = 0; q < bloch.size(); ++q) {
    double n2 = bloch[q][0] * bloch[q][0] + bloch[q][1] * bloch[q][1] + bloch[q][2] * bloch[q][2];
    if (n2 > 1.0 + 1e-12)
      throw std::invalid_argument("ProductState: Bloch norm exceeds 1 on qubit " +
                                  std::to_string(q));
  }
}
}  // namespace

ProductState::ProductState(std::size_t n, const std::vector<Bloch>& bloch) : bloch_(bloch) {
  if (bloch.size() != n) throw std::invalid_argument("ProductState: Bloch list length mismatch");
  check_norms(bloch_);
}

double ProductState::component(std::size_t q, Pauli axis) const {
  switch (axis) {
    case Pauli::I: return 1.0;
    case Pauli::X: return bloch_.at(q)[0];
    case Pauli::Y: return bloch_.at(q)[1];
    case Pauli::Z: return bloch_.at(q)[2];
  }
  return 0.0;
}

double ProductState::norm_sq(std::size_t q) const {
  const Bloch& b = bloch_.at(q);
  return b[0] * b[0] + b[1] * b[1] + b[2] * b[2];
}

bool ProductState::is_pure_product(double tol) const {
  for (std::size_t q = 0; q < num_qubits(); ++q)
    if (std::fabs(norm_sq(q) - 1.0) > tol) return false;
  return true;
}

ProductState ProductState::zero(std::size_t n) {
  return ProductState(n, std::vector<Bloch>(n, Bloch{0.0, 0.0, 1.0}));
}

ProductState ProductState::plus(std::size_t n) {
  return ProductState(n, std::vector<Bloch>(n, Bloch{1.0, 0.0, 0.0}));
}

ProductState ProductState::mixed(const std::vector<Bloch>& bloch) {
  return ProductState(bloch.size(), bloch);
}

}  // namespace plateau
