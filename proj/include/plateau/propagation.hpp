#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "plateau/circuit.hpp"
#include "plateau/state.hpp"

namespace plateau {

// Assignment of all m rotation parameters to {0, pi/2}: bit set = pi/2.
struct DiscreteAssignment {
  std::size_t m = 0;
  std::vector<std::uint64_t> bits;

  DiscreteAssignment() = default;
  explicit DiscreteAssignment(std::size_t m_) : m(m_), bits((m_ + 63) / 64, 0) {}

  bool bit(std::size_t i) const { return (bits[i / 64] >> (i % 64)) & 1u; }
  void set_bit(std::size_t i, bool v) {
    std::uint64_t mask = std::uint64_t{1} << (i % 64);
    if (v)
      bits[i / 64] |= mask;
    else
      bits[i / 64] &= ~mask;
  }

  // Enumeration helper: assignment whose bits spell `index` (m <= 64).
  static DiscreteAssignment from_index(std::size_t m, std::uint64_t index);
  static DiscreteAssignment sample(std::size_t m, std::uint64_t seed, std::uint64_t sample_index);

  std::vector<double> angles() const;  // 0 or pi/2 per parameter
};

// Back-propagated observable at a Clifford point: a signed Pauli string and
// its light-cone (support size).
struct PropagatedFrame {
  PauliString pauli;  // Hermitian; phase 0 or 2
  int cone = 0;
  double sign() const { return pauli.sign(); }
};

// g^dagger p g for a single gate. Rotations take the angle in quarter turns
// (angle = quarter_turns * pi/2); anything off the quarter-turn grid is not
// Clifford and belongs to the dense oracle.
PauliString conjugate_gate(const PauliString& p, const Gate& g, int quarter_turns = 0);

// Heisenberg conjugation U(theta)^dagger p U(theta) through the whole circuit
// at a discrete assignment. Cost O(gates * n/64).
PropagatedFrame propagate(const ParameterizedCircuit& c, const DiscreteAssignment& theta,
                          const PauliString& p);

// Same, with per-parameter quarter turns in {0,1,2,3} (parameter-shift keeps
// angles on the quarter-turn grid).
PropagatedFrame propagate_quarter_turns(const ParameterizedCircuit& c,
                                        std::span<const std::uint8_t> quarter_turns,
                                        const PauliString& p);

// Conjugates only through gates with index in [begin_gate, end_gate); lets
// callers pause in front of the two initial layers and resume afterwards.
PropagatedFrame propagate_gate_range(const ParameterizedCircuit& c,
                                     std::span<const std::uint8_t> quarter_turns,
                                     const PauliString& p, std::size_t begin_gate,
                                     std::size_t end_gate);

// sign * prod_i Tr(sigma_{frame_i} rho_i); identity sites contribute 1.
double loss_value_at_clifford_point(const PropagatedFrame& frame, const ProductState& rho);

// Union of supports over n_probe sampled assignments plus the all-0 and
// all-pi/2 corners.
int full_cone(const ParameterizedCircuit& c, const PauliString& p, int n_probe,
              std::uint64_t seed);

// Cone growth caps: a weight-k observable through d units of neighbouring
// two-qubit entanglement spreads at most 2 qubits per side per unit.
int cone_bound_algebraic(int k, int d);    // k + 4kd, scattered support
int cone_bound_topological(int span, int d);  // span + 4d, contiguous support

}  // namespace plateau
