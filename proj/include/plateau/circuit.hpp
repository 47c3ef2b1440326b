#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plateau/pauli.hpp"

namespace plateau {

enum class GateKind : std::uint8_t {
  Hadamard,
  PhaseS,
  Cnot,
  Cz,
  Swap,
  Rotation,       // exp(-i G theta/2), parameterized
  FixedRotation,  // exp(-i G angle/2), constant angle; Clifford iff angle is a
                  // multiple of pi/2
};

std::string gate_kind_name(GateKind k);
GateKind gate_kind_from_name(const std::string& name);

struct Gate {
  GateKind kind;
  std::vector<std::uint32_t> qubits;  // Cnot/Cz: {control, target}
  PauliString generator;              // rotations only; full-width, supported on `qubits`
  std::int32_t param_index = -1;      // Rotation only
  double angle = 0.0;                 // FixedRotation only

  bool is_rotation() const { return kind == GateKind::Rotation; }
  bool operator==(const Gate& other) const;
};

Gate make_hadamard(std::size_t n, std::uint32_t q);
Gate make_phase_s(std::size_t n, std::uint32_t q);
Gate make_cnot(std::size_t n, std::uint32_t control, std::uint32_t target);
Gate make_cz(std::size_t n, std::uint32_t a, std::uint32_t b);
Gate make_swap(std::size_t n, std::uint32_t a, std::uint32_t b);
Gate make_rotation(std::size_t n, Pauli axis, std::uint32_t q, std::int32_t param_index);
Gate make_rotation(const PauliString& generator, std::int32_t param_index);
Gate make_fixed_rotation(std::size_t n, Pauli axis, std::uint32_t q, double angle);
Gate make_t_gate(std::size_t n, std::uint32_t q);  // fixed Z rotation by pi/4

// Gate sequence with m independent rotation parameters. Construction is
// permissive: structural requirements (two adjacent orthogonal initial
// rotation layers, one gate per parameter index, Clifford fixed gates) are
// checked by validate_circuit_class, which reports violations instead of
// throwing.
class ParameterizedCircuit {
 public:
  ParameterizedCircuit() = default;
  ParameterizedCircuit(std::size_t n, std::size_t m, std::vector<Gate> gates);

  std::size_t num_qubits() const { return n_; }
  std::size_t num_parameters() const { return m_; }
  const std::vector<Gate>& gates() const { return gates_; }

  void append(Gate g);

  // Axes of the first/second initial rotation layer, when the first 2n gates
  // form two full single-qubit layers; nullopt otherwise.
  std::optional<std::vector<Pauli>> first_layer_axes() const;
  std::optional<std::vector<Pauli>> second_layer_axes() const;

  bool operator==(const ParameterizedCircuit& other) const;

 private:
  std::optional<std::vector<Pauli>> layer_axes(std::size_t first_gate) const;

  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<Gate> gates_;
};

struct ValidationReport {
  bool valid = true;
  std::vector<std::string> violations;
};

// Checks membership in the supported circuit class: the circuit must begin
// with two adjacent full layers of single-qubit rotations with a different
// axis on every qubit, every parameter index in [0, m) must be used by
// exactly one rotation, and every fixed gate must be Clifford.
ValidationReport validate_circuit_class(const ParameterizedCircuit& c);

enum class Entanglement { Pairwise, Linear, Circular };

Entanglement entanglement_from_name(const std::string& name);
std::string entanglement_name(Entanglement e);

struct RotationAxes {
  Pauli first = Pauli::Y;
  Pauli second = Pauli::Z;
};

// Hardware-efficient ansatz: two initial rotation layers, then `depth`
// repetitions of (entangling CNOTs, two rotation layers). Pairwise
// entanglement places CNOTs on (0,1),(2,3),... followed by (1,2),(3,4),...
// inside one depth unit. Parameter count is 2n(depth+1).
ParameterizedCircuit build_efficient_su2(std::size_t n, std::size_t depth,
                                         RotationAxes axes = {},
                                         Entanglement entanglement = Entanglement::Pairwise);

// Alternating-pair ansatz of two-qubit blocks: each block applies one
// single-qubit Y and Z rotation per qubit followed by XX, YY and ZZ
// rotations. Blocks cover (0,1),(2,3),... then (1,2),(3,4),... per depth
// unit. Requires even n.
ParameterizedCircuit build_cartan(std::size_t n, std::size_t depth);

// Test/search utility: a random member of the supported class with two
// orthogonal initial layers, `extra_rotations` additional rotations with
// random 1- or 2-qubit generators, and random Clifford gates in between.
ParameterizedCircuit random_class_circuit(std::size_t n, std::size_t extra_rotations,
                                          std::size_t n_cliffords, std::uint64_t seed);

}  // namespace plateau
