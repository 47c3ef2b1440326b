#include "plateau/circuit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "plateau/rng.hpp"

namespace plateau {

std::string gate_kind_name(GateKind k) {
  switch (k) {
    case GateKind::Hadamard: return "h";
    case GateKind::PhaseS: return "s";
    case GateKind::Cnot: return "cx";
    case GateKind::Cz: return "cz";
    case GateKind::Swap: return "swap";
    case GateKind::Rotation: return "rot";
    case GateKind::FixedRotation: return "fixed";
  }
  throw std::logic_error("bad GateKind");
}

GateKind gate_kind_from_name(const std::string& name) {
  if (name == "h") return GateKind::Hadamard;
  if (name == "s") return GateKind::PhaseS;
  if (name == "cx" || name == "cnot") return GateKind::Cnot;
  if (name == "cz") return GateKind::Cz;
  if (name == "swap") return GateKind::Swap;
  if (name == "rot") return GateKind::Rotation;
  if (name == "fixed") return GateKind::FixedRotation;
  throw std::invalid_argument("unknown gate kind '" + name + "'");
}

bool Gate::operator==(const Gate& other) const {
  return kind == other.kind && qubits == other.qubits && generator == other.generator &&
         param_index == other.param_index && angle == other.angle;
}

namespace {
Gate clifford_gate(GateKind kind, std::size_t n, std::vector<std::uint32_t> qubits) {
  for (auto q : qubits)
    if (q >= n) throw std::invalid_argument("gate qubit index out of range");
  if (qubits.size() == 2 && qubits[0] == qubits[1])
    throw std::invalid_argument("two-qubit gate needs distinct qubits");
  Gate g;
  g.kind = kind;
  g.qubits = std::move(qubits);
  g.generator = PauliString(n);
  return g;
}
}  // namespace

Gate make_hadamard(std::size_t n, std::uint32_t q) { return clifford_gate(GateKind::Hadamard, n, {q}); }
Gate make_phase_s(std::size_t n, std::uint32_t q) { return clifford_gate(GateKind::PhaseS, n, {q}); }
Gate make_cnot(std::size_t n, std::uint32_t control, std::uint32_t target) {
  return clifford_gate(GateKind::Cnot, n, {control, target});
}
Gate make_cz(std::size_t n, std::uint32_t a, std::uint32_t b) {
  return clifford_gate(GateKind::Cz, n, {a, b});
}
Gate make_swap(std::size_t n, std::uint32_t a, std::uint32_t b) {
  return clifford_gate(GateKind::Swap, n, {a, b});
}

Gate make_rotation(const PauliString& generator, std::int32_t param_index) {
  if (generator.is_identity())
    throw std::invalid_argument("rotation generator must be non-identity");
  if (!generator.is_hermitian() || generator.phase() != 0)
    throw std::invalid_argument("rotation generator must carry phase 0");
  Gate g;
  g.kind = GateKind::Rotation;
  g.generator = generator;
  g.param_index = param_index;
  for (std::size_t q = 0; q < generator.num_qubits(); ++q)
    if (generator.at(q) != Pauli::I) g.qubits.push_back(static_cast<std::uint32_t>(q));
  return g;
}

Gate make_rotation(std::size_t n, Pauli axis, std::uint32_t q, std::int32_t param_index) {
  return make_rotation(PauliString::single(n, q, axis), param_index);
}

Gate make_fixed_rotation(std::size_t n, Pauli axis, std::uint32_t q, double angle) {
  Gate g = make_rotation(PauliString::single(n, q, axis), -1);
  g.kind = GateKind::FixedRotation;
  g.angle = angle;
  return g;
}

Gate make_t_gate(std::size_t n, std::uint32_t q) {
  return make_fixed_rotation(n, Pauli::Z, q, std::numbers::pi / 4.0);
}

ParameterizedCircuit::ParameterizedCircuit(std::size_t n, std::size_t m, std::vector<Gate> gates)
    : n_(n), m_(m), gates_(std::move(gates)) {
  for (const auto& g : gates_) {
    for (auto q : g.qubits)
      if (q >= n_) throw std::invalid_argument("circuit gate addresses qubit out of range");
    if (g.is_rotation() && g.generator.num_qubits() != n_)
      throw std::invalid_argument("rotation generator width differs from circuit width");
  }
}

void ParameterizedCircuit::append(Gate g) {
  for (auto q : g.qubits)
    if (q >= n_) throw std::invalid_argument("circuit gate addresses qubit out of range");
  gates_.push_back(std::move(g));
}

std::optional<std::vector<Pauli>> ParameterizedCircuit::layer_axes(std::size_t first_gate) const {
  if (gates_.size() < first_gate + n_) return std::nullopt;
  std::vector<Pauli> axes(n_, Pauli::I);
  for (std::size_t i = first_gate; i < first_gate + n_; ++i) {
    const Gate& g = gates_[i];
    if (g.kind != GateKind::Rotation || g.qubits.size() != 1) return std::nullopt;
    std::uint32_t q = g.qubits[0];
    if (axes[q] != Pauli::I) return std::nullopt;  // qubit rotated twice in one layer
    axes[q] = g.generator.at(q);
  }
  for (Pauli a : axes)
    if (a == Pauli::I) return std::nullopt;
  return axes;
}

std::optional<std::vector<Pauli>> ParameterizedCircuit::first_layer_axes() const {
  return layer_axes(0);
}

std::optional<std::vector<Pauli>> ParameterizedCircuit::second_layer_axes() const {
  return layer_axes(n_);
}

bool ParameterizedCircuit::operator==(const ParameterizedCircuit& other) const {
  return n_ == other.n_ && m_ == other.m_ && gates_ == other.gates_;
}

ValidationReport validate_circuit_class(const ParameterizedCircuit& c) {
  ValidationReport report;
  auto fail = [&report](std::string msg) {
    report.valid = false;
    report.violations.push_back(std::move(msg));
  };

  auto nu = c.first_layer_axes();
  auto mu = c.second_layer_axes();
  if (!nu || !mu) {
    fail("initial orthogonal layers: the first 2n gates must form two adjacent full layers of "
         "single-qubit rotations");
  } else {
    for (std::size_t q = 0; q < c.num_qubits(); ++q)
      if ((*nu)[q] == (*mu)[q]) {
        fail("initial orthogonal layers: qubit " + std::to_string(q) +
             " has equal axes in both layers");
        break;
      }
  }

  std::vector<std::size_t> uses(c.num_parameters(), 0);
  for (const auto& g : c.gates()) {
    if (!g.is_rotation()) continue;
    if (g.param_index < 0 || static_cast<std::size_t>(g.param_index) >= c.num_parameters()) {
      fail("parameters: rotation uses index " + std::to_string(g.param_index) +
           " outside [0, m)");
      continue;
    }
    uses[static_cast<std::size_t>(g.param_index)] += 1;
  }
  for (std::size_t k = 0; k < uses.size(); ++k) {
    if (uses[k] == 0) fail("parameters: index " + std::to_string(k) + " is unused");
    if (uses[k] > 1)
      fail("parameters: index " + std::to_string(k) + " is shared by " +
           std::to_string(uses[k]) + " gates (dependent parameters)");
  }

  const double quarter = std::numbers::pi / 2.0;
  for (std::size_t i = 0; i < c.gates().size(); ++i) {
    const Gate& g = c.gates()[i];
    if (g.kind != GateKind::FixedRotation) continue;
    double turns = g.angle / quarter;
    if (std::fabs(turns - std::round(turns)) > 1e-9)
      fail("fixed gates: gate " + std::to_string(i) + " rotates by " + std::to_string(g.angle) +
           " rad, which is not Clifford");
  }

  return report;
}

Entanglement entanglement_from_name(const std::string& name) {
  if (name == "pairwise") return Entanglement::Pairwise;
  if (name == "linear") return Entanglement::Linear;
  if (name == "circular") return Entanglement::Circular;
  throw std::invalid_argument("unknown entanglement '" + name + "'");
}

std::string entanglement_name(Entanglement e) {
  switch (e) {
    case Entanglement::Pairwise: return "pairwise";
    case Entanglement::Linear: return "linear";
    case Entanglement::Circular: return "circular";
  }
  throw std::logic_error("bad Entanglement");
}

namespace {
void append_rotation_layer(ParameterizedCircuit& c, std::size_t n, Pauli axis,
                           std::size_t& next_param) {
  for (std::uint32_t q = 0; q < n; ++q)
    c.append(make_rotation(n, axis, q, static_cast<std::int32_t>(next_param++)));
}

void append_entangling_layer(ParameterizedCircuit& c, std::size_t n, Entanglement e) {
  switch (e) {
    case Entanglement::Pairwise:
      for (std::uint32_t q = 0; q + 1 < n; q += 2) c.append(make_cnot(n, q, q + 1));
      for (std::uint32_t q = 1; q + 1 < n; q += 2) c.append(make_cnot(n, q, q + 1));
      break;
    case Entanglement::Linear:
      for (std::uint32_t q = 0; q + 1 < n; ++q) c.append(make_cnot(n, q, q + 1));
      break;
    case Entanglement::Circular:
      for (std::uint32_t q = 0; q + 1 < n; ++q) c.append(make_cnot(n, q, q + 1));
      if (n > 2) c.append(make_cnot(n, static_cast<std::uint32_t>(n - 1), 0));
      break;
  }
}
}  // namespace

ParameterizedCircuit build_efficient_su2(std::size_t n, std::size_t depth, RotationAxes axes,
                                         Entanglement entanglement) {
  if (n < 2) throw std::invalid_argument("build_efficient_su2: need n >= 2");
  if (axes.first == axes.second || axes.first == Pauli::I || axes.second == Pauli::I)
    throw std::invalid_argument("build_efficient_su2: rotation axes must be distinct non-identity");
  std::size_t m = 2 * n * (depth + 1);
  ParameterizedCircuit c(n, m, {});
  std::size_t next_param = 0;
  append_rotation_layer(c, n, axes.first, next_param);
  append_rotation_layer(c, n, axes.second, next_param);
  for (std::size_t d = 0; d < depth; ++d) {
    append_entangling_layer(c, n, entanglement);
    append_rotation_layer(c, n, axes.first, next_param);
    append_rotation_layer(c, n, axes.second, next_param);
  }
  return c;
}

namespace {
PauliString two_qubit_generator(std::size_t n, std::uint32_t a, std::uint32_t b, Pauli axis) {
  PauliString g(n);
  g.set(a, axis);
  g.set(b, axis);
  return g;
}

void append_cartan_block(ParameterizedCircuit& c, std::size_t n, std::uint32_t a, std::uint32_t b,
                         std::size_t& next_param) {
  c.append(make_rotation(n, Pauli::Y, a, static_cast<std::int32_t>(next_param++)));
  c.append(make_rotation(n, Pauli::Y, b, static_cast<std::int32_t>(next_param++)));
  c.append(make_rotation(n, Pauli::Z, a, static_cast<std::int32_t>(next_param++)));
  c.append(make_rotation(n, Pauli::Z, b, static_cast<std::int32_t>(next_param++)));
  c.append(make_rotation(two_qubit_generator(n, a, b, Pauli::X), static_cast<std::int32_t>(next_param++)));
  c.append(make_rotation(two_qubit_generator(n, a, b, Pauli::Y), static_cast<std::int32_t>(next_param++)));
  c.append(make_rotation(two_qubit_generator(n, a, b, Pauli::Z), static_cast<std::int32_t>(next_param++)));
}
}  // namespace

ParameterizedCircuit build_cartan(std::size_t n, std::size_t depth) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("build_cartan: need even n >= 2");
  std::size_t blocks_per_unit = n / 2 + (n >= 4 ? n / 2 - 1 : 0);
  std::size_t m = 2 * n + depth * blocks_per_unit * 7;
  ParameterizedCircuit c(n, m, {});
  std::size_t next_param = 0;
  append_rotation_layer(c, n, Pauli::Y, next_param);
  append_rotation_layer(c, n, Pauli::Z, next_param);
  for (std::size_t d = 0; d < depth; ++d) {
    for (std::uint32_t q = 0; q + 1 < n; q += 2) append_cartan_block(c, n, q, q + 1, next_param);
    for (std::uint32_t q = 1; q + 1 < n; q += 2) append_cartan_block(c, n, q, q + 1, next_param);
  }
  return c;
}

ParameterizedCircuit random_class_circuit(std::size_t n, std::size_t extra_rotations,
                                          std::size_t n_cliffords, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_class_circuit: need n >= 1");
  CounterRng rng(seed, 0);
  static const Pauli kAxes[3] = {Pauli::X, Pauli::Y, Pauli::Z};

  std::size_t m = 2 * n + extra_rotations;
  ParameterizedCircuit c(n, m, {});
  std::size_t next_param = 0;
  std::vector<Pauli> first(n), second(n);
  for (std::size_t q = 0; q < n; ++q) {
    first[q] = kAxes[rng.next_below(3)];
    do {
      second[q] = kAxes[rng.next_below(3)];
    } while (second[q] == first[q]);
  }
  for (std::uint32_t q = 0; q < n; ++q)
    c.append(make_rotation(n, first[q], q, static_cast<std::int32_t>(next_param++)));
  for (std::uint32_t q = 0; q < n; ++q)
    c.append(make_rotation(n, second[q], q, static_cast<std::int32_t>(next_param++)));

  std::size_t rotations_left = extra_rotations;
  std::size_t cliffords_left = n_cliffords;
  while (rotations_left + cliffords_left > 0) {
    bool pick_rotation =
        rotations_left > 0 && (cliffords_left == 0 || rng.next_below(2) == 0);
    if (pick_rotation) {
      PauliString g(n);
      std::size_t support = 1 + (n > 1 ? rng.next_below(2) : 0);
      std::size_t q0 = rng.next_below(n);
      g.set(q0, kAxes[rng.next_below(3)]);
      if (support == 2) {
        std::size_t q1 = rng.next_below(n);
        while (q1 == q0) q1 = rng.next_below(n);
        g.set(q1, kAxes[rng.next_below(3)]);
      }
      c.append(make_rotation(g, static_cast<std::int32_t>(next_param++)));
      --rotations_left;
    } else {
      std::size_t kind = rng.next_below(n > 1 ? 5 : 2);
      std::uint32_t a = static_cast<std::uint32_t>(rng.next_below(n));
      std::uint32_t b = a;
      if (n > 1)
        while (b == a) b = static_cast<std::uint32_t>(rng.next_below(n));
      switch (kind) {
        case 0: c.append(make_hadamard(n, a)); break;
        case 1: c.append(make_phase_s(n, a)); break;
        case 2: c.append(make_cnot(n, a, b)); break;
        case 3: c.append(make_cz(n, a, b)); break;
        default: c.append(make_swap(n, a, b)); break;
      }
      --cliffords_left;
    }
  }
  return c;
}

}  // namespace plateau
