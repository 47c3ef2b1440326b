#include "plateau/propagation.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "plateau/rng.hpp"

namespace plateau {

std::vector<double> DiscreteAssignment::angles() const {
  std::vector<double> a(m);
  for (std::size_t i = 0; i < m; ++i) a[i] = bit(i) ? std::numbers::pi / 2.0 : 0.0;
  return a;
}

DiscreteAssignment DiscreteAssignment::from_index(std::size_t m, std::uint64_t index) {
  if (m > 64) throw std::invalid_argument("DiscreteAssignment::from_index: m > 64");
  DiscreteAssignment a(m);
  if (m > 0) a.bits[0] = (m == 64) ? index : (index & ((std::uint64_t{1} << m) - 1));
  return a;
}

DiscreteAssignment DiscreteAssignment::sample(std::size_t m, std::uint64_t seed,
                                              std::uint64_t sample_index) {
  DiscreteAssignment a(m);
  CounterRng rng(seed, sample_index);
  for (auto& w : a.bits) w = rng.next_u64();
  if (m % 64 != 0 && !a.bits.empty()) a.bits.back() &= (std::uint64_t{1} << (m % 64)) - 1;
  return a;
}

namespace {

// Local conjugation entry: output letter codes plus the i-exponent picked up.
struct PairImage {
  std::uint8_t a;
  std::uint8_t b;
  std::uint8_t dphase;
};

// Images of single-qubit letters placed on one line of a two-qubit gate,
// expressed as 2-qubit Paulis. Composite letters multiply, so the full 16
// entry table follows from the X and Z generator images with phases handled
// by the exact Pauli product.
std::array<PairImage, 16> build_two_qubit_table(const PauliString& img_x0,
                                                const PauliString& img_z0,
                                                const PauliString& img_x1,
                                                const PauliString& img_z1) {
  auto line_image = [](const PauliString& ix, const PauliString& iz, std::uint8_t code) {
    PauliString r = PauliString::identity(2);
    // code bits: 1 = X present, 2 = Z present; Y = i * X * Z
    if (code == 1) return ix;
    if (code == 2) return iz;
    if (code == 3) {
      PauliString y = ix * iz;
      y.times_i(1);
      return y;
    }
    return r;
  };
  std::array<PairImage, 16> table{};
  for (std::uint8_t a = 0; a < 4; ++a) {
    for (std::uint8_t b = 0; b < 4; ++b) {
      PauliString img = line_image(img_x0, img_z0, a) * line_image(img_x1, img_z1, b);
      table[static_cast<std::size_t>(a) * 4 + b] =
          PairImage{static_cast<std::uint8_t>(img.at(0)), static_cast<std::uint8_t>(img.at(1)),
                    static_cast<std::uint8_t>(img.phase())};
    }
  }
  return table;
}

const std::array<PairImage, 16>& cnot_table() {
  // X_c -> X_c X_t, Z_c -> Z_c, X_t -> X_t, Z_t -> Z_c Z_t
  static const auto table = build_two_qubit_table(
      PauliString::from_label("XX"), PauliString::from_label("ZI"),
      PauliString::from_label("IX"), PauliString::from_label("ZZ"));
  return table;
}

const std::array<PairImage, 16>& cz_table() {
  // X_c -> X_c Z_t, Z_c -> Z_c, X_t -> Z_c X_t, Z_t -> Z_t
  static const auto table = build_two_qubit_table(
      PauliString::from_label("XZ"), PauliString::from_label("ZI"),
      PauliString::from_label("ZX"), PauliString::from_label("IZ"));
  return table;
}

const std::array<PairImage, 16>& swap_table() {
  static const auto table = build_two_qubit_table(
      PauliString::from_label("IX"), PauliString::from_label("IZ"),
      PauliString::from_label("XI"), PauliString::from_label("ZI"));
  return table;
}

// Single-qubit conjugation tables indexed by the letter code (I,X,Z,Y).
// Hadamard: X<->Z, Y -> -Y. S: X -> -Y, Y -> X, Z -> Z.
struct SingleImage {
  std::uint8_t code;
  std::uint8_t dphase;
};
constexpr std::array<SingleImage, 4> kHadamardTable = {
    SingleImage{0, 0}, SingleImage{2, 0}, SingleImage{1, 0}, SingleImage{3, 2}};
constexpr std::array<SingleImage, 4> kPhaseSTable = {
    SingleImage{0, 0}, SingleImage{3, 2}, SingleImage{2, 0}, SingleImage{1, 0}};

void apply_single(PauliString& p, std::uint32_t q, const std::array<SingleImage, 4>& table) {
  std::uint8_t code = static_cast<std::uint8_t>(p.at(q));
  const SingleImage& img = table[code];
  p.set(q, static_cast<Pauli>(img.code));
  p.times_i(img.dphase);
}

void apply_pair(PauliString& p, std::uint32_t qa, std::uint32_t qb,
                const std::array<PairImage, 16>& table) {
  std::uint8_t a = static_cast<std::uint8_t>(p.at(qa));
  std::uint8_t b = static_cast<std::uint8_t>(p.at(qb));
  const PairImage& img = table[static_cast<std::size_t>(a) * 4 + b];
  p.set(qa, static_cast<Pauli>(img.a));
  p.set(qb, static_cast<Pauli>(img.b));
  p.times_i(img.dphase);
}

void apply_rotation(PauliString& p, const PauliString& generator, int quarter_turns) {
  int k = ((quarter_turns % 4) + 4) % 4;
  if (k == 0 || p.commutes_with(generator)) return;
  // exp(iG theta/2) P exp(-iG theta/2) = cos(theta) P + sin(theta) iGP for
  // anticommuting G; at quarter turns this stays a single Pauli.
  switch (k) {
    case 1: p = generator * p; p.times_i(1); break;
    case 2: p.times_i(2); break;
    case 3: p = generator * p; p.times_i(3); break;
  }
}

int quarter_turns_from_angle(double angle) {
  double turns = angle / (std::numbers::pi / 2.0);
  double rounded = std::round(turns);
  if (std::fabs(turns - rounded) > 1e-9)
    throw std::domain_error(
        "conjugate_gate: rotation angle is not a multiple of pi/2; continuous angles belong to "
        "the dense oracle");
  return static_cast<int>(rounded) & 3;
}

}  // namespace

PauliString conjugate_gate(const PauliString& p, const Gate& g, int quarter_turns) {
  PauliString out = p;
  switch (g.kind) {
    case GateKind::Hadamard: apply_single(out, g.qubits[0], kHadamardTable); break;
    case GateKind::PhaseS: apply_single(out, g.qubits[0], kPhaseSTable); break;
    case GateKind::Cnot: apply_pair(out, g.qubits[0], g.qubits[1], cnot_table()); break;
    case GateKind::Cz: apply_pair(out, g.qubits[0], g.qubits[1], cz_table()); break;
    case GateKind::Swap: apply_pair(out, g.qubits[0], g.qubits[1], swap_table()); break;
    case GateKind::Rotation: {
      if (quarter_turns < 0 || quarter_turns > 3)
        throw std::domain_error("conjugate_gate: quarter turns must lie in {0,1,2,3}");
      apply_rotation(out, g.generator, quarter_turns);
      break;
    }
    case GateKind::FixedRotation:
      apply_rotation(out, g.generator, quarter_turns_from_angle(g.angle));
      break;
  }
  return out;
}

PropagatedFrame propagate(const ParameterizedCircuit& c, const DiscreteAssignment& theta,
                          const PauliString& p) {
  if (theta.m != c.num_parameters())
    throw std::invalid_argument("propagate: assignment length differs from parameter count");
  std::vector<std::uint8_t> turns(theta.m);
  for (std::size_t i = 0; i < theta.m; ++i) turns[i] = theta.bit(i) ? 1 : 0;
  return propagate_quarter_turns(c, turns, p);
}

PropagatedFrame propagate_quarter_turns(const ParameterizedCircuit& c,
                                        std::span<const std::uint8_t> quarter_turns,
                                        const PauliString& p) {
  return propagate_gate_range(c, quarter_turns, p, 0, c.gates().size());
}

PropagatedFrame propagate_gate_range(const ParameterizedCircuit& c,
                                     std::span<const std::uint8_t> quarter_turns,
                                     const PauliString& p, std::size_t begin_gate,
                                     std::size_t end_gate) {
  if (p.num_qubits() != c.num_qubits())
    throw std::invalid_argument("propagate: observable width differs from circuit width");
  if (quarter_turns.size() != c.num_parameters())
    throw std::invalid_argument("propagate: quarter-turn vector length differs from m");
  if (end_gate > c.gates().size() || begin_gate > end_gate)
    throw std::invalid_argument("propagate: bad gate range");

  PauliString cur = p;
  const auto& gates = c.gates();
  // U^dagger P U conjugates by the last-applied gate first.
  for (std::size_t i = end_gate; i-- > begin_gate;) {
    const Gate& g = gates[i];
    int turns = 0;
    if (g.kind == GateKind::Rotation) {
      if (g.param_index < 0 || static_cast<std::size_t>(g.param_index) >= quarter_turns.size())
        throw std::invalid_argument("propagate: rotation parameter index out of range");
      turns = quarter_turns[static_cast<std::size_t>(g.param_index)];
    }
    cur = conjugate_gate(cur, g, turns);
  }

  if (!cur.is_hermitian())
    throw std::logic_error("propagate: conjugation produced an imaginary phase");
  PropagatedFrame frame;
  frame.cone = static_cast<int>(cur.weight());
  frame.pauli = std::move(cur);
  return frame;
}

double loss_value_at_clifford_point(const PropagatedFrame& frame, const ProductState& rho) {
  if (frame.pauli.num_qubits() != rho.num_qubits())
    throw std::invalid_argument("loss_value_at_clifford_point: size mismatch");
  double value = frame.sign();
  for (std::size_t q = 0; q < rho.num_qubits(); ++q) {
    Pauli letter = frame.pauli.at(q);
    if (letter == Pauli::I) continue;
    value *= rho.component(q, letter);
    if (value == 0.0) return 0.0;
  }
  return value;
}

int full_cone(const ParameterizedCircuit& c, const PauliString& p, int n_probe,
              std::uint64_t seed) {
  std::size_t m = c.num_parameters();
  PauliString support_union(c.num_qubits());
  auto absorb = [&support_union](const PauliString& q) {
    for (std::size_t i = 0; i < q.num_qubits(); ++i)
      if (q.at(i) != Pauli::I) support_union.set(i, Pauli::X);
  };

  DiscreteAssignment zeros(m);
  absorb(propagate(c, zeros, p).pauli);
  DiscreteAssignment ones(m);
  for (std::size_t i = 0; i < m; ++i) ones.set_bit(i, true);
  absorb(propagate(c, ones, p).pauli);
  for (int s = 0; s < n_probe; ++s) {
    absorb(propagate(c, DiscreteAssignment::sample(m, seed, static_cast<std::uint64_t>(s)), p)
               .pauli);
  }
  return static_cast<int>(support_union.weight());
}

int cone_bound_algebraic(int k, int d) { return k + 4 * k * d; }

int cone_bound_topological(int span, int d) { return span + 4 * d; }

}  // namespace plateau
