#pragma once

// Naive dense-matrix reference used only by tests: full 2^n x 2^n complex
// matrices built from Kronecker products and basis-state permutations, kept
// deliberately independent of the library's simulator and conjugation code.

#include <cassert>
#include <cmath>
#include <complex>
#include <vector>

#include "plateau/circuit.hpp"
#include "plateau/state.hpp"

namespace dense_ref {

using Complex = std::complex<double>;

struct Mat {
  std::size_t dim = 0;
  std::vector<Complex> a;  // row-major

  explicit Mat(std::size_t d = 0) : dim(d), a(d * d, Complex{0, 0}) {}
  Complex& at(std::size_t r, std::size_t c) { return a[r * dim + c]; }
  const Complex& at(std::size_t r, std::size_t c) const { return a[r * dim + c]; }

  static Mat eye(std::size_t d) {
    Mat m(d);
    for (std::size_t i = 0; i < d; ++i) m.at(i, i) = 1.0;
    return m;
  }
};

inline Mat mul(const Mat& x, const Mat& y) {
  assert(x.dim == y.dim);
  Mat out(x.dim);
  for (std::size_t i = 0; i < x.dim; ++i)
    for (std::size_t k = 0; k < x.dim; ++k) {
      Complex v = x.at(i, k);
      if (v == Complex{0, 0}) continue;
      for (std::size_t j = 0; j < x.dim; ++j) out.at(i, j) += v * y.at(k, j);
    }
  return out;
}

inline Mat dagger(const Mat& x) {
  Mat out(x.dim);
  for (std::size_t i = 0; i < x.dim; ++i)
    for (std::size_t j = 0; j < x.dim; ++j) out.at(i, j) = std::conj(x.at(j, i));
  return out;
}

// kron with the second factor on the low (fast) index bits
inline Mat kron(const Mat& high, const Mat& low) {
  Mat out(high.dim * low.dim);
  for (std::size_t i2 = 0; i2 < high.dim; ++i2)
    for (std::size_t j2 = 0; j2 < high.dim; ++j2)
      for (std::size_t i1 = 0; i1 < low.dim; ++i1)
        for (std::size_t j1 = 0; j1 < low.dim; ++j1)
          out.at(i2 * low.dim + i1, j2 * low.dim + j1) = high.at(i2, j2) * low.at(i1, j1);
  return out;
}

inline Mat single_pauli(plateau::Pauli p) {
  Mat m(2);
  const Complex i{0, 1};
  switch (p) {
    case plateau::Pauli::I: m.at(0, 0) = 1; m.at(1, 1) = 1; break;
    case plateau::Pauli::X: m.at(0, 1) = 1; m.at(1, 0) = 1; break;
    case plateau::Pauli::Y: m.at(0, 1) = -i; m.at(1, 0) = i; break;
    case plateau::Pauli::Z: m.at(0, 0) = 1; m.at(1, 1) = -1; break;
  }
  return m;
}

inline Mat pauli_matrix(const plateau::PauliString& p) {
  Mat m = Mat::eye(1);
  // qubit 0 is the least significant index bit, so it is the innermost factor
  for (std::size_t q = 0; q < p.num_qubits(); ++q) m = kron(single_pauli(p.at(q)), m);
  static const Complex powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  Complex phase = powers[p.phase() & 3];
  for (auto& v : m.a) v *= phase;
  return m;
}

inline Mat embed_single(std::size_t n, std::size_t q, const Mat& gate) {
  Mat m = Mat::eye(1);
  for (std::size_t k = 0; k < n; ++k) m = kron(k == q ? gate : Mat::eye(2), m);
  return m;
}

inline Mat permutation_gate(std::size_t n, const plateau::Gate& g) {
  std::size_t dim = std::size_t{1} << n;
  Mat m(dim);
  for (std::size_t x = 0; x < dim; ++x) {
    std::size_t y = x;
    double sign = 1.0;
    if (g.kind == plateau::GateKind::Cnot) {
      if ((x >> g.qubits[0]) & 1u) y = x ^ (std::size_t{1} << g.qubits[1]);
    } else if (g.kind == plateau::GateKind::Cz) {
      if (((x >> g.qubits[0]) & 1u) && ((x >> g.qubits[1]) & 1u)) sign = -1.0;
    } else {  // swap
      std::size_t b0 = (x >> g.qubits[0]) & 1u, b1 = (x >> g.qubits[1]) & 1u;
      if (b0 != b1) y = x ^ (std::size_t{1} << g.qubits[0]) ^ (std::size_t{1} << g.qubits[1]);
    }
    m.at(y, x) = sign;
  }
  return m;
}

inline Mat gate_matrix(std::size_t n, const plateau::Gate& g, double theta) {
  const Complex i{0, 1};
  switch (g.kind) {
    case plateau::GateKind::Hadamard: {
      Mat h(2);
      double s = 1.0 / std::sqrt(2.0);
      h.at(0, 0) = s; h.at(0, 1) = s; h.at(1, 0) = s; h.at(1, 1) = -s;
      return embed_single(n, g.qubits[0], h);
    }
    case plateau::GateKind::PhaseS: {
      Mat s(2);
      s.at(0, 0) = 1; s.at(1, 1) = i;
      return embed_single(n, g.qubits[0], s);
    }
    case plateau::GateKind::Cnot:
    case plateau::GateKind::Cz:
    case plateau::GateKind::Swap: return permutation_gate(n, g);
    case plateau::GateKind::Rotation:
    case plateau::GateKind::FixedRotation: {
      double angle = g.kind == plateau::GateKind::FixedRotation ? g.angle : theta;
      Mat gen = pauli_matrix(g.generator);
      Mat out = Mat::eye(gen.dim);
      Complex c = std::cos(angle / 2.0);
      Complex s = -i * std::sin(angle / 2.0);
      for (std::size_t r = 0; r < gen.dim; ++r)
        for (std::size_t col = 0; col < gen.dim; ++col)
          out.at(r, col) = c * (r == col ? 1.0 : 0.0) + s * gen.at(r, col);
      return out;
    }
  }
  return Mat::eye(std::size_t{1} << n);
}

inline Mat circuit_unitary(const plateau::ParameterizedCircuit& c,
                           const std::vector<double>& theta) {
  Mat u = Mat::eye(std::size_t{1} << c.num_qubits());
  for (const auto& g : c.gates()) {
    double value = g.is_rotation() ? theta.at(static_cast<std::size_t>(g.param_index)) : 0.0;
    u = mul(gate_matrix(c.num_qubits(), g, value), u);
  }
  return u;
}

inline Mat density_matrix(const plateau::ProductState& rho) {
  Mat m = Mat::eye(1);
  for (std::size_t q = 0; q < rho.num_qubits(); ++q) {
    const auto& b = rho.bloch(q);
    Mat r(2);
    r.at(0, 0) = Complex{(1.0 + b[2]) / 2.0, 0.0};
    r.at(1, 1) = Complex{(1.0 - b[2]) / 2.0, 0.0};
    r.at(0, 1) = Complex{b[0] / 2.0, -b[1] / 2.0};
    r.at(1, 0) = Complex{b[0] / 2.0, b[1] / 2.0};
    m = kron(r, m);
  }
  return m;
}

inline Complex trace_mul(const Mat& x, const Mat& y) {
  Complex t{0, 0};
  for (std::size_t i = 0; i < x.dim; ++i)
    for (std::size_t k = 0; k < x.dim; ++k) t += x.at(i, k) * y.at(k, i);
  return t;
}

inline double max_abs_diff(const Mat& x, const Mat& y) {
  double worst = 0.0;
  for (std::size_t i = 0; i < x.a.size(); ++i) worst = std::max(worst, std::abs(x.a[i] - y.a[i]));
  return worst;
}

// Tr(U rho U^dagger H) evaluated entirely with the matrices above.
inline double loss(const plateau::ParameterizedCircuit& c, const std::vector<double>& theta,
                   const Mat& h, const plateau::ProductState& rho) {
  Mat u = circuit_unitary(c, theta);
  Mat evolved = mul(mul(u, density_matrix(rho)), dagger(u));
  return trace_mul(evolved, h).real();
}

}  // namespace dense_ref
