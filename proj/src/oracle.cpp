#include "plateau/oracle.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "plateau/errors.hpp"
#include "plateau/estimator.hpp"
#include "plateau/rng.hpp"
#include "plateau/stats.hpp"

namespace plateau {

namespace {

using Complex = std::complex<double>;

constexpr Complex kImag{0.0, 1.0};

// ---- statevector kernels; qubit indices are offset so the same code drives
// the row and column subsystems of a density matrix.

void apply_hadamard(std::vector<Complex>& v, std::size_t q) {
  const std::size_t bit = std::size_t{1} << q;
  const double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i & bit) continue;
    Complex a = v[i], b = v[i | bit];
    v[i] = (a + b) * inv_sqrt2;
    v[i | bit] = (a - b) * inv_sqrt2;
  }
}

void apply_phase_s(std::vector<Complex>& v, std::size_t q, bool conjugated) {
  const std::size_t bit = std::size_t{1} << q;
  const Complex f = conjugated ? -kImag : kImag;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (i & bit) v[i] *= f;
}

void apply_cnot(std::vector<Complex>& v, std::size_t control, std::size_t target) {
  const std::size_t cb = std::size_t{1} << control;
  const std::size_t tb = std::size_t{1} << target;
  for (std::size_t i = 0; i < v.size(); ++i)
    if ((i & cb) && !(i & tb)) std::swap(v[i], v[i | tb]);
}

void apply_cz(std::vector<Complex>& v, std::size_t a, std::size_t b) {
  const std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
  for (std::size_t i = 0; i < v.size(); ++i)
    if ((i & mask) == mask) v[i] = -v[i];
}

void apply_swap(std::vector<Complex>& v, std::size_t a, std::size_t b) {
  const std::size_t ab = std::size_t{1} << a;
  const std::size_t bb = std::size_t{1} << b;
  for (std::size_t i = 0; i < v.size(); ++i)
    if ((i & ab) && !(i & bb)) std::swap(v[i], v[(i ^ ab) | bb]);
}

// P|x> = i^{phase + #Y} (-1)^{|z & x|} |x ^ flip>; the conjugated variant
// applies the complex-conjugate matrix.
struct PauliAction {
  std::size_t flip = 0;
  std::size_t zmask = 0;
  Complex prefactor{1.0, 0.0};
};

PauliAction pauli_action(const PauliString& p, std::size_t qubit_offset, bool conjugated) {
  PauliAction act;
  int i_power = p.phase();
  for (std::size_t q = 0; q < p.num_qubits(); ++q) {
    Pauli letter = p.at(q);
    if (letter == Pauli::I) continue;
    std::size_t bit = std::size_t{1} << (q + qubit_offset);
    if (letter == Pauli::X || letter == Pauli::Y) act.flip |= bit;
    if (letter == Pauli::Z || letter == Pauli::Y) act.zmask |= bit;
    if (letter == Pauli::Y) i_power += 1;
  }
  i_power &= 3;
  if (conjugated) i_power = (4 - i_power) & 3;
  static const Complex powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  act.prefactor = powers[i_power];
  return act;
}

void apply_pauli(const std::vector<Complex>& in, std::vector<Complex>& out,
                 const PauliAction& act) {
  out.resize(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    double sign = (std::popcount(i & act.zmask) & 1) ? -1.0 : 1.0;
    out[i ^ act.flip] = act.prefactor * sign * in[i];
  }
}

void apply_rotation(std::vector<Complex>& v, std::vector<Complex>& scratch,
                    const PauliString& generator, std::size_t qubit_offset, double angle,
                    bool conjugated) {
  // R_G(angle) = cos(angle/2) I - i sin(angle/2) G; conjugation flips the i.
  PauliAction act = pauli_action(generator, qubit_offset, conjugated);
  apply_pauli(v, scratch, act);
  double c = std::cos(angle / 2.0);
  Complex s = (conjugated ? kImag : -kImag) * std::sin(angle / 2.0);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = c * v[i] + s * scratch[i];
}

void apply_gate(std::vector<Complex>& v, std::vector<Complex>& scratch, const Gate& g,
                double theta, std::size_t qubit_offset, bool conjugated) {
  switch (g.kind) {
    case GateKind::Hadamard: apply_hadamard(v, g.qubits[0] + qubit_offset); break;
    case GateKind::PhaseS: apply_phase_s(v, g.qubits[0] + qubit_offset, conjugated); break;
    case GateKind::Cnot:
      apply_cnot(v, g.qubits[0] + qubit_offset, g.qubits[1] + qubit_offset);
      break;
    case GateKind::Cz: apply_cz(v, g.qubits[0] + qubit_offset, g.qubits[1] + qubit_offset); break;
    case GateKind::Swap:
      apply_swap(v, g.qubits[0] + qubit_offset, g.qubits[1] + qubit_offset);
      break;
    case GateKind::Rotation:
      apply_rotation(v, scratch, g.generator, qubit_offset, theta, conjugated);
      break;
    case GateKind::FixedRotation:
      apply_rotation(v, scratch, g.generator, qubit_offset, g.angle, conjugated);
      break;
  }
}

class DenseSimulator {
 public:
  DenseSimulator(const ParameterizedCircuit& c, const ProductState& rho, const OracleCaps& caps)
      : circuit_(c), n_(c.num_qubits()) {
    if (rho.num_qubits() != n_) throw std::invalid_argument("oracle: state width mismatch");
    pure_ = rho.is_pure_product();
    if (pure_) {
      if (n_ > caps.max_pure_qubits)
        throw CapExceeded("oracle: qubit count exceeds the pure-state cap");
      initial_ = pure_amplitudes(rho);
    } else {
      if (n_ > caps.max_mixed_qubits)
        throw CapExceeded("oracle: qubit count exceeds the density-matrix cap");
      initial_ = density_entries(rho);
    }
  }

  // State after U(theta), as amplitudes (pure) or a flattened density matrix.
  void evolve(std::span<const double> theta) {
    if (theta.size() != circuit_.num_parameters())
      throw std::invalid_argument("oracle: parameter vector length differs from m");
    state_ = initial_;
    for (const Gate& g : circuit_.gates()) {
      double value = g.is_rotation() ? theta[static_cast<std::size_t>(g.param_index)] : 0.0;
      apply_gate(state_, scratch_, g, value, 0, false);
      if (!pure_)
        apply_gate(state_, scratch_, g, value, n_, true);  // right side of G rho G^dagger
    }
  }

  double expectation(const PauliString& p) const {
    PauliAction act = pauli_action(p, 0, false);
    Complex acc{0.0, 0.0};
    if (pure_) {
      for (std::size_t i = 0; i < state_.size(); ++i) {
        double sign = (std::popcount(i & act.zmask) & 1) ? -1.0 : 1.0;
        acc += std::conj(state_[i ^ act.flip]) * (act.prefactor * sign) * state_[i];
      }
    } else {
      // Tr(rho P) = sum_x amp(x) rho[x, x ^ flip]
      for (std::size_t x = 0; x < (std::size_t{1} << n_); ++x) {
        double sign = (std::popcount(x & act.zmask) & 1) ? -1.0 : 1.0;
        acc += act.prefactor * sign * state_[x + ((x ^ act.flip) << n_)];
      }
    }
    return acc.real();
  }

  double expectation(const Observable& h) const {
    double total = 0.0;
    for (const auto& t : h.terms()) total += t.coeff * expectation(t.pauli);
    return total;
  }

 private:
  std::vector<Complex> pure_amplitudes(const ProductState& rho) const {
    std::vector<Complex> v{Complex{1.0, 0.0}};
    for (std::size_t q = 0; q < n_; ++q) {
      const auto& b = rho.bloch(q);
      double theta = std::acos(std::clamp(b[2], -1.0, 1.0));
      double phi = std::atan2(b[1], b[0]);
      Complex a0{std::cos(theta / 2.0), 0.0};
      Complex a1 = std::polar(std::sin(theta / 2.0), phi);
      std::vector<Complex> next(v.size() * 2);
      for (std::size_t i = 0; i < v.size(); ++i) {
        next[i] = v[i] * a0;
        next[i + v.size()] = v[i] * a1;
      }
      v = std::move(next);
    }
    return v;
  }

  std::vector<Complex> density_entries(const ProductState& rho) const {
    std::size_t dim = std::size_t{1} << n_;
    std::vector<Complex> m(dim * dim);
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) {
        Complex entry{1.0, 0.0};
        for (std::size_t q = 0; q < n_ && entry != Complex{0.0, 0.0}; ++q) {
          const auto& b = rho.bloch(q);
          bool rb = (r >> q) & 1u, cb = (c >> q) & 1u;
          Complex f;
          if (!rb && !cb)
            f = Complex{(1.0 + b[2]) / 2.0, 0.0};
          else if (rb && cb)
            f = Complex{(1.0 - b[2]) / 2.0, 0.0};
          else if (!rb && cb)
            f = Complex{b[0] / 2.0, -b[1] / 2.0};
          else
            f = Complex{b[0] / 2.0, b[1] / 2.0};
          entry *= f;
        }
        m[r + (c << n_)] = entry;
      }
    }
    return m;
  }

  const ParameterizedCircuit& circuit_;
  std::size_t n_;
  bool pure_;
  std::vector<Complex> initial_;
  std::vector<Complex> state_;
  mutable std::vector<Complex> scratch_;
};

void check_class(const ParameterizedCircuit& c, bool allow_invalid) {
  if (allow_invalid) return;
  ValidationReport report = validate_circuit_class(c);
  if (!report.valid) {
    std::string msg = "oracle: circuit is outside the supported class (pass allow_invalid_class "
                      "to waive):";
    for (const auto& v : report.violations) msg += "\n  - " + v;
    throw ClassValidationError(msg);
  }
}

}  // namespace

double oracle_loss(const ParameterizedCircuit& c, std::span<const double> theta,
                   const Observable& h, const ProductState& rho, const OracleCaps& caps) {
  DenseSimulator sim(c, rho, caps);
  sim.evolve(theta);
  return sim.expectation(h);
}

std::vector<double> oracle_term_losses(const ParameterizedCircuit& c,
                                       std::span<const double> theta, const Observable& h,
                                       const ProductState& rho, const OracleCaps& caps) {
  DenseSimulator sim(c, rho, caps);
  sim.evolve(theta);
  std::vector<double> out;
  out.reserve(h.terms().size());
  for (const auto& t : h.terms()) out.push_back(sim.expectation(t.pauli));
  return out;
}

std::vector<double> oracle_gradient(const ParameterizedCircuit& c, std::span<const double> theta,
                                    const Observable& h, const ProductState& rho,
                                    const OracleCaps& caps) {
  DenseSimulator sim(c, rho, caps);
  std::vector<double> shifted(theta.begin(), theta.end());
  std::vector<double> grad(theta.size());
  const double half_pi = std::numbers::pi / 2.0;
  for (std::size_t k = 0; k < theta.size(); ++k) {
    shifted[k] = theta[k] + half_pi;
    sim.evolve(shifted);
    double plus = sim.expectation(h);
    shifted[k] = theta[k] - half_pi;
    sim.evolve(shifted);
    double minus = sim.expectation(h);
    shifted[k] = theta[k];
    grad[k] = 0.5 * (plus - minus);
  }
  return grad;
}

std::vector<double> oracle_gradient_fd(const ParameterizedCircuit& c,
                                       std::span<const double> theta, const Observable& h,
                                       const ProductState& rho, double step,
                                       const OracleCaps& caps) {
  DenseSimulator sim(c, rho, caps);
  std::vector<double> shifted(theta.begin(), theta.end());
  std::vector<double> grad(theta.size());
  for (std::size_t k = 0; k < theta.size(); ++k) {
    shifted[k] = theta[k] + step;
    sim.evolve(shifted);
    double plus = sim.expectation(h);
    shifted[k] = theta[k] - step;
    sim.evolve(shifted);
    double minus = sim.expectation(h);
    shifted[k] = theta[k];
    grad[k] = (plus - minus) / (2.0 * step);
  }
  return grad;
}

MomentReport moment_suite(const ParameterizedCircuit& c, const Observable& h,
                          const ProductState& rho, const MomentOptions& options,
                          const OracleCaps& caps) {
  if (h.empty()) throw std::invalid_argument("moment_suite: empty observable");
  check_class(c, options.allow_invalid_class);
  DenseSimulator sim(c, rho, caps);

  const auto& terms = h.terms();
  std::size_t t_count = terms.size();
  std::size_t m = c.num_parameters();
  double c0 = h.identity_coefficient();

  std::vector<MomentAccumulator> term_acc(t_count);
  std::vector<MeanAccumulator> pair_acc(t_count * t_count);
  MomentAccumulator loss_acc;
  MeanAccumulator gap_acc;
  std::vector<MomentAccumulator> grad_acc(options.with_gradients ? m : 0);

  const double half_range = options.range_scale * std::numbers::pi;
  std::vector<double> theta(m);
  std::vector<double> values(t_count);
  DenseSimulator* grad_sim = options.with_gradients ? &sim : nullptr;
  std::vector<double> shifted(m);

  for (std::size_t s = 0; s < options.n_samples; ++s) {
    CounterRng rng(options.seed, s);
    for (std::size_t k = 0; k < m; ++k) theta[k] = rng.next_uniform(-half_range, half_range);
    sim.evolve(theta);
    double loss = 0.0;
    for (std::size_t t = 0; t < t_count; ++t) {
      values[t] = sim.expectation(terms[t].pauli);
      term_acc[t].add(values[t]);
      loss += terms[t].coeff * values[t];
    }
    loss_acc.add(loss);
    double gap = (loss - c0) * (loss - c0);
    for (std::size_t a = 0; a < t_count; ++a) {
      if (terms[a].pauli.is_identity()) continue;
      gap -= terms[a].coeff * terms[a].coeff * values[a] * values[a];
      for (std::size_t b = a + 1; b < t_count; ++b)
        pair_acc[a * t_count + b].add(values[a] * values[b]);
    }
    gap_acc.add(gap);

    if (grad_sim) {
      const double half_pi = std::numbers::pi / 2.0;
      for (std::size_t k = 0; k < m; ++k) {
        shifted = theta;
        shifted[k] = theta[k] + half_pi;
        grad_sim->evolve(shifted);
        double plus = grad_sim->expectation(h);
        shifted[k] = theta[k] - half_pi;
        grad_sim->evolve(shifted);
        double minus = grad_sim->expectation(h);
        double g = 0.5 * (plus - minus);
        grad_acc[k].add(g * g);
      }
    }
  }

  MomentReport report;
  report.n_samples = options.n_samples;
  report.range_scale = options.range_scale;
  report.seed = options.seed;
  for (std::size_t t = 0; t < t_count; ++t) {
    TermMoment tm;
    tm.label = terms[t].pauli.label();
    tm.coeff = terms[t].coeff;
    tm.mean = term_acc[t].mean();
    tm.mean_se = term_acc[t].mean_std_error();
    tm.second_moment = term_acc[t].second_moment();
    tm.second_moment_se = term_acc[t].variance_std_error();
    report.terms.push_back(std::move(tm));
  }
  for (std::size_t a = 0; a < t_count; ++a)
    for (std::size_t b = a + 1; b < t_count; ++b) {
      const auto& acc = pair_acc[a * t_count + b];
      if (acc.count() == 0) continue;
      PairMoment pm;
      pm.label_a = terms[a].pauli.label();
      pm.label_b = terms[b].pauli.label();
      pm.product_mean = acc.mean();
      pm.product_se = acc.std_error();
      report.pairs.push_back(std::move(pm));
    }
  report.loss_mean = loss_acc.mean();
  report.loss_mean_se = loss_acc.mean_std_error();
  report.loss_variance = loss_acc.variance();
  report.loss_variance_se = loss_acc.variance_std_error();
  double wtv = 0.0;
  for (std::size_t t = 0; t < t_count; ++t) {
    if (terms[t].pauli.is_identity()) continue;
    wtv += terms[t].coeff * terms[t].coeff * term_acc[t].variance();
  }
  report.weighted_term_variance = wtv;
  report.independence_gap = gap_acc.mean();
  report.independence_gap_se = gap_acc.std_error();
  for (std::size_t k = 0; k < grad_acc.size(); ++k)
    report.gradients.push_back(
        GradientMoment{k, grad_acc[k].mean(), grad_acc[k].mean_std_error()});
  return report;
}

ReductionCheck discrete_reduction_check(const ParameterizedCircuit& c, const PauliString& p,
                                        const ProductState& rho, std::size_t n_samples,
                                        std::uint64_t seed, const OracleCaps& caps) {
  if (p.is_identity()) throw std::domain_error("discrete_reduction_check: identity term");
  Observable h(c.num_qubits());
  h.add_term(1.0, p);

  DenseSimulator sim(c, rho, caps);
  std::size_t m = c.num_parameters();
  MomentAccumulator acc;
  std::vector<double> theta(m);
  for (std::size_t s = 0; s < n_samples; ++s) {
    CounterRng rng(seed, s);
    for (std::size_t k = 0; k < m; ++k)
      theta[k] = rng.next_uniform(-std::numbers::pi, std::numbers::pi);
    sim.evolve(theta);
    acc.add(sim.expectation(p));
  }

  ReductionCheck check;
  check.n_samples = n_samples;
  check.continuous_variance = acc.variance();
  check.continuous_se = acc.variance_std_error();

  SampleSpec spec;
  spec.n_samples = std::max<std::size_t>(n_samples, std::size_t{1} << std::min<std::size_t>(m, 20));
  spec.seed = seed + 1;
  spec.allow_invalid_class = true;
  BoundReport discrete = estimate_term(c, p, rho, spec);
  check.discrete_value = discrete.variance.estimate;
  check.discrete_exact = discrete.exact;
  if (!discrete.exact) {
    double half_width = (discrete.variance.hi - discrete.variance.lo) / 2.0;
    double z95 = inverse_normal_cdf(0.975);
    check.discrete_se = half_width / z95;
  }
  // floor the combined error at the double-precision noise carried by the
  // simulated losses, so identically-zero instances do not divide rounding
  // dust by a still smaller standard error
  double se = std::sqrt(check.continuous_se * check.continuous_se +
                        check.discrete_se * check.discrete_se);
  se = std::max(se, 1e-12);
  check.z = (check.continuous_variance - check.discrete_value) / se;
  return check;
}

}  // namespace plateau
