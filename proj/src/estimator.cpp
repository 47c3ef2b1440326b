#include "plateau/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "plateau/errors.hpp"
#include "plateau/rng.hpp"

namespace plateau {

namespace {

constexpr double kBinaryTol = 1e-12;

std::vector<Pauli> required_first_layer(const ParameterizedCircuit& c, const SampleSpec& spec) {
  ValidationReport report = validate_circuit_class(c);
  if (!report.valid && !spec.allow_invalid_class) {
    std::string msg = "circuit is outside the supported class:";
    for (const auto& v : report.violations) msg += "\n  - " + v;
    throw ClassValidationError(msg);
  }
  auto nu = c.first_layer_axes();
  if (!nu)
    throw std::domain_error(
        "estimator: cannot determine first-layer axes (no initial rotation layer)");
  return *nu;
}

bool use_exhaustive(std::size_t m, const SampleSpec& spec) {
  return m <= spec.exhaustive_limit && m < 64 &&
         (std::uint64_t{1} << m) <= static_cast<std::uint64_t>(spec.n_samples);
}

// One pass over either all 2^m assignments or n_samples sampled ones,
// invoking fn(sample_index, assignment).
template <typename Fn>
std::size_t for_each_assignment(std::size_t m, const SampleSpec& spec, bool exhaustive, Fn&& fn) {
  if (exhaustive) {
    std::uint64_t total = std::uint64_t{1} << m;
    for (std::uint64_t idx = 0; idx < total; ++idx)
      fn(idx, DiscreteAssignment::from_index(m, idx));
    return static_cast<std::size_t>(total);
  }
  for (std::size_t s = 0; s < spec.n_samples; ++s)
    fn(s, DiscreteAssignment::sample(m, spec.seed, s));
  return spec.n_samples;
}

Interval variance_interval(const MeanAccumulator& acc, bool binary, std::size_t ones,
                           bool exact, double confidence) {
  if (exact) return exact_interval(acc.mean());
  if (binary) return clopper_pearson(ones, acc.count(), confidence);
  return clamp_interval(normal_interval(acc.mean(), acc.std_error(), confidence), 0.0, 1.0);
}

Interval bound_interval(const MeanAccumulator& acc, double scale, bool exact, double confidence) {
  if (exact) return exact_interval(scale * acc.mean());
  Interval iv = normal_interval(acc.mean(), acc.std_error(), confidence);
  iv.estimate *= scale;
  iv.lo *= scale;
  iv.hi *= scale;
  return clamp_interval(iv, 0.0, 1.0);
}

}  // namespace

double orthogonality(const ProductState& rho, std::span<const Pauli> first_layer_axes) {
  if (first_layer_axes.size() != rho.num_qubits())
    throw std::invalid_argument("orthogonality: axes length differs from qubit count");
  double omega = 1.0;
  for (std::size_t q = 0; q < rho.num_qubits(); ++q) {
    Pauli nu = first_layer_axes[q];
    if (nu == Pauli::I) throw std::invalid_argument("orthogonality: axis must be non-identity");
    double r_nu = rho.component(q, nu);
    double w = rho.norm_sq(q) - r_nu * r_nu;
    omega *= std::max(0.0, w);
  }
  return omega;
}

double generalized_orthogonality(const ProductState& rho, const PauliString& frame_pauli,
                                 std::span<const Pauli> first_layer_axes,
                                 std::span<const Pauli> second_layer_axes) {
  std::size_t n = rho.num_qubits();
  if (frame_pauli.num_qubits() != n || first_layer_axes.size() != n ||
      second_layer_axes.size() != n)
    throw std::invalid_argument("generalized_orthogonality: size mismatch");
  double value = 1.0;
  for (std::size_t q = 0; q < n; ++q) {
    Pauli alpha = frame_pauli.at(q);
    if (alpha == Pauli::I) continue;  // lambda_q = 0 contributes weight 1
    double nu_comp = rho.component(q, first_layer_axes[q]);
    if (alpha == second_layer_axes[q]) {
      value *= std::max(0.0, rho.norm_sq(q) - nu_comp * nu_comp);
    } else {
      value *= rho.norm_sq(q);
    }
  }
  return value;
}

BoundReport estimate_term(const ParameterizedCircuit& c, const PauliString& p,
                          const ProductState& rho, const SampleSpec& spec) {
  if (p.is_identity())
    throw std::domain_error("estimate_term: identity term has zero variance by construction");
  if (p.num_qubits() != c.num_qubits() || rho.num_qubits() != c.num_qubits())
    throw std::invalid_argument("estimate_term: size mismatch");
  if (spec.n_samples == 0) throw std::invalid_argument("estimate_term: n_samples must be positive");

  std::vector<Pauli> nu = required_first_layer(c, spec);
  double omega = orthogonality(rho, nu);

  std::size_t m = c.num_parameters();
  bool exhaustive = use_exhaustive(m, spec);

  MeanAccumulator l2_acc, low_acc, up_acc;
  std::map<int, std::size_t> hist;
  bool binary = true;
  std::size_t ones = 0;
  for_each_assignment(m, spec, exhaustive, [&](std::uint64_t, const DiscreteAssignment& theta) {
    PropagatedFrame frame = propagate(c, theta, p);
    double loss = loss_value_at_clifford_point(frame, rho);
    double l2 = loss * loss;
    l2_acc.add(l2);
    low_acc.add(std::ldexp(1.0, -2 * frame.cone));
    up_acc.add(std::ldexp(1.0, -frame.cone));
    hist[frame.cone] += 1;
    if (l2 > kBinaryTol && std::fabs(l2 - 1.0) > kBinaryTol)
      binary = false;
    else if (l2 > 0.5)
      ++ones;
  });

  BoundReport report;
  report.omega = omega;
  report.exact = exhaustive;
  report.n_samples = l2_acc.count();
  report.cone_histogram = std::move(hist);
  report.variance = variance_interval(l2_acc, binary, ones, exhaustive, spec.confidence_level);
  report.lower = bound_interval(low_acc, omega, exhaustive, spec.confidence_level);
  report.upper = bound_interval(up_acc, 1.0, exhaustive, spec.confidence_level);
  return report;
}

ObservableReport estimate_observable(const ParameterizedCircuit& c, const Observable& h,
                                     const ProductState& rho, const SampleSpec& spec) {
  if (h.empty()) throw std::invalid_argument("estimate_observable: empty observable");
  if (spec.n_samples == 0)
    throw std::invalid_argument("estimate_observable: n_samples must be positive");
  if (h.num_qubits() != c.num_qubits())
    throw std::invalid_argument("estimate_observable: observable width differs from circuit");

  std::vector<Pauli> nu = required_first_layer(c, spec);
  double omega = orthogonality(rho, nu);

  struct TermState {
    double coeff;
    const PauliString* pauli;
    MeanAccumulator l2, low, up;
    std::map<int, std::size_t> hist;
    bool binary = true;
    std::size_t ones = 0;
  };
  std::vector<TermState> states;
  for (const auto& t : h.terms()) {
    if (t.pauli.is_identity()) continue;
    states.push_back(TermState{t.coeff, &t.pauli, {}, {}, {}, {}, true, 0});
  }

  std::size_t m = c.num_parameters();
  bool exhaustive = use_exhaustive(m, spec);
  MeanAccumulator agg_var, agg_low, agg_up;

  for_each_assignment(m, spec, exhaustive, [&](std::uint64_t, const DiscreteAssignment& theta) {
    double var_s = 0.0, low_s = 0.0, up_s = 0.0;
    for (auto& st : states) {
      PropagatedFrame frame = propagate(c, theta, *st.pauli);
      double loss = loss_value_at_clifford_point(frame, rho);
      double l2 = loss * loss;
      double w = st.coeff * st.coeff;
      st.l2.add(l2);
      double lo = std::ldexp(1.0, -2 * frame.cone);
      double up = std::ldexp(1.0, -frame.cone);
      st.low.add(lo);
      st.up.add(up);
      st.hist[frame.cone] += 1;
      if (l2 > kBinaryTol && std::fabs(l2 - 1.0) > kBinaryTol)
        st.binary = false;
      else if (l2 > 0.5)
        ++st.ones;
      var_s += w * l2;
      low_s += w * omega * lo;
      up_s += w * up;
    }
    agg_var.add(var_s);
    agg_low.add(low_s);
    agg_up.add(up_s);
  });

  ObservableReport report;
  report.omega = omega;
  report.exact = exhaustive;
  report.n_samples = agg_var.count();
  for (auto& st : states) {
    BoundReport tr;
    tr.omega = omega;
    tr.exact = exhaustive;
    tr.n_samples = st.l2.count();
    tr.cone_histogram = std::move(st.hist);
    tr.variance = variance_interval(st.l2, st.binary, st.ones, exhaustive, spec.confidence_level);
    tr.lower = bound_interval(st.low, omega, exhaustive, spec.confidence_level);
    tr.upper = bound_interval(st.up, 1.0, exhaustive, spec.confidence_level);
    report.terms.push_back(TermReport{st.coeff, *st.pauli, std::move(tr)});
  }
  auto agg_interval = [&](const MeanAccumulator& acc) {
    if (exhaustive) return exact_interval(acc.mean());
    return normal_interval(acc.mean(), acc.std_error(), spec.confidence_level);
  };
  report.variance = agg_interval(agg_var);
  report.lower = agg_interval(agg_low);
  report.upper = agg_interval(agg_up);
  return report;
}

Interval estimate_gradient_variance(const ParameterizedCircuit& c, const PauliString& p,
                                    const ProductState& rho, std::size_t param_index,
                                    const SampleSpec& spec) {
  if (param_index >= c.num_parameters())
    throw std::out_of_range("estimate_gradient_variance: parameter index out of range");
  if (p.is_identity()) throw std::domain_error("estimate_gradient_variance: identity term");
  if (spec.n_samples == 0)
    throw std::invalid_argument("estimate_gradient_variance: n_samples must be positive");
  required_first_layer(c, spec);

  std::size_t m = c.num_parameters();
  bool exhaustive = use_exhaustive(m, spec);
  MeanAccumulator acc;
  std::vector<std::uint8_t> turns(m);

  for_each_assignment(m, spec, exhaustive, [&](std::uint64_t, const DiscreteAssignment& theta) {
    for (std::size_t i = 0; i < m; ++i) turns[i] = theta.bit(i) ? 1 : 0;
    std::uint8_t base = turns[param_index];
    turns[param_index] = static_cast<std::uint8_t>((base + 1) & 3);
    PropagatedFrame plus = propagate_quarter_turns(c, turns, p);
    double lp = loss_value_at_clifford_point(plus, rho);
    turns[param_index] = static_cast<std::uint8_t>((base + 3) & 3);
    PropagatedFrame minus = propagate_quarter_turns(c, turns, p);
    double lm = loss_value_at_clifford_point(minus, rho);
    turns[param_index] = base;
    double g = 0.5 * (lp - lm);
    acc.add(g * g);
  });

  if (exhaustive) return exact_interval(acc.mean());
  return clamp_interval(normal_interval(acc.mean(), acc.std_error(), spec.confidence_level), 0.0,
                        1.0);
}

GeneralizedBoundReport estimate_term_generalized(const ParameterizedCircuit& c,
                                                 const PauliString& p, const ProductState& rho,
                                                 const SampleSpec& spec) {
  if (p.is_identity()) throw std::domain_error("estimate_term_generalized: identity term");
  std::vector<Pauli> nu = required_first_layer(c, spec);
  auto mu_opt = c.second_layer_axes();
  if (!mu_opt) throw std::domain_error("estimate_term_generalized: no second rotation layer");
  std::vector<Pauli> mu = *mu_opt;

  std::size_t n = c.num_qubits();
  std::size_t m = c.num_parameters();
  bool exhaustive = use_exhaustive(m, spec);
  MeanAccumulator l2_acc, low_acc, up_acc;
  std::vector<std::uint8_t> turns(m);

  for_each_assignment(m, spec, exhaustive, [&](std::uint64_t, const DiscreteAssignment& theta) {
    for (std::size_t i = 0; i < m; ++i) turns[i] = theta.bit(i) ? 1 : 0;
    // Frame after the entangling part only; the two initial layers keep the
    // support but change letters, and the per-frame weight needs the letters
    // as they stand in front of those layers.
    PropagatedFrame partial = propagate_gate_range(c, turns, p, 2 * n, c.gates().size());
    double w = generalized_orthogonality(rho, partial.pauli, nu, mu);
    low_acc.add(w * std::pow(0.25, partial.cone));
    up_acc.add(w * std::pow(0.75, partial.cone));
    PropagatedFrame full = propagate_gate_range(c, turns, partial.pauli, 0, 2 * n);
    double loss = loss_value_at_clifford_point(full, rho);
    l2_acc.add(loss * loss);
  });

  GeneralizedBoundReport report;
  report.exact = exhaustive;
  report.n_samples = l2_acc.count();
  if (exhaustive) {
    report.variance = exact_interval(l2_acc.mean());
    report.lower = exact_interval(low_acc.mean());
    report.upper = exact_interval(up_acc.mean());
  } else {
    report.variance =
        clamp_interval(normal_interval(l2_acc.mean(), l2_acc.std_error(), spec.confidence_level),
                       0.0, 1.0);
    report.lower = clamp_interval(
        normal_interval(low_acc.mean(), low_acc.std_error(), spec.confidence_level), 0.0, 1.0);
    report.upper = clamp_interval(
        normal_interval(up_acc.mean(), up_acc.std_error(), spec.confidence_level), 0.0, 1.0);
  }
  return report;
}

double lower_bound_from_cone_histogram(const std::map<int, std::size_t>& hist, double omega) {
  double total = 0.0, weighted = 0.0;
  for (const auto& [cone, count] : hist) {
    total += static_cast<double>(count);
    weighted += static_cast<double>(count) * std::ldexp(1.0, -2 * cone);
  }
  if (total == 0.0) throw std::invalid_argument("empty cone histogram");
  return omega * weighted / total;
}

double upper_bound_from_cone_histogram(const std::map<int, std::size_t>& hist) {
  double total = 0.0, weighted = 0.0;
  for (const auto& [cone, count] : hist) {
    total += static_cast<double>(count);
    weighted += static_cast<double>(count) * std::ldexp(1.0, -cone);
  }
  if (total == 0.0) throw std::invalid_argument("empty cone histogram");
  return weighted / total;
}

std::size_t depth_for_rule(const std::string& rule, std::size_t n) {
  if (rule == "log2") {
    std::size_t d = 0;
    while ((std::size_t{1} << d) < n) ++d;
    return d;
  }
  if (rule == "n/2") return (n + 1) / 2;
  std::size_t pos = 0;
  int v = std::stoi(rule, &pos);
  if (pos != rule.size() || v < 0) throw std::invalid_argument("bad depth rule '" + rule + "'");
  return static_cast<std::size_t>(v);
}

Observable observable_for_rule(const std::string& rule, std::size_t n) {
  Observable h(n);
  auto z_prefix = [n](std::size_t k) {
    PauliString p(n);
    for (std::size_t q = 0; q < std::min(k, n); ++q) p.set(q, Pauli::Z);
    return p;
  };
  if (rule == "z0") {
    h.add_term(1.0, PauliString::single(n, 0, Pauli::Z));
  } else if (rule == "global-x") {
    PauliString p(n);
    for (std::size_t q = 0; q < n; ++q) p.set(q, Pauli::X);
    h.add_term(1.0, p);
  } else if (rule == "mixed") {
    h.add_term(1.0, PauliString::single(n, 0, Pauli::Z));
    PauliString p(n);
    for (std::size_t q = 0; q < n; ++q) p.set(q, Pauli::X);
    h.add_term(1.0, p);
  } else if (rule.rfind("zk:", 0) == 0) {
    std::string arg = rule.substr(3);
    std::size_t k = (arg == "log2") ? depth_for_rule("log2", n)
                                    : static_cast<std::size_t>(std::stoul(arg));
    if (k == 0) k = 1;
    h.add_term(1.0, z_prefix(k));
  } else {
    throw std::invalid_argument("unknown observable rule '" + rule + "'");
  }
  return h;
}

std::vector<SweepRow> sweep_qubits(const SweepConfig& config,
                                   const std::vector<std::size_t>& n_list,
                                   const SampleSpec& spec) {
  if (n_list.empty()) throw std::invalid_argument("sweep_qubits: empty n list");
  std::vector<SweepRow> rows;
  for (std::size_t n : n_list) {
    std::size_t depth = depth_for_rule(config.depth_rule, n);
    ParameterizedCircuit c;
    if (config.ansatz == "efficientsu2")
      c = build_efficient_su2(n, depth, config.axes, config.entanglement);
    else if (config.ansatz == "cartan")
      c = build_cartan(n, depth);
    else
      throw std::invalid_argument("unknown ansatz '" + config.ansatz + "'");

    Observable h = observable_for_rule(config.obs_rule, n);
    ProductState rho =
        config.state_rule == "plus" ? ProductState::plus(n) : ProductState::zero(n);

    SweepRow row;
    row.n = n;
    row.depth = depth;
    if (config.gradient_param) {
      // Aggregate gradient variance: sum of c^2 Var[d L_alpha / d theta_tau].
      std::size_t tau = *config.gradient_param;
      double est = 0.0, lo = 0.0, hi = 0.0;
      for (const auto& t : h.terms()) {
        if (t.pauli.is_identity()) continue;
        Interval iv = estimate_gradient_variance(c, t.pauli, rho, tau, spec);
        double w = t.coeff * t.coeff;
        est += w * iv.estimate;
        lo += w * iv.lo;
        hi += w * iv.hi;
      }
      row.variance = Interval{est, lo, hi};
      ObservableReport rep = estimate_observable(c, h, rho, spec);
      row.lower = rep.lower;
      row.upper = rep.upper;
    } else {
      ObservableReport rep = estimate_observable(c, h, rho, spec);
      row.lower = rep.lower;
      row.variance = rep.variance;
      row.upper = rep.upper;
    }
    rows.push_back(row);
  }
  return rows;
}

EstimatorVarianceCheck estimator_variance_check(double g, int n, std::size_t n_samples,
                                                std::uint64_t seed) {
  if (g < 0.0 || g >= 1.0)
    throw std::invalid_argument("estimator_variance_check: g must lie in [0, 1)");
  if (n < 1) throw std::invalid_argument("estimator_variance_check: n must be positive");

  EstimatorVarianceCheck out;
  out.g = g;
  out.bernoulli_analytic = g - g * g;
  out.cone_cap = std::pow(g, 1.25) - g * g;
  if (g == 0.0) return out;

  double p = (4.0 / 3.0) * (1.0 - std::pow(g, 1.0 / static_cast<double>(n)));
  out.p_matched = p;
  out.cone_exact = std::pow(1.0 - 15.0 * p / 16.0, n) - g * g;

  MeanAccumulator bern, cone;
  for (std::size_t s = 0; s < n_samples; ++s) {
    CounterRng rng(seed, s);
    bern.add(rng.next_unit() < g ? 1.0 : 0.0);
    int x = 0;
    for (int i = 0; i < n; ++i)
      if (rng.next_unit() < p) ++x;
    cone.add(std::ldexp(1.0, -2 * x));
  }
  out.bernoulli_empirical = bern.variance();
  out.cone_empirical = cone.variance();
  return out;
}

}  // namespace plateau
