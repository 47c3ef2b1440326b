// End-to-end acceptance suite. Each check prints one [PASS]/[FAIL] line; the
// binary exits nonzero if any check fails. Sample sizes, tolerances and seeds
// are fixed here, not tuned at runtime.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "plateau/estimator.hpp"
#include "plateau/fixtures.hpp"
#include "plateau/oracle.hpp"
#include "plateau/polynomial.hpp"
#include "plateau/qgan.hpp"
#include "plateau/rng.hpp"
#include "plateau/threading.hpp"

using namespace plateau;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& name, bool pass, const std::string& detail,
            double seconds) {
  std::printf("[%s] criterion %2d: %-34s %s  (%.1fs)\n", pass ? "PASS" : "FAIL", criterion,
              name.c_str(), detail.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

void run(int criterion, const std::string& name,
         const std::function<std::pair<bool, std::string>()>& body) {
  auto start = std::chrono::steady_clock::now();
  bool pass = false;
  std::string detail;
  try {
    auto [ok, msg] = body();
    pass = ok;
    detail = msg;
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(criterion, name, pass, detail, seconds);
}

struct Instance {
  ParameterizedCircuit circuit;
  PauliString pauli;
};

std::vector<Instance> random_instances(std::size_t count, std::uint64_t seed) {
  std::vector<Instance> out;
  for (std::uint64_t k = 0; out.size() < count; ++k) {
    CounterRng rng(seed, k);
    std::size_t n = 2 + rng.next_below(3);              // 2..4 qubits
    std::size_t extra = rng.next_below(11 - 2 * n);     // m = 2n + extra <= 10
    ParameterizedCircuit c = random_class_circuit(n, extra, 3 + rng.next_below(4), seed * 77 + k);
    if (c.num_parameters() > 10) continue;
    PauliString p(n);
    while (p.is_identity())
      for (std::size_t q = 0; q < n; ++q) p.set(q, static_cast<Pauli>(rng.next_below(4)));
    out.push_back(Instance{std::move(c), std::move(p)});
  }
  return out;
}

std::pair<bool, std::string> criterion_bound_arithmetic() {
  std::map<int, std::size_t> hist{{1, 1}, {3, 1}};
  double lower = lower_bound_from_cone_histogram(hist, 1.0);
  double upper = upper_bound_from_cone_histogram(hist);
  double baseline = std::pow(0.25, 3);
  bool ok = lower == 0.1328125 && upper == 0.3125 && baseline == 0.015625;

  // the three-qubit demonstration circuit realizes exactly this histogram
  ParameterizedCircuit c = fixtures::lightcone_demo();
  SampleSpec spec;
  spec.n_samples = std::size_t{1} << c.num_parameters();
  BoundReport rep =
      estimate_term(c, PauliString::single(3, 0, Pauli::Z), ProductState::zero(3), spec);
  ok = ok && rep.exact && rep.lower.estimate == 0.1328125 && rep.upper.estimate == 0.3125;
  ok = ok && rep.lower.estimate <= rep.variance.estimate &&
       rep.variance.estimate <= rep.upper.estimate;
  ok = ok && lower / baseline > 8.0;  // ~8.5x tighter than the full-cone baseline

  char buf[160];
  std::snprintf(buf, sizeof(buf), "lower=%.7f upper=%.4f full-cone baseline=%.6f", lower, upper,
                baseline);
  return {ok, buf};
}

std::pair<bool, std::string> criterion_discrete_reduction(const std::vector<Instance>& instances) {
  double worst_z = 0.0;
  for (const auto& inst : instances) {
    ReductionCheck chk = discrete_reduction_check(inst.circuit, inst.pauli,
                                                  ProductState::zero(inst.circuit.num_qubits()),
                                                  100000, 2024);
    if (!chk.discrete_exact) return {false, "expected exhaustive discrete side"};
    worst_z = std::max(worst_z, std::fabs(chk.z));
  }
  char buf[120];
  std::snprintf(buf, sizeof(buf), "20 instances, max |z| = %.2f (< 4)", worst_z);
  return {worst_z < 4.0, buf};
}

std::pair<bool, std::string> criterion_independence(const std::vector<Instance>& instances) {
  double worst_gap_z = 0.0, worst_pair_z = 0.0;
  std::uint64_t salt = 0;
  for (const auto& inst : instances) {
    std::size_t n = inst.circuit.num_qubits();
    // three distinct non-identity terms with fixed coefficients
    Observable h(n);
    CounterRng rng(4242, salt++);
    while (h.size() < 3) {
      PauliString p(n);
      while (p.is_identity())
        for (std::size_t q = 0; q < n; ++q) p.set(q, static_cast<Pauli>(rng.next_below(4)));
      if (h.coefficient(p) == 0.0) h.add_term(rng.next_uniform(0.3, 1.0), p);
    }
    MomentOptions opts;
    opts.n_samples = 100000;
    opts.seed = 555 + salt;
    MomentReport rep = moment_suite(inst.circuit, h, ProductState::zero(n), opts);
    // error floors well above double rounding keep identically-zero losses
    // from dividing fp dust by an even smaller standard error
    worst_gap_z = std::max(
        worst_gap_z, std::fabs(rep.independence_gap) / std::max(rep.independence_gap_se, 1e-12));
    for (const auto& pr : rep.pairs)
      worst_pair_z =
          std::max(worst_pair_z, std::fabs(pr.product_mean) / std::max(pr.product_se, 1e-12));
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf), "max |z|: variance split %.2f, pair covariances %.2f (< 4)",
                worst_gap_z, worst_pair_z);
  return {worst_gap_z < 4.0 && worst_pair_z < 4.0, buf};
}

std::pair<bool, std::string> criterion_gradient_equality(const std::vector<Instance>& instances) {
  double worst_exact = 0.0;
  double worst_z = 0.0;
  int mc_checked = 0;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& inst = instances[i];
    std::size_t n = inst.circuit.num_qubits();
    std::size_t m = inst.circuit.num_parameters();
    ProductState zero = ProductState::zero(n);
    SampleSpec spec;
    spec.n_samples = std::size_t{1} << m;  // exhaustive
    spec.allow_invalid_class = false;

    BoundReport term = estimate_term(inst.circuit, inst.pauli, zero, spec);
    double best = 0.0;
    std::size_t best_tau = 0;
    for (std::size_t tau = 0; tau < m; ++tau) {
      Interval iv = estimate_gradient_variance(inst.circuit, inst.pauli, zero, tau, spec);
      if (iv.estimate > term.variance.estimate + 1e-9)
        return {false, "a component exceeded the term variance"};
      if (iv.estimate > best) {
        best = iv.estimate;
        best_tau = tau;
      }
    }
    worst_exact = std::max(worst_exact, std::fabs(best - term.variance.estimate));

    // Monte Carlo cross-check against the dense oracle on a subset
    if (i % 4 == 0) {
      Observable h(n);
      h.add_term(1.0, inst.pauli);
      MomentAccumulator acc;
      std::vector<double> theta(m);
      const double half_pi = std::numbers::pi / 2.0;
      for (std::size_t s = 0; s < 20000; ++s) {
        CounterRng rng(909 + i, s);
        for (auto& t : theta) t = rng.next_uniform(-std::numbers::pi, std::numbers::pi);
        std::vector<double> shifted = theta;
        shifted[best_tau] = theta[best_tau] + half_pi;
        double plus = oracle_loss(inst.circuit, shifted, h, zero);
        shifted[best_tau] = theta[best_tau] - half_pi;
        double minus = oracle_loss(inst.circuit, shifted, h, zero);
        double g = 0.5 * (plus - minus);
        acc.add(g * g);
      }
      double se = std::max(acc.mean_std_error(), 1e-12);
      worst_z = std::max(worst_z, std::fabs(acc.mean() - term.variance.estimate) / se);
      ++mc_checked;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "max |max-component - variance| = %.2e; MC |z| = %.2f on %d instances",
                worst_exact, worst_z, mc_checked);
  return {worst_exact < 1e-9 && worst_z < 4.0, buf};
}

std::pair<bool, std::string> criterion_sandwich_tightness() {
  std::size_t checked = 0;
  for (std::uint64_t seed = 0; checked < 50; ++seed) {
    CounterRng rng(31337, seed);
    std::size_t n = 1 + rng.next_below(3);
    ParameterizedCircuit c =
        random_class_circuit(n, rng.next_below(5), 2 + rng.next_below(4), seed + 9000);
    if (c.num_parameters() > 14) continue;
    std::vector<ProductState::Bloch> bloch;
    for (std::size_t q = 0; q < n; ++q) {
      double z = rng.next_uniform(-1.0, 1.0);
      double phi = rng.next_uniform(0.0, 6.2831853);
      double r = (seed % 2) ? 1.0 : rng.next_unit();
      double s = std::sqrt(1.0 - z * z);
      bloch.push_back({r * s * std::cos(phi), r * s * std::sin(phi), r * z});
    }
    ProductState rho = ProductState::mixed(bloch);
    PauliString p(n);
    while (p.is_identity())
      for (std::size_t q = 0; q < n; ++q) p.set(q, static_cast<Pauli>(rng.next_below(4)));
    SampleSpec spec;
    spec.n_samples = std::size_t{1} << c.num_parameters();
    BoundReport rep = estimate_term(c, p, rho, spec);
    if (!rep.exact) return {false, "expected exhaustive enumeration"};
    if (rep.lower.estimate > rep.variance.estimate + 1e-12 ||
        rep.variance.estimate > rep.upper.estimate + 1e-12)
      return {false, "sandwich violated on instance " + std::to_string(seed)};
    ++checked;
  }

  // saturating constructions: two flat layers, n = 1..3
  for (std::size_t n = 1; n <= 3; ++n) {
    ParameterizedCircuit c(n, 2 * n, {});
    for (std::uint32_t q = 0; q < n; ++q)
      c.append(make_rotation(n, Pauli::Y, q, static_cast<std::int32_t>(q)));
    for (std::uint32_t q = 0; q < n; ++q)
      c.append(make_rotation(n, Pauli::Z, q, static_cast<std::int32_t>(n + q)));
    SampleSpec spec;
    spec.n_samples = std::size_t{1} << (2 * n);
    ProductState zero = ProductState::zero(n);

    PauliString aligned(n), first(n);
    for (std::size_t q = 0; q < n; ++q) {
      aligned.set(q, Pauli::Z);
      first.set(q, Pauli::Y);
    }
    BoundReport up = estimate_term(c, aligned, zero, spec);
    BoundReport low = estimate_term(c, first, zero, spec);
    if (std::fabs(up.variance.estimate - std::pow(0.5, n)) > 1e-12)
      return {false, "upper saturation failed at n=" + std::to_string(n)};
    if (std::fabs(low.variance.estimate - low.omega * std::pow(0.25, n)) > 1e-12)
      return {false, "lower saturation failed at n=" + std::to_string(n)};
  }
  return {true, "50 exact sandwiches; both saturating families reproduced (n <= 3)"};
}

std::pair<bool, std::string> criterion_su2_scaling() {
  const std::vector<std::size_t> n_list{4, 6, 8, 10, 12};
  const std::size_t samples = 10000;
  std::vector<double> log_global;
  bool local_ok = true;
  double min_margin = 1e300;
  for (std::size_t n : n_list) {
    std::size_t d = depth_for_rule("log2", n);
    ParameterizedCircuit c = build_efficient_su2(n, d);
    ProductState zero = ProductState::zero(n);
    SampleSpec spec;
    spec.n_samples = samples;
    spec.seed = 1234 + n;

    BoundReport local = estimate_term(c, PauliString::single(n, 0, Pauli::Z), zero, spec);
    double floor = std::pow(0.25, static_cast<double>(1 + 4 * d));
    local_ok = local_ok && local.variance.estimate >= floor;
    min_margin = std::min(min_margin, local.variance.estimate / floor);

    PauliString global(n);
    for (std::size_t q = 0; q < n; ++q) global.set(q, Pauli::X);
    BoundReport gx = estimate_term(c, global, zero, spec);
    // zero estimates enter the fit at the resolution floor 1/(3N), which only
    // flattens the fitted slope
    double value = std::max(gx.variance.estimate, 1.0 / (3.0 * samples));
    log_global.push_back(std::log2(value));
  }

  // least-squares slope of log2(var) against n
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    double x = static_cast<double>(n_list[i]);
    sx += x;
    sy += log_global[i];
    sxx += x * x;
    sxy += x * log_global[i];
  }
  double count = static_cast<double>(n_list.size());
  double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);

  char buf[160];
  std::snprintf(buf, sizeof(buf), "local floor margin >= %.1fx; global slope %.2f bits/qubit",
                min_margin, slope);
  return {local_ok && slope < -0.5, buf};
}

std::pair<bool, std::string> criterion_counterexamples() {
  std::vector<CounterexampleResult> results = run_counterexamples(0);
  std::size_t passed = 0;
  std::string failed;
  for (const auto& r : results) {
    if (r.pass)
      ++passed;
    else
      failed += " " + r.name;
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%zu/%zu fixtures%s%s", passed, results.size(),
                failed.empty() ? "" : "; failed:", failed.c_str());
  return {passed == results.size(), buf};
}

std::pair<bool, std::string> criterion_weight_bound_grid() {
  const std::size_t draws = 10000;
  unsigned threads = default_thread_count();
  double reduced_reference = -1.0;
  double worst_margin = 1e300;
  std::size_t cells = 0;
  for (std::size_t n = 2; n <= 10; ++n) {
    for (std::size_t layers = 0; layers <= 4; ++layers) {
      for (std::size_t width : {8, 64}) {
        for (double gamma : {0.2, 1.0}) {
          for (OutputActivation act : {OutputActivation::Wasserstein, OutputActivation::MinMax}) {
            DiscriminatorSpec spec = DiscriminatorSpec::balanced(n, layers, width, gamma, act);
            WeightBoundCheck chk =
                verify_weight_bound(spec, draws, 0, 60000 + cells, threads);
            if (reduced_reference < 0.0) reduced_reference = chk.bound_reduced;
            if (chk.bound_reduced != reduced_reference)
              return {false, "reduced bound varies across cells"};
            if (!chk.pass) {
              char buf[200];
              std::snprintf(buf, sizeof(buf),
                            "cell n=%zu L=%zu w=%zu gamma=%.1f act=%d: empirical %.3g < bound "
                            "%.3g - 4se",
                            n, layers, width, gamma, static_cast<int>(act), chk.empirical,
                            chk.bound);
              return {false, buf};
            }
            double margin = (chk.empirical - chk.bound) /
                            (chk.std_error > 0 ? chk.std_error : 1.0);
            worst_margin = std::min(worst_margin, margin);
            ++cells;
          }
        }
      }
    }
    std::fprintf(stderr, "  [criterion 8] n=%zu done (%zu cells)\n", n, cells);
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%zu cells pass; reduced bound %.6g constant; min margin %+.1f se",
                cells, reduced_reference, worst_margin);
  return {true, buf};
}

std::pair<bool, std::string> criterion_poly_bijection() {
  // degree <-> max weight, exhaustively over every monomial for n <= 4
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::uint64_t support = 0; support < (std::uint64_t{1} << n); ++support) {
      BinaryPolynomial f(n);
      f.add_monomial(1.0, support);
      Observable h = poly_to_observable(f);
      if (h.max_weight() != static_cast<std::size_t>(std::popcount(support)))
        return {false, "weight/degree mismatch"};
      BinaryPolynomial back = observable_to_poly(h);
      for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x)
        if (std::fabs(back.evaluate(x) - f.evaluate(x)) > 1e-12)
          return {false, "round trip exceeded 1e-12"};
    }
  }
  // random polynomials round-trip via the observable
  for (std::uint64_t trial = 0; trial < 40; ++trial) {
    CounterRng rng(777, trial);
    std::size_t n = 2 + rng.next_below(3);
    BinaryPolynomial f(n);
    for (int k = 0; k < 5; ++k)
      f.add_monomial(rng.next_uniform(-2.0, 2.0), rng.next_below(std::uint64_t{1} << n));
    BinaryPolynomial back = observable_to_poly(poly_to_observable(f));
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x)
      if (std::fabs(back.evaluate(x) - f.evaluate(x)) > 1e-12)
        return {false, "random round trip exceeded 1e-12"};
  }

  // black-box sampling is unbiased: 100 runs against the exact coefficient
  std::size_t n = 4;
  BinaryPolynomial f(n);
  f.add_monomial(1.0, {1});
  f.add_monomial(-0.5, {2, 3});
  Observable exact = poly_to_observable(f);
  PauliString target = PauliString::from_label("ZIII");
  double exact_c = exact.coefficient(target);
  double sum = 0.0, var_sum = 0.0;
  const int runs = 100;
  for (int r = 0; r < runs; ++r) {
    auto est = estimate_blackbox_coefficients(
        [&f](std::uint64_t x) { return f.evaluate(x); }, n, {target}, 2000,
        static_cast<std::uint64_t>(r) + 31);
    sum += est[0].value;
    var_sum += est[0].std_error * est[0].std_error;
  }
  double mean = sum / runs;
  double combined = std::sqrt(var_sum) / runs;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "exhaustive n<=4 exact; sampler bias %.2e vs 4se %.2e",
                std::fabs(mean - exact_c), 4.0 * combined);
  return {std::fabs(mean - exact_c) <= 4.0 * combined, buf};
}

std::pair<bool, std::string> criterion_estimator_variance() {
  bool ok = true;
  std::string detail;
  for (double g : {1e-1, 1e-2, 1e-3, 1e-4}) {
    EstimatorVarianceCheck chk = estimator_variance_check(g, 30, 1000000, 1);
    double bern_rel = std::fabs(chk.bernoulli_empirical - chk.bernoulli_analytic) /
                      chk.bernoulli_analytic;
    bool cell_ok = chk.cone_empirical <= chk.cone_cap && bern_rel <= 0.05;
    ok = ok && cell_ok;
    char buf[100];
    std::snprintf(buf, sizeof(buf), " g=%.0e:%s(bern %.1f%%, cone %.2g<=%.2g)",
                  g, cell_ok ? "" : " FAIL", 100.0 * bern_rel, chk.cone_empirical, chk.cone_cap);
    detail += buf;
  }
  return {ok, detail};
}

}  // namespace

int main() {
  std::printf("acceptance suite (seeded, deterministic)\n");

  run(1, "cone-histogram bound arithmetic", criterion_bound_arithmetic);

  std::vector<Instance> instances = random_instances(20, 2718);
  run(2, "discrete reduction of the variance",
      [&] { return criterion_discrete_reduction(instances); });
  run(3, "independent term contributions", [&] { return criterion_independence(instances); });
  run(4, "gradient/loss variance equality",
      [&] { return criterion_gradient_equality(instances); });
  run(5, "sandwich bounds and tightness", criterion_sandwich_tightness);
  run(6, "shallow-ansatz scaling floors", criterion_su2_scaling);
  run(7, "counterexample fixtures", criterion_counterexamples);
  run(8, "discriminator weight-bound grid", criterion_weight_bound_grid);
  run(9, "polynomial/observable bijection", criterion_poly_bijection);
  run(10, "bound-estimator variance caps", criterion_estimator_variance);

  if (g_failures == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criteria FAILED\n", g_failures);
  return 1;
}
