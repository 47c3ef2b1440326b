#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plateau/observable.hpp"
#include "plateau/propagation.hpp"
#include "plateau/stats.hpp"

namespace plateau {

struct SampleSpec {
  std::size_t n_samples = 10000;
  std::uint64_t seed = 0;
  double confidence_level = 0.95;
  // Estimate for circuits that fail class validation anyway (bounds are then
  // not guaranteed); the two initial layers must still be present so the
  // first-layer axes are defined.
  bool allow_invalid_class = false;
  // Enumerate all 2^m assignments instead of sampling whenever m is at most
  // this and 2^m <= n_samples; reports are then exact discrete expectations.
  std::size_t exhaustive_limit = 20;
};

struct BoundReport {
  Interval lower;     // omega * E[(1/4)^cone]
  Interval variance;  // E[L^2] over the discrete distribution
  Interval upper;     // E[(1/2)^cone]
  double omega = 1.0;
  std::map<int, std::size_t> cone_histogram;
  std::size_t n_samples = 0;
  bool exact = false;
};

struct TermReport {
  double coeff;
  PauliString pauli;
  BoundReport report;
};

struct ObservableReport {
  std::vector<TermReport> terms;
  Interval lower, variance, upper;  // coefficient-squared weighted aggregates
  double omega = 1.0;
  std::size_t n_samples = 0;
  bool exact = false;
};

// Orthogonality of a product state to the first rotation layer:
// prod_i (|bloch_i|^2 - r_{nu_i}^2).
double orthogonality(const ProductState& rho, std::span<const Pauli> first_layer_axes);

// Per-frame refinement for product mixed states. Sites where the frame is
// identity contribute 1; sites aligned with the second layer contribute the
// weight orthogonal to the first layer; remaining support sites contribute
// the full non-identity weight.
double generalized_orthogonality(const ProductState& rho, const PauliString& frame_pauli,
                                 std::span<const Pauli> first_layer_axes,
                                 std::span<const Pauli> second_layer_axes);

// Monte Carlo (or exhaustive) estimate of the discrete expectation E[L^2]
// for one Pauli term, together with the cone-based lower and upper bounds
// sharing the same assignments. The variance interval is Clopper-Pearson when
// every observed L^2 is 0 or 1, normal otherwise; bound intervals are normal.
BoundReport estimate_term(const ParameterizedCircuit& c, const PauliString& p,
                          const ProductState& rho, const SampleSpec& spec);

// Per-term reports plus coefficient-weighted aggregates, all terms sharing
// one assignment stream (estimates across terms are correlated but each stays
// unbiased). The identity term contributes nothing to any variance.
ObservableReport estimate_observable(const ParameterizedCircuit& c, const Observable& h,
                                     const ProductState& rho, const SampleSpec& spec);

// E[((L(theta + e_tau pi/2) - L(theta - e_tau pi/2))/2)^2] over discrete
// assignments; shifted angles stay on the quarter-turn grid.
Interval estimate_gradient_variance(const ParameterizedCircuit& c, const PauliString& p,
                                    const ProductState& rho, std::size_t param_index,
                                    const SampleSpec& spec);

// Bounds with the per-frame orthogonality weight: lower uses
// omega(frame)*(1/4)^cone, upper omega(frame)*(3/4)^cone, with the frame taken
// before the two initial layers.
struct GeneralizedBoundReport {
  Interval lower, variance, upper;
  std::size_t n_samples = 0;
  bool exact = false;
};

GeneralizedBoundReport estimate_term_generalized(const ParameterizedCircuit& c,
                                                 const PauliString& p, const ProductState& rho,
                                                 const SampleSpec& spec);

// Closed-form bounds given a cone-size distribution.
double lower_bound_from_cone_histogram(const std::map<int, std::size_t>& hist, double omega);
double upper_bound_from_cone_histogram(const std::map<int, std::size_t>& hist);

struct SweepConfig {
  std::string ansatz = "efficientsu2";  // "efficientsu2" | "cartan"
  RotationAxes axes{};
  Entanglement entanglement = Entanglement::Pairwise;
  std::string depth_rule = "log2";  // "log2" | "n/2" | decimal integer
  std::string obs_rule = "z0";      // "z0" | "zk:log2" | "zk:<int>" | "global-x" | "mixed"
  std::string state_rule = "zero";  // "zero" | "plus"
  std::optional<std::size_t> gradient_param;  // sweep Var of this partial derivative instead
};

struct SweepRow {
  std::size_t n = 0;
  std::size_t depth = 0;
  Interval lower, variance, upper;
};

std::size_t depth_for_rule(const std::string& rule, std::size_t n);
Observable observable_for_rule(const std::string& rule, std::size_t n);

std::vector<SweepRow> sweep_qubits(const SweepConfig& config,
                                   const std::vector<std::size_t>& n_list,
                                   const SampleSpec& spec);

// Empirical check that estimating E[(1/4)^cone] needs far fewer samples than
// estimating E[L^2] directly: a Bernoulli(g) sample has variance g - g^2
// while (1/4)^X with X binomial matched to mean g stays below g^{5/4} - g^2.
struct EstimatorVarianceCheck {
  double g = 0.0;
  double p_matched = 0.0;            // binomial success probability matching E[(1/4)^X] = g
  double bernoulli_empirical = 0.0;
  double bernoulli_analytic = 0.0;   // g - g^2
  double cone_empirical = 0.0;
  double cone_exact = 0.0;           // (1 - 15p/16)^n - g^2
  double cone_cap = 0.0;             // g^{5/4} - g^2, valid for g <= 5^{4/3}/16
};

EstimatorVarianceCheck estimator_variance_check(double g, int n, std::size_t n_samples,
                                                std::uint64_t seed);

}  // namespace plateau
