#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plateau/circuit.hpp"
#include "plateau/observable.hpp"
#include "plateau/state.hpp"

namespace plateau {

// Size caps for dense simulation. Pure product inputs run on a statevector;
// anything mixed runs on a full density matrix, which costs a factor 2^n more
// memory, hence the smaller default.
struct OracleCaps {
  std::size_t max_pure_qubits = 12;
  std::size_t max_mixed_qubits = 10;
};

// Exact loss Tr(U(theta) rho U(theta)^dagger H) by dense simulation at
// arbitrary (continuous) parameter values.
double oracle_loss(const ParameterizedCircuit& c, std::span<const double> theta,
                   const Observable& h, const ProductState& rho, const OracleCaps& caps = {});

// Per-term losses sharing one simulation of the state.
std::vector<double> oracle_term_losses(const ParameterizedCircuit& c,
                                       std::span<const double> theta, const Observable& h,
                                       const ProductState& rho, const OracleCaps& caps = {});

// Exact gradient via the parameter-shift rule, one entry per parameter.
std::vector<double> oracle_gradient(const ParameterizedCircuit& c, std::span<const double> theta,
                                    const Observable& h, const ProductState& rho,
                                    const OracleCaps& caps = {});

// Central finite differences, for cross-checking the shift rule.
std::vector<double> oracle_gradient_fd(const ParameterizedCircuit& c,
                                       std::span<const double> theta, const Observable& h,
                                       const ProductState& rho, double step = 1e-5,
                                       const OracleCaps& caps = {});

struct MomentOptions {
  std::size_t n_samples = 100000;
  double range_scale = 1.0;  // parameters drawn uniformly from [-a*pi, a*pi]
  std::uint64_t seed = 0;
  bool with_gradients = false;
  bool allow_invalid_class = false;
};

struct TermMoment {
  std::string label;
  double coeff = 0.0;
  double mean = 0.0, mean_se = 0.0;
  double second_moment = 0.0, second_moment_se = 0.0;
};

struct PairMoment {
  std::string label_a, label_b;
  double product_mean = 0.0, product_se = 0.0;
};

struct GradientMoment {
  std::size_t param_index = 0;
  double variance = 0.0, variance_se = 0.0;
};

struct MomentReport {
  std::vector<TermMoment> terms;
  std::vector<PairMoment> pairs;  // all unordered term pairs
  double loss_mean = 0.0, loss_mean_se = 0.0;
  double loss_variance = 0.0, loss_variance_se = 0.0;
  // sum over terms of coeff^2 * (E[L_a^2] - E[L_a]^2)
  double weighted_term_variance = 0.0;
  // per-sample mean of (L - c0)^2 - sum c^2 L_a^2; zero when terms contribute
  // independently
  double independence_gap = 0.0, independence_gap_se = 0.0;
  std::vector<GradientMoment> gradients;  // filled when with_gradients
  std::size_t n_samples = 0;
  double range_scale = 1.0;
  std::uint64_t seed = 0;
};

// Monte Carlo over continuous uniform parameters: per-term means and second
// moments, pairwise products, the loss variance, and optionally per-parameter
// gradient variances.
MomentReport moment_suite(const ParameterizedCircuit& c, const Observable& h,
                          const ProductState& rho, const MomentOptions& options,
                          const OracleCaps& caps = {});

struct ReductionCheck {
  double continuous_variance = 0.0;
  double continuous_se = 0.0;
  double discrete_value = 0.0;  // E[L^2] over {0, pi/2}^m
  bool discrete_exact = false;
  double discrete_se = 0.0;
  double z = 0.0;
  std::size_t n_samples = 0;
};

// Continuous-uniform Monte Carlo variance of a single Pauli term against the
// (exhaustive when m <= 20) discrete expectation from Clifford propagation.
ReductionCheck discrete_reduction_check(const ParameterizedCircuit& c, const PauliString& p,
                                        const ProductState& rho, std::size_t n_samples,
                                        std::uint64_t seed, const OracleCaps& caps = {});

}  // namespace plateau
