#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "plateau/estimator.hpp"
#include "plateau/observable.hpp"

namespace plateau {

enum class OutputActivation { Wasserstein, MinMax };  // identity vs log(sigmoid)
enum class WeightLaw { Uniform, Gaussian };

// Fully-connected leaky-ReLU network D: {0,1}^n -> R with L hidden layers.
// Layer l has width m_l (m_0 = n inputs, m_{L+1} = 1 output), leaky-ReLU
// slope gamma_l on hidden layers, and i.i.d. symmetric weight initialization
// with per-layer standard deviation sigma_l.
struct DiscriminatorSpec {
  std::size_t n = 0;
  std::vector<std::size_t> widths;   // m_1 .. m_L
  std::vector<double> slopes;        // gamma_1 .. gamma_L, each in (0, 1]
  std::vector<double> sigmas;        // sigma_1 .. sigma_{L+1}
  OutputActivation activation = OutputActivation::Wasserstein;
  WeightLaw law = WeightLaw::Uniform;
  bool zero_bias = true;  // zero biases (symmetric); otherwise uniform like weights

  std::size_t hidden_layers() const { return widths.size(); }
  std::size_t layer_width(std::size_t l) const;  // m_0 .. m_{L+1}
  void validate() const;

  // sigma_l^2 = 4/m_l for every layer including the output, uniform slope.
  static DiscriminatorSpec balanced(std::size_t n, std::size_t hidden_layers, std::size_t width,
                                    double gamma, OutputActivation activation);

  std::string to_json(int indent = 2) const;
  static DiscriminatorSpec from_json(const std::string& text);
};

struct DiscriminatorParams {
  // weights[l] is row-major m_{l+1} x m_l for l = 0..L; biases[l] has m_{l+1}.
  std::vector<std::vector<double>> weights;
  std::vector<std::vector<double>> biases;
};

DiscriminatorParams init_discriminator(const DiscriminatorSpec& spec, std::uint64_t seed,
                                       std::uint64_t draw_index = 0);

// All parameters negated; used for the symmetry checks.
DiscriminatorParams negate_params(const DiscriminatorParams& params);

double discriminator_preactivation(const DiscriminatorParams& params,
                                   const DiscriminatorSpec& spec, std::uint64_t x);
double discriminator_forward(const DiscriminatorParams& params, const DiscriminatorSpec& spec,
                             std::uint64_t x);

// Activated outputs for every input bitstring, index = bitstring.
std::vector<double> discriminator_table(const DiscriminatorParams& params,
                                        const DiscriminatorSpec& spec);

// Z-basis coefficients of the induced diagonal observable
// H = sum_x D(x)|x><x|: one fast transform of the output table gives
// c_alpha = 2^-n sum_x (-1)^{alpha.x} D(x) for all alpha simultaneously.
std::vector<double> walsh_coefficients(const DiscriminatorParams& params,
                                       const DiscriminatorSpec& spec);

// The induced observable restricted to terms of weight <= max_weight.
Observable extract_coefficients(const DiscriminatorParams& params, const DiscriminatorSpec& spec,
                                std::size_t max_weight, std::size_t enumeration_cap = 20);

struct WeightBoundCheck {
  double empirical = 0.0;      // mean of c_alpha^2 over draws
  double std_error = 0.0;
  double bound = 0.0;          // sigma_{L+1}^2/16 * prod_l m_l sigma_l^2 (1+gamma_l)^2 / 4
  double bound_reduced = 0.0;  // sigma_{L+1}^2/16
  bool pass = false;           // empirical >= bound - 4 std errors
  std::size_t draws = 0;
};

// Monte Carlo over discriminator initializations of the squared weight-1
// coefficient c_alpha(phi)^2 with alpha = Z on target_qubit.
WeightBoundCheck verify_weight_bound(const DiscriminatorSpec& spec, std::size_t n_draws,
                                     std::size_t target_qubit, std::uint64_t seed,
                                     unsigned threads = 1);

struct LocalityGroup {
  std::size_t weight = 0;
  double sum_coeff_sq = 0.0;
  Interval contribution;  // sum over the group of c^2 * Var[L_alpha]
  std::size_t term_count = 0;
};

// Splits the induced observable by term weight and estimates each group's
// variance contribution at initialization with shared assignments.
std::vector<LocalityGroup> locality_profile(const DiscriminatorParams& params,
                                            const DiscriminatorSpec& spec,
                                            const ParameterizedCircuit& generator,
                                            const ProductState& rho, const SampleSpec& sample_spec);

}  // namespace plateau
