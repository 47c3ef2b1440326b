#include "plateau/qgan.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "plateau/polynomial.hpp"
#include "plateau/rng.hpp"
#include "plateau/threading.hpp"

namespace plateau {

using nlohmann::json;

std::size_t DiscriminatorSpec::layer_width(std::size_t l) const {
  if (l == 0) return n;
  if (l <= widths.size()) return widths[l - 1];
  if (l == widths.size() + 1) return 1;
  throw std::out_of_range("DiscriminatorSpec::layer_width");
}

void DiscriminatorSpec::validate() const {
  if (n == 0) throw std::invalid_argument("discriminator: need at least one input bit");
  if (slopes.size() != widths.size())
    throw std::invalid_argument("discriminator: one leaky-ReLU slope per hidden layer");
  if (sigmas.size() != widths.size() + 1)
    throw std::invalid_argument("discriminator: one init std per weight layer (L+1 total)");
  for (std::size_t w : widths)
    if (w == 0) throw std::invalid_argument("discriminator: hidden width must be >= 1");
  for (double g : slopes)
    if (!(g > 0.0 && g <= 1.0))
      throw std::invalid_argument("discriminator: slopes must lie in (0, 1]");
  for (double s : sigmas)
    if (!(s > 0.0)) throw std::invalid_argument("discriminator: init std must be positive");
}

DiscriminatorSpec DiscriminatorSpec::balanced(std::size_t n, std::size_t hidden_layers,
                                              std::size_t width, double gamma,
                                              OutputActivation activation) {
  DiscriminatorSpec spec;
  spec.n = n;
  spec.widths.assign(hidden_layers, width);
  spec.slopes.assign(hidden_layers, gamma);
  spec.sigmas.resize(hidden_layers + 1);
  for (std::size_t l = 1; l <= hidden_layers + 1; ++l)
    spec.sigmas[l - 1] = std::sqrt(4.0 / static_cast<double>(spec.layer_width(l)));
  spec.activation = activation;
  spec.validate();
  return spec;
}

std::string DiscriminatorSpec::to_json(int indent) const {
  json j;
  j["n"] = n;
  j["widths"] = widths;
  j["slopes"] = slopes;
  j["sigmas"] = sigmas;
  j["activation"] = activation == OutputActivation::Wasserstein ? "wasserstein" : "minmax";
  j["law"] = law == WeightLaw::Uniform ? "uniform" : "gaussian";
  j["zero_bias"] = zero_bias;
  return j.dump(indent);
}

DiscriminatorSpec DiscriminatorSpec::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("discriminator JSON: ") + e.what());
  }
  DiscriminatorSpec spec;
  spec.n = j.at("n").get<std::size_t>();
  spec.widths = j.value("widths", std::vector<std::size_t>{});
  spec.slopes = j.value("slopes", std::vector<double>{});
  spec.sigmas = j.at("sigmas").get<std::vector<double>>();
  std::string act = j.value("activation", "wasserstein");
  if (act == "wasserstein")
    spec.activation = OutputActivation::Wasserstein;
  else if (act == "minmax")
    spec.activation = OutputActivation::MinMax;
  else
    throw std::invalid_argument("discriminator JSON: unknown activation '" + act + "'");
  std::string law = j.value("law", "uniform");
  if (law == "uniform")
    spec.law = WeightLaw::Uniform;
  else if (law == "gaussian")
    spec.law = WeightLaw::Gaussian;
  else
    throw std::invalid_argument("discriminator JSON: unknown law '" + law + "'");
  spec.zero_bias = j.value("zero_bias", true);
  spec.validate();
  return spec;
}

DiscriminatorParams init_discriminator(const DiscriminatorSpec& spec, std::uint64_t seed,
                                       std::uint64_t draw_index) {
  spec.validate();
  CounterRng rng(seed, draw_index);
  std::size_t layer_count = spec.hidden_layers() + 1;
  DiscriminatorParams params;
  params.weights.resize(layer_count);
  params.biases.resize(layer_count);
  const double sqrt3 = std::sqrt(3.0);
  for (std::size_t l = 0; l < layer_count; ++l) {
    std::size_t rows = spec.layer_width(l + 1);
    std::size_t cols = spec.layer_width(l);
    double sigma = spec.sigmas[l];
    auto& w = params.weights[l];
    w.resize(rows * cols);
    for (auto& v : w)
      v = (spec.law == WeightLaw::Uniform) ? rng.next_uniform(-sqrt3 * sigma, sqrt3 * sigma)
                                           : sigma * rng.next_gaussian();
    auto& b = params.biases[l];
    b.assign(rows, 0.0);
    if (!spec.zero_bias)
      for (auto& v : b) v = rng.next_uniform(-sqrt3 * sigma, sqrt3 * sigma);
  }
  return params;
}

DiscriminatorParams negate_params(const DiscriminatorParams& params) {
  DiscriminatorParams out = params;
  for (auto& w : out.weights)
    for (auto& v : w) v = -v;
  for (auto& b : out.biases)
    for (auto& v : b) v = -v;
  return out;
}

namespace {

double output_activation(OutputActivation act, double x) {
  if (act == OutputActivation::Wasserstein) return x;
  // log(sigmoid(x)) in overflow-safe form
  return x >= 0.0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

// Forward pass for a contiguous block of input bitstrings [begin, end).
// Weights are transposed per layer so the innermost loop is a contiguous
// axpy over the output row, which vectorizes without reassociating sums.
void forward_block(const DiscriminatorParams& params, const DiscriminatorSpec& spec,
                   std::uint64_t begin, std::uint64_t end, double* out) {
  std::size_t rows = static_cast<std::size_t>(end - begin);
  std::size_t layer_count = spec.hidden_layers() + 1;
  std::vector<double> cur(rows * spec.n);
  for (std::uint64_t x = begin; x < end; ++x)
    for (std::size_t q = 0; q < spec.n; ++q)
      cur[static_cast<std::size_t>(x - begin) * spec.n + q] =
          static_cast<double>((x >> q) & 1u);

  std::vector<double> next, wt;
  std::size_t in_dim = spec.n;
  for (std::size_t l = 0; l < layer_count; ++l) {
    std::size_t out_dim = spec.layer_width(l + 1);
    const auto& w = params.weights[l];
    const auto& b = params.biases[l];
    wt.resize(in_dim * out_dim);
    for (std::size_t j = 0; j < out_dim; ++j)
      for (std::size_t k = 0; k < in_dim; ++k) wt[k * out_dim + j] = w[j * in_dim + k];

    next.resize(rows * out_dim);
    for (std::size_t r = 0; r < rows; ++r) {
      const double* __restrict in_row = cur.data() + r * in_dim;
      double* __restrict out_row = next.data() + r * out_dim;
      for (std::size_t j = 0; j < out_dim; ++j) out_row[j] = b[j];
      for (std::size_t k = 0; k < in_dim; ++k) {
        double v = in_row[k];
        if (v == 0.0) continue;  // input bits and dead ReLUs are often zero
        const double* __restrict wt_row = wt.data() + k * out_dim;
        for (std::size_t j = 0; j < out_dim; ++j) out_row[j] += v * wt_row[j];
      }
    }
    if (l + 1 <= spec.hidden_layers()) {
      double gamma = spec.slopes[l];
      for (auto& v : next)
        if (v < 0.0) v *= gamma;
    }
    cur.swap(next);
    in_dim = out_dim;
  }
  for (std::size_t r = 0; r < rows; ++r) out[r] = output_activation(spec.activation, cur[r]);
}

}  // namespace

double discriminator_preactivation(const DiscriminatorParams& params,
                                   const DiscriminatorSpec& spec, std::uint64_t x) {
  std::size_t layer_count = spec.hidden_layers() + 1;
  std::vector<double> cur(spec.n);
  for (std::size_t q = 0; q < spec.n; ++q) cur[q] = static_cast<double>((x >> q) & 1u);
  std::vector<double> next;
  for (std::size_t l = 0; l < layer_count; ++l) {
    std::size_t out_dim = spec.layer_width(l + 1);
    std::size_t in_dim = spec.layer_width(l);
    next.assign(out_dim, 0.0);
    for (std::size_t j = 0; j < out_dim; ++j) {
      const double* w_row = params.weights[l].data() + j * in_dim;
      double acc = params.biases[l][j];
      for (std::size_t k = 0; k < in_dim; ++k) acc += w_row[k] * cur[k];
      next[j] = acc;
    }
    if (l + 1 <= spec.hidden_layers()) {
      double gamma = spec.slopes[l];
      for (auto& v : next)
        if (v < 0.0) v *= gamma;
    }
    cur.swap(next);
  }
  return cur[0];
}

double discriminator_forward(const DiscriminatorParams& params, const DiscriminatorSpec& spec,
                             std::uint64_t x) {
  return output_activation(spec.activation, discriminator_preactivation(params, spec, x));
}

std::vector<double> discriminator_table(const DiscriminatorParams& params,
                                        const DiscriminatorSpec& spec) {
  if (spec.n > 26) throw std::invalid_argument("discriminator_table: table would exceed 2^26");
  std::uint64_t size = std::uint64_t{1} << spec.n;
  std::vector<double> table(size);
  const std::uint64_t tile = 1024;
  for (std::uint64_t begin = 0; begin < size; begin += tile)
    forward_block(params, spec, begin, std::min(size, begin + tile), table.data() + begin);
  return table;
}

std::vector<double> walsh_coefficients(const DiscriminatorParams& params,
                                       const DiscriminatorSpec& spec) {
  std::vector<double> table = discriminator_table(params, spec);
  walsh_hadamard_transform(table);
  double scale = std::ldexp(1.0, -static_cast<int>(spec.n));
  for (auto& v : table) v *= scale;
  return table;
}

Observable extract_coefficients(const DiscriminatorParams& params, const DiscriminatorSpec& spec,
                                std::size_t max_weight, std::size_t enumeration_cap) {
  if (spec.n > enumeration_cap)
    throw std::invalid_argument(
        "extract_coefficients: n exceeds the enumeration cap; use the sampling estimator "
        "(estimate_blackbox_coefficients) instead");
  std::vector<double> coeffs = walsh_coefficients(params, spec);
  Observable h(spec.n);
  for (std::uint64_t alpha = 0; alpha < coeffs.size(); ++alpha) {
    if (static_cast<std::size_t>(std::popcount(alpha)) > max_weight) continue;
    if (coeffs[alpha] == 0.0) continue;
    PauliString p(spec.n);
    for (std::size_t q = 0; q < spec.n; ++q)
      if ((alpha >> q) & 1u) p.set(q, Pauli::Z);
    h.add_term(coeffs[alpha], p);
  }
  return h;
}

WeightBoundCheck verify_weight_bound(const DiscriminatorSpec& spec, std::size_t n_draws,
                                     std::size_t target_qubit, std::uint64_t seed,
                                     unsigned threads) {
  spec.validate();
  if (target_qubit >= spec.n)
    throw std::domain_error("verify_weight_bound: target qubit out of range");
  if (n_draws == 0) throw std::invalid_argument("verify_weight_bound: need at least one draw");

  WeightBoundCheck check;
  check.draws = n_draws;
  double sigma_out_sq = spec.sigmas.back() * spec.sigmas.back();
  check.bound_reduced = sigma_out_sq / 16.0;
  double bound = sigma_out_sq / 16.0;
  for (std::size_t l = 1; l <= spec.hidden_layers(); ++l) {
    double msig = static_cast<double>(spec.layer_width(l)) * spec.sigmas[l - 1] * spec.sigmas[l - 1];
    double g = spec.slopes[l - 1];
    bound *= msig * (1.0 + g) * (1.0 + g) / 4.0;
  }
  check.bound = bound;

  const std::uint64_t size = std::uint64_t{1} << spec.n;
  const std::uint64_t sign_bit = std::uint64_t{1} << target_qubit;
  const double scale = std::ldexp(1.0, -static_cast<int>(spec.n));

  MeanAccumulator acc;
  parallel_chunks<MeanAccumulator>(
      n_draws, 256, threads,
      [&](std::size_t begin, std::size_t end) {
        MeanAccumulator local;
        std::vector<double> table(size);
        for (std::size_t d = begin; d < end; ++d) {
          DiscriminatorParams params = init_discriminator(spec, seed, d);
          for (std::uint64_t b = 0; b < size; b += 1024)
            forward_block(params, spec, b, std::min(size, b + 1024), table.data() + b);
          double c = 0.0;
          for (std::uint64_t x = 0; x < size; ++x)
            c += ((x & sign_bit) ? -table[x] : table[x]);
          c *= scale;
          local.add(c * c);
        }
        return local;
      },
      [&](MeanAccumulator local) { acc.merge(local); });

  check.empirical = acc.mean();
  check.std_error = acc.std_error();
  check.pass = check.empirical >= check.bound - 4.0 * check.std_error;
  return check;
}

std::vector<LocalityGroup> locality_profile(const DiscriminatorParams& params,
                                            const DiscriminatorSpec& spec,
                                            const ParameterizedCircuit& generator,
                                            const ProductState& rho,
                                            const SampleSpec& sample_spec) {
  if (generator.num_qubits() != spec.n)
    throw std::invalid_argument("locality_profile: generator width differs from input bits");
  std::vector<double> coeffs = walsh_coefficients(params, spec);

  std::vector<Observable> groups(spec.n + 1, Observable(spec.n));
  std::vector<double> sums(spec.n + 1, 0.0);
  std::vector<std::size_t> counts(spec.n + 1, 0);
  for (std::uint64_t alpha = 0; alpha < coeffs.size(); ++alpha) {
    std::size_t k = static_cast<std::size_t>(std::popcount(alpha));
    double c = coeffs[alpha];
    if (c == 0.0) continue;
    sums[k] += c * c;
    counts[k] += 1;
    if (k == 0) continue;
    PauliString p(spec.n);
    for (std::size_t q = 0; q < spec.n; ++q)
      if ((alpha >> q) & 1u) p.set(q, Pauli::Z);
    groups[k].add_term(c, p);
  }

  std::vector<LocalityGroup> profile;
  for (std::size_t k = 0; k <= spec.n; ++k) {
    LocalityGroup g;
    g.weight = k;
    g.sum_coeff_sq = sums[k];
    g.term_count = counts[k];
    if (k > 0 && !groups[k].empty()) {
      ObservableReport rep = estimate_observable(generator, groups[k], rho, sample_spec);
      g.contribution = rep.variance;
    }
    profile.push_back(std::move(g));
  }
  return profile;
}

}  // namespace plateau
