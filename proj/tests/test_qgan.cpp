#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "plateau/polynomial.hpp"
#include "plateau/qgan.hpp"
#include "plateau/rng.hpp"

using namespace plateau;

TEST_CASE("spec construction and validation") {
  DiscriminatorSpec spec = DiscriminatorSpec::balanced(4, 2, 8, 0.2, OutputActivation::MinMax);
  CHECK(spec.layer_width(0) == 4);
  CHECK(spec.layer_width(1) == 8);
  CHECK(spec.layer_width(3) == 1);
  for (std::size_t l = 1; l <= 3; ++l)
    CHECK(static_cast<double>(spec.layer_width(l)) * spec.sigmas[l - 1] * spec.sigmas[l - 1] ==
          doctest::Approx(4.0));

  DiscriminatorSpec bad = spec;
  bad.slopes = {0.2};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = spec;
  bad.slopes = {0.0, 0.2};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  DiscriminatorSpec round = DiscriminatorSpec::from_json(spec.to_json());
  CHECK(round.n == spec.n);
  CHECK(round.widths == spec.widths);
  CHECK(round.sigmas == spec.sigmas);
  CHECK(round.activation == spec.activation);
}

TEST_CASE("initialization is deterministic and has the requested variance") {
  DiscriminatorSpec spec = DiscriminatorSpec::balanced(4, 1, 8, 1.0, OutputActivation::Wasserstein);
  DiscriminatorParams a = init_discriminator(spec, 7, 3);
  DiscriminatorParams b = init_discriminator(spec, 7, 3);
  CHECK(a.weights == b.weights);
  CHECK(a.biases == b.biases);
  DiscriminatorParams c = init_discriminator(spec, 7, 4);
  CHECK(a.weights != c.weights);

  // sample variance of first-layer weights over many draws within 5%
  for (WeightLaw law : {WeightLaw::Uniform, WeightLaw::Gaussian}) {
    DiscriminatorSpec s2 = spec;
    s2.law = law;
    MeanAccumulator acc;
    for (std::uint64_t d = 0; d < 3000; ++d) {
      DiscriminatorParams p = init_discriminator(s2, 99, d);
      for (double w : p.weights[0]) acc.add(w * w);
    }
    double sigma_sq = spec.sigmas[0] * spec.sigmas[0];
    CHECK(std::fabs(acc.mean() - sigma_sq) / sigma_sq < 0.05);
  }
}

TEST_CASE("forward pass basics") {
  DiscriminatorSpec spec = DiscriminatorSpec::balanced(3, 1, 4, 0.5, OutputActivation::Wasserstein);
  DiscriminatorParams zero_params = init_discriminator(spec, 1);
  for (auto& w : zero_params.weights)
    for (auto& v : w) v = 0.0;
  for (std::uint64_t x = 0; x < 8; ++x) CHECK(discriminator_forward(zero_params, spec, x) == 0.0);

  // pre-activation 0 maps to log(1/2) under the min-max output
  DiscriminatorSpec mm = spec;
  mm.activation = OutputActivation::MinMax;
  CHECK(discriminator_forward(zero_params, mm, 5) == doctest::Approx(std::log(0.5)));

  // slope 1 makes the network affine
  DiscriminatorSpec affine;
  affine.n = 2;
  affine.widths = {2};
  affine.slopes = {1.0};
  affine.sigmas = {1.0, 1.0};
  DiscriminatorParams p = init_discriminator(affine, 2);
  p.weights[0] = {1.0, 0.0, 0.0, 1.0};  // identity embed
  p.weights[1] = {2.0, -1.0};
  p.biases[0] = {0.0, 0.0};
  p.biases[1] = {0.25};
  for (std::uint64_t x = 0; x < 4; ++x) {
    double x0 = static_cast<double>(x & 1u), x1 = static_cast<double>((x >> 1) & 1u);
    CHECK(discriminator_forward(p, affine, x) == doctest::Approx(2.0 * x0 - x1 + 0.25));
  }

  // the batched table matches the single-input path
  DiscriminatorSpec wide = DiscriminatorSpec::balanced(4, 2, 8, 0.2, OutputActivation::MinMax);
  DiscriminatorParams wp = init_discriminator(wide, 5);
  std::vector<double> table = discriminator_table(wp, wide);
  for (std::uint64_t x = 0; x < table.size(); ++x)
    CHECK(table[x] == doctest::Approx(discriminator_forward(wp, wide, x)).epsilon(1e-12));
}

TEST_CASE("coefficient extraction") {
  SUBCASE("constant output keeps only the identity") {
    DiscriminatorSpec spec = DiscriminatorSpec::balanced(3, 0, 1, 1.0, OutputActivation::Wasserstein);
    DiscriminatorParams p = init_discriminator(spec, 1);
    for (auto& v : p.weights[0]) v = 0.0;
    p.biases[0] = {1.25};
    Observable h = extract_coefficients(p, spec, 3);
    CHECK(h.size() == 1);
    CHECK(h.identity_coefficient() == doctest::Approx(1.25));
  }

  SUBCASE("linear probe reproduces the polynomial map") {
    DiscriminatorSpec spec;
    spec.n = 2;
    spec.sigmas = {1.0};
    DiscriminatorParams p = init_discriminator(spec, 1);
    p.weights[0] = {1.0, 0.0};  // D(x) = x1
    Observable h = extract_coefficients(p, spec, 2);
    BinaryPolynomial f(2);
    f.add_monomial(1.0, {1});
    Observable expect = poly_to_observable(f);
    CHECK(h.coefficient(PauliString::from_label("ZI")) ==
          doctest::Approx(expect.coefficient(PauliString::from_label("ZI"))));
    CHECK(h.coefficient(PauliString::from_label("ZI")) == doctest::Approx(-0.5));
  }

  SUBCASE("parseval ties coefficients to the output table") {
    DiscriminatorSpec spec = DiscriminatorSpec::balanced(8, 2, 8, 0.2, OutputActivation::MinMax);
    for (std::uint64_t d = 0; d < 3; ++d) {
      DiscriminatorParams p = init_discriminator(spec, 42, d);
      std::vector<double> table = discriminator_table(p, spec);
      std::vector<double> coeffs = walsh_coefficients(p, spec);
      double lhs = 0.0, rhs = 0.0;
      for (double c : coeffs) lhs += c * c;
      for (double v : table) rhs += v * v;
      rhs /= static_cast<double>(table.size());
      CHECK(std::fabs(lhs - rhs) < 1e-9 * std::max(1.0, rhs));
    }
  }
}

TEST_CASE("negation symmetries") {
  DiscriminatorSpec spec = DiscriminatorSpec::balanced(4, 2, 8, 0.2, OutputActivation::Wasserstein);
  const std::uint64_t sign_bit = 1;
  auto coeff = [&](const DiscriminatorParams& p, const DiscriminatorSpec& s) {
    std::vector<double> table = discriminator_table(p, s);
    double c = 0.0;
    for (std::uint64_t x = 0; x < table.size(); ++x)
      c += ((x & sign_bit) ? -table[x] : table[x]);
    return c / static_cast<double>(table.size());
  };

  SUBCASE("flipping the output layer flips c exactly (identity output)") {
    for (std::uint64_t d = 0; d < 20; ++d) {
      DiscriminatorParams p = init_discriminator(spec, 11, d);
      DiscriminatorParams flipped = p;
      for (auto& v : flipped.weights.back()) v = -v;
      for (auto& v : flipped.biases.back()) v = -v;
      CHECK(coeff(flipped, spec) == doctest::Approx(-coeff(p, spec)).epsilon(1e-12));
    }
  }

  SUBCASE("full negation leaves the c^2 ensemble unchanged on average") {
    for (OutputActivation act : {OutputActivation::Wasserstein, OutputActivation::MinMax}) {
      DiscriminatorSpec s = spec;
      s.activation = act;
      MeanAccumulator diff;
      for (std::uint64_t d = 0; d < 400; ++d) {
        DiscriminatorParams p = init_discriminator(s, 13, d);
        double a = coeff(p, s);
        double b = coeff(negate_params(p), s);
        diff.add(a * a - b * b);
      }
      CHECK(std::fabs(diff.mean()) <= 4.0 * std::max(diff.std_error(), 1e-15));
    }
  }
}

TEST_CASE("weight bound checks") {
  SUBCASE("single affine layer has closed-form second moment") {
    // L = 0: c = -A_k/2, so E[c^2] = sigma^2/4, four times the stated bound
    DiscriminatorSpec spec;
    spec.n = 3;
    spec.sigmas = {0.5};  // sigma_out^2 = 0.25
    WeightBoundCheck chk = verify_weight_bound(spec, 20000, 0, 21);
    CHECK(chk.bound == doctest::Approx(0.25 / 16.0));
    CHECK(chk.bound_reduced == doctest::Approx(0.25 / 16.0));
    CHECK(std::fabs(chk.empirical - 0.0625) <= 4.0 * chk.std_error);
    CHECK(chk.pass);
  }

  SUBCASE("balanced deep spec passes with the gamma product") {
    DiscriminatorSpec spec = DiscriminatorSpec::balanced(4, 2, 8, 1.0, OutputActivation::Wasserstein);
    spec.sigmas.back() = 0.5;  // sigma_out^2 = 0.25
    WeightBoundCheck chk = verify_weight_bound(spec, 4000, 0, 22);
    CHECK(chk.bound_reduced == doctest::Approx(0.015625));
    CHECK(chk.empirical >= 0.015625);
    CHECK(chk.pass);
  }

  SUBCASE("bound value does not depend on n") {
    double reference = -1.0;
    for (std::size_t n : {2, 4, 6, 8}) {
      DiscriminatorSpec spec = DiscriminatorSpec::balanced(n, 2, 8, 0.2, OutputActivation::MinMax);
      WeightBoundCheck chk = verify_weight_bound(spec, 2000, 0, 23);
      if (reference < 0.0)
        reference = chk.bound;
      else
        CHECK(chk.bound == doctest::Approx(reference));
      CHECK(chk.pass);
    }
  }

  SUBCASE("threaded and serial runs agree bitwise") {
    DiscriminatorSpec spec = DiscriminatorSpec::balanced(4, 1, 8, 0.2, OutputActivation::Wasserstein);
    WeightBoundCheck serial = verify_weight_bound(spec, 1500, 0, 24, 1);
    WeightBoundCheck threaded = verify_weight_bound(spec, 1500, 0, 24, 4);
    CHECK(serial.empirical == threaded.empirical);
    CHECK(serial.std_error == threaded.std_error);
  }

  SUBCASE("argument errors") {
    DiscriminatorSpec spec = DiscriminatorSpec::balanced(4, 1, 8, 0.2, OutputActivation::Wasserstein);
    CHECK_THROWS_AS(verify_weight_bound(spec, 100, 9, 1), std::domain_error);
    CHECK_THROWS_AS(verify_weight_bound(spec, 0, 0, 1), std::invalid_argument);
  }
}

TEST_CASE("locality profile") {
  DiscriminatorSpec spec = DiscriminatorSpec::balanced(3, 1, 8, 0.2, OutputActivation::Wasserstein);
  ParameterizedCircuit g = build_efficient_su2(3, 1);
  SampleSpec sample;
  sample.n_samples = 4096;  // m = 12: exhaustive

  SUBCASE("constant discriminator contributes nothing beyond weight 0") {
    DiscriminatorParams p = init_discriminator(spec, 5);
    for (auto& w : p.weights)
      for (auto& v : w) v = 0.0;
    p.biases.back() = {3.0};
    auto profile = locality_profile(p, spec, g, ProductState::zero(3), sample);
    for (const auto& row : profile) {
      if (row.weight == 0) {
        CHECK(row.sum_coeff_sq == doctest::Approx(9.0));
      } else {
        CHECK(row.sum_coeff_sq == 0.0);
        CHECK(row.contribution.estimate == 0.0);
      }
    }
  }

  SUBCASE("weight-1 coefficients carry the guaranteed mass on average") {
    // mean over draws of sum_{|a|=1} c_a^2 >= n * sigma_out^2/16 - 4 SE
    MeanAccumulator mass;
    for (std::uint64_t d = 0; d < 60; ++d) {
      DiscriminatorParams p = init_discriminator(spec, 31, d);
      auto profile = locality_profile(p, spec, g, ProductState::zero(3), sample);
      mass.add(profile[1].sum_coeff_sq);
      // every per-term variance in the group obeys the cone floor (d = 1)
      CHECK(profile[1].contribution.estimate >=
            profile[1].sum_coeff_sq * std::pow(0.25, 1 + 4 * 1) - 1e-12);
    }
    double sigma_out_sq = spec.sigmas.back() * spec.sigmas.back();
    double floor = 3.0 * sigma_out_sq / 16.0;
    CHECK(mass.mean() >= floor - 4.0 * mass.std_error());
  }
}
