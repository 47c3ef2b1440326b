#include "plateau/fixtures.hpp"

#include <cmath>
#include <filesystem>
#include <numbers>

#include "plateau/circuit_io.hpp"
#include "plateau/estimator.hpp"
#include "plateau/oracle.hpp"
#include "plateau/rng.hpp"

namespace plateau {
namespace fixtures {

ParameterizedCircuit nonadjacent_layers() {
  ParameterizedCircuit c(2, 4, {});
  c.append(make_rotation(2, Pauli::Y, 0, 0));
  c.append(make_rotation(2, Pauli::Y, 1, 1));
  c.append(make_cnot(2, 0, 1));
  c.append(make_rotation(2, Pauli::X, 0, 2));
  c.append(make_rotation(2, Pauli::X, 1, 3));
  return c;
}

ParameterizedCircuit pure_ry() {
  ParameterizedCircuit c(2, 6, {});
  c.append(make_rotation(2, Pauli::Y, 0, 0));
  c.append(make_rotation(2, Pauli::Y, 1, 1));
  c.append(make_rotation(2, Pauli::Y, 0, 2));
  c.append(make_rotation(2, Pauli::Y, 1, 3));
  c.append(make_cnot(2, 0, 1));
  c.append(make_rotation(2, Pauli::Y, 0, 4));
  c.append(make_rotation(2, Pauli::Y, 1, 5));
  return c;
}

ParameterizedCircuit nonclifford_t() {
  ParameterizedCircuit c(1, 2, {});
  c.append(make_rotation(1, Pauli::Y, 0, 0));
  c.append(make_rotation(1, Pauli::X, 0, 1));
  c.append(make_t_gate(1, 0));
  return c;
}

ParameterizedCircuit narrowed_range() {
  ParameterizedCircuit c(2, 4, {});
  c.append(make_rotation(2, Pauli::Y, 0, 0));
  c.append(make_rotation(2, Pauli::Y, 1, 1));
  c.append(make_rotation(2, Pauli::X, 0, 2));
  c.append(make_rotation(2, Pauli::X, 1, 3));
  return c;
}

ParameterizedCircuit initial_z_rotation() {
  ParameterizedCircuit c(2, 4, {});
  c.append(make_rotation(2, Pauli::Z, 0, 0));
  c.append(make_rotation(2, Pauli::Z, 1, 1));
  c.append(make_rotation(2, Pauli::Y, 0, 2));
  c.append(make_rotation(2, Pauli::Y, 1, 3));
  return c;
}

ParameterizedCircuit lightcone_demo() {
  ParameterizedCircuit c(3, 7, {});
  for (std::uint32_t q = 0; q < 3; ++q) c.append(make_rotation(3, Pauli::Y, q, static_cast<std::int32_t>(q)));
  for (std::uint32_t q = 0; q < 3; ++q)
    c.append(make_rotation(3, Pauli::Z, q, static_cast<std::int32_t>(3 + q)));
  c.append(make_cnot(3, 1, 2));
  c.append(make_cnot(3, 0, 1));
  c.append(make_rotation(3, Pauli::Y, 0, 6));
  return c;
}

std::vector<NamedFixture> all() {
  return {
      NamedFixture{"nonadjacent_layers", nonadjacent_layers()},
      NamedFixture{"pure_ry", pure_ry()},
      NamedFixture{"nonclifford_t", nonclifford_t()},
      NamedFixture{"narrowed_range", narrowed_range()},
      NamedFixture{"initial_z_rotation", initial_z_rotation()},
      NamedFixture{"lightcone_demo", lightcone_demo()},
  };
}

void write_all(const std::string& directory) {
  std::filesystem::create_directories(directory);
  for (const auto& f : all())
    save_circuit(f.circuit, (std::filesystem::path(directory) / (f.name + ".json")).string());
}

}  // namespace fixtures

namespace {

double max_abs_loss(const ParameterizedCircuit& c, const Observable& h, const ProductState& rho,
                    std::size_t n_thetas, std::uint64_t seed) {
  std::size_t m = c.num_parameters();
  std::vector<double> theta(m);
  double worst = 0.0;
  for (std::size_t s = 0; s < n_thetas; ++s) {
    CounterRng rng(seed, s);
    for (auto& t : theta) t = rng.next_uniform(-std::numbers::pi, std::numbers::pi);
    worst = std::max(worst, std::fabs(oracle_loss(c, theta, h, rho)));
  }
  return worst;
}

}  // namespace

std::vector<CounterexampleResult> run_counterexamples(std::uint64_t seed) {
  std::vector<CounterexampleResult> results;

  {
    // Non-adjacent orthogonal layers: H = XZ, zero state, loss vanishes.
    CounterexampleResult r;
    r.name = "nonadjacent_layers";
    r.claim = "|loss| < 1e-12 over 100 random parameter vectors for H = XZ";
    Observable h(2);
    h.add_term(1.0, PauliString::from_label("XZ"));
    r.observed = max_abs_loss(fixtures::nonadjacent_layers(), h, ProductState::zero(2), 100, seed);
    r.reference = 1e-12;
    r.pass = r.observed < 1e-12;
    results.push_back(std::move(r));
  }

  {
    // Y-rotations only: any Y observable on qubit 0 vanishes identically.
    CounterexampleResult r;
    r.name = "pure_ry";
    r.claim = "|loss| < 1e-12 over 100 random parameter vectors for H = YI";
    Observable h(2);
    h.add_term(1.0, PauliString::from_label("YI"));
    r.observed = max_abs_loss(fixtures::pure_ry(), h, ProductState::zero(2), 100, seed + 1);
    r.reference = 1e-12;
    r.pass = r.observed < 1e-12;
    results.push_back(std::move(r));
  }

  {
    // Non-Clifford fixed gate: E[L_X L_Y] = 1/8 instead of 0.
    CounterexampleResult r;
    r.name = "nonclifford_t";
    r.claim = "E[L_X L_Y] = 0.125 within 4 std errors over 1e6 samples";
    Observable h(1);
    h.add_term(1.0, PauliString::from_label("X"));
    h.add_term(1.0, PauliString::from_label("Y"));
    MomentOptions opts;
    opts.n_samples = 1000000;
    opts.seed = seed + 2;
    opts.allow_invalid_class = true;
    MomentReport rep = moment_suite(fixtures::nonclifford_t(), h, ProductState::zero(1), opts);
    r.observed = rep.pairs.at(0).product_mean;
    r.reference = 0.125;
    double se = rep.pairs.at(0).product_se;
    r.pass = std::fabs(r.observed - r.reference) <= 4.0 * se;
    results.push_back(std::move(r));
  }

  {
    // Narrowed parameter range [-pi/a, pi/a]: Var[L] <= 5/a^4 for H = ZI.
    CounterexampleResult r;
    r.name = "narrowed_range";
    r.claim = "Var[loss] <= 5/a^4 at a = 2 and a = 4 for H = ZI";
    Observable h(2);
    h.add_term(1.0, PauliString::from_label("ZI"));
    bool ok = true;
    double worst_ratio = 0.0;
    for (double a : {2.0, 4.0}) {
      MomentOptions opts;
      opts.n_samples = 200000;
      opts.seed = seed + 3;
      opts.range_scale = 1.0 / a;
      MomentReport rep = moment_suite(fixtures::narrowed_range(), h, ProductState::zero(2), opts);
      double cap = 5.0 / (a * a * a * a);
      ok = ok && rep.loss_variance <= cap;
      worst_ratio = std::max(worst_ratio, rep.loss_variance / cap);
    }
    r.observed = worst_ratio;  // max Var/(5/a^4); must stay below 1
    r.reference = 1.0;
    r.pass = ok;
    results.push_back(std::move(r));
  }

  {
    // First layer of Z rotations on the zero state: loss vanishes and the
    // orthogonality factor is 0.
    CounterexampleResult r;
    r.name = "initial_z_rotation";
    r.claim = "|loss| < 1e-12 for H = YX and orthogonality = 0";
    Observable h(2);
    h.add_term(1.0, PauliString::from_label("YX"));
    ParameterizedCircuit c = fixtures::initial_z_rotation();
    double worst = max_abs_loss(c, h, ProductState::zero(2), 100, seed + 4);
    std::vector<Pauli> nu = *c.first_layer_axes();
    double omega = orthogonality(ProductState::zero(2), nu);
    r.observed = std::max(worst, omega);
    r.reference = 1e-12;
    r.pass = worst < 1e-12 && omega == 0.0;
    results.push_back(std::move(r));
  }

  return results;
}

}  // namespace plateau
