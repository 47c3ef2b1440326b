#pragma once

#include <string>
#include <vector>

#include "plateau/circuit.hpp"

namespace plateau {

// Small circuits that each break exactly one assumption of the supported
// circuit class (or of the uniform parameter distribution) and exhibit a
// measurable pathology. Used by the `counterexamples` command and the tests.
namespace fixtures {

// Two orthogonal rotation layers separated by a CNOT; with H = XZ and the
// zero state the loss is identically zero.
ParameterizedCircuit nonadjacent_layers();

// Y-rotations only (both layers share the axis); any observable with a Y on
// qubit 0 gives a loss that vanishes for every parameter value.
ParameterizedCircuit pure_ry();

// Two orthogonal layers followed by a non-Clifford fixed Z rotation by pi/4
// on one qubit; the X and Y term losses acquire covariance 1/8.
ParameterizedCircuit nonclifford_t();

// Valid class member (two orthogonal layers on two qubits); the pathology is
// sampling its parameters from a narrowed range [-pi/a, pi/a], which
// concentrates the loss of H = ZI to variance at most 5/a^4.
ParameterizedCircuit narrowed_range();

// Valid class member whose first layer consists of Z rotations; the zero
// state commutes with that layer, so the orthogonality factor vanishes and
// H = YX has identically zero loss.
ParameterizedCircuit initial_z_rotation();

// Three-qubit demonstration circuit: the final rotation decides whether the
// back-propagated Z observable stays on one line (cone 1) or spreads through
// the CNOT ladder (cone 3), each with probability 1/2.
ParameterizedCircuit lightcone_demo();

struct NamedFixture {
  std::string name;
  ParameterizedCircuit circuit;
};

std::vector<NamedFixture> all();

// Writes each fixture to <directory>/<name>.json in the circuit file format.
void write_all(const std::string& directory);

}  // namespace fixtures

struct CounterexampleResult {
  std::string name;
  std::string claim;
  double observed = 0.0;
  double reference = 0.0;
  bool pass = false;
};

// Runs the five counterexample checks at the stated sample sizes and
// tolerances. Deterministic for a fixed seed.
std::vector<CounterexampleResult> run_counterexamples(std::uint64_t seed);

}  // namespace plateau
