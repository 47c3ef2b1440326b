// Brute-force search for the smallest single-qubit circuit with two
// orthogonal rotation layers plus one fixed non-Clifford Z-rotation whose X
// and Y term losses develop a nonzero covariance. Candidates enumerate the
// axis pair and the position of the fixed gate; covariance is estimated with
// the dense oracle. The winner (covariance 1/8) is frozen as the
// nonclifford_t fixture.

#include <cstdio>
#include <numbers>
#include <vector>

#include "plateau/circuit_io.hpp"
#include "plateau/oracle.hpp"

using namespace plateau;

int main() {
  const Pauli axes[3] = {Pauli::X, Pauli::Y, Pauli::Z};
  Observable h(1);
  h.add_term(1.0, PauliString::from_label("X"));
  h.add_term(1.0, PauliString::from_label("Y"));
  ProductState rho = ProductState::zero(1);

  MomentOptions opts;
  opts.n_samples = 400000;
  opts.seed = 11;
  opts.allow_invalid_class = true;

  struct Hit {
    double cov;
    std::string json;
  };
  std::vector<Hit> hits;

  for (Pauli first : axes) {
    for (Pauli second : axes) {
      if (first == second) continue;
      for (int t_pos = 0; t_pos <= 2; ++t_pos) {
        ParameterizedCircuit c(1, 2, {});
        int rot = 0;
        for (int slot = 0; slot <= 2; ++slot) {
          if (slot == t_pos) {
            c.append(make_t_gate(1, 0));
          } else {
            c.append(make_rotation(1, rot == 0 ? first : second, 0, rot));
            ++rot;
          }
        }
        MomentReport rep = moment_suite(c, h, rho, opts);
        double cov = rep.pairs.at(0).product_mean;
        double se = rep.pairs.at(0).product_se;
        std::printf("axes=%c%c t_pos=%d  E[Lx Ly] = %+.5f +- %.5f\n", pauli_char(first),
                    pauli_char(second), t_pos, cov, se);
        if (cov - 4 * se > 0.0) hits.push_back({cov, circuit_to_json(c)});
      }
    }
  }

  if (hits.empty()) {
    std::printf("no candidate with positive covariance found\n");
    return 1;
  }
  std::printf("\ncandidates with E[Lx Ly] > 0: %zu; first hit:\n%s\n", hits.size(),
              hits.front().json.c_str());
  return 0;
}
