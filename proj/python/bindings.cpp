#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "plateau/circuit_io.hpp"
#include "plateau/errors.hpp"
#include "plateau/estimator.hpp"
#include "plateau/fixtures.hpp"
#include "plateau/oracle.hpp"
#include "plateau/polynomial.hpp"
#include "plateau/qgan.hpp"
#include "plateau/version.hpp"

namespace py = pybind11;
using namespace plateau;

namespace {

std::vector<Pauli> axes_from_string(const std::string& axes) {
  std::vector<Pauli> out;
  out.reserve(axes.size());
  for (char c : axes) out.push_back(pauli_from_char(c));
  return out;
}

DiscreteAssignment assignment_from_bits(const std::vector<int>& bits) {
  DiscreteAssignment a(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) a.set_bit(i, bits[i] != 0);
  return a;
}

py::dict interval_dict(const Interval& iv) {
  py::dict d;
  d["estimate"] = iv.estimate;
  d["ci_lo"] = iv.lo;
  d["ci_hi"] = iv.hi;
  return d;
}

py::dict bound_report_dict(const BoundReport& r) {
  py::dict d;
  d["lower"] = interval_dict(r.lower);
  d["variance"] = interval_dict(r.variance);
  d["upper"] = interval_dict(r.upper);
  d["omega"] = r.omega;
  d["n_samples"] = r.n_samples;
  d["exact"] = r.exact;
  py::dict hist;
  for (const auto& [cone, count] : r.cone_histogram) hist[py::int_(cone)] = count;
  d["cone_histogram"] = hist;
  return d;
}

SampleSpec make_spec(std::size_t n_samples, std::uint64_t seed, double confidence,
                     bool allow_invalid) {
  SampleSpec spec;
  spec.n_samples = n_samples;
  spec.seed = seed;
  spec.confidence_level = confidence;
  spec.allow_invalid_class = allow_invalid;
  return spec;
}

}  // namespace

PYBIND11_MODULE(_plateau, m) {
  m.doc() = "Classical loss/gradient concentration diagnostics for parameterized quantum circuits";
  m.attr("__version__") = kVersion;

  py::register_exception<ClassValidationError>(m, "ClassValidationError", PyExc_ValueError);
  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_ValueError);

  py::class_<PauliString>(m, "PauliString")
      .def(py::init([](const std::string& label) { return PauliString::from_label(label); }),
           py::arg("label"))
      .def_static("identity", &PauliString::identity, py::arg("n"))
      .def_property_readonly("n", &PauliString::num_qubits)
      .def_property_readonly("phase", &PauliString::phase)
      .def("weight", &PauliString::weight)
      .def("label", &PauliString::label)
      .def("signed_label", &PauliString::signed_label)
      .def("commutes_with", &PauliString::commutes_with)
      .def("is_identity", &PauliString::is_identity)
      .def("__mul__", [](const PauliString& a, const PauliString& b) { return a * b; })
      .def("__eq__", [](const PauliString& a, const PauliString& b) { return a == b; })
      .def("__repr__", [](const PauliString& p) { return "PauliString('" + p.signed_label() + "')"; });

  py::class_<Observable>(m, "Observable")
      .def(py::init<std::size_t>(), py::arg("n"))
      .def_static("parse", [](const std::string& text) { return Observable::parse(text); })
      .def("add_term", &Observable::add_term, py::arg("coeff"), py::arg("pauli"))
      .def_property_readonly("n", &Observable::num_qubits)
      .def("__len__", &Observable::size)
      .def("coefficient", &Observable::coefficient)
      .def("identity_coefficient", &Observable::identity_coefficient)
      .def("to_text", &Observable::to_text)
      .def("terms",
           [](const Observable& h) {
             py::list out;
             for (const auto& t : h.terms()) out.append(py::make_tuple(t.coeff, t.pauli));
             return out;
           })
      .def("max_weight", &Observable::max_weight)
      .def("is_diagonal", &Observable::is_diagonal);

  m.def("classify_observable",
        [](const Observable& h, std::size_t threshold, double floor) {
          return locality_name(classify_observable(h, threshold, floor));
        },
        py::arg("observable"), py::arg("locality_threshold"), py::arg("coeff_floor") = 1e-9);

  py::class_<BinaryPolynomial>(m, "BinaryPolynomial")
      .def(py::init<std::size_t>(), py::arg("n"))
      .def("add_monomial",
           [](BinaryPolynomial& f, double coeff, const std::vector<std::size_t>& vars) {
             f.add_monomial(coeff, vars);
           })
      .def("evaluate", &BinaryPolynomial::evaluate)
      .def("degree", &BinaryPolynomial::degree)
      .def_property_readonly("n", &BinaryPolynomial::num_variables);

  m.def("poly_to_observable", &poly_to_observable);
  m.def("observable_to_poly", &observable_to_poly);
  m.def(
      "estimate_blackbox_coefficients",
      [](const std::function<double(std::uint64_t)>& f, std::size_t n,
         const std::vector<PauliString>& targets, std::size_t n_samples, std::uint64_t seed) {
        auto est = estimate_blackbox_coefficients(f, n, targets, n_samples, seed);
        py::list out;
        for (const auto& e : est) out.append(py::make_tuple(e.value, e.std_error));
        return out;
      },
      py::arg("f"), py::arg("n"), py::arg("targets"), py::arg("n_samples"), py::arg("seed") = 0);

  py::class_<ProductState>(m, "ProductState")
      .def_static("zero", &ProductState::zero, py::arg("n"))
      .def_static("plus", &ProductState::plus, py::arg("n"))
      .def_static("mixed",
                  [](const std::vector<std::array<double, 3>>& bloch) {
                    return ProductState::mixed(
                        std::vector<ProductState::Bloch>(bloch.begin(), bloch.end()));
                  })
      .def_property_readonly("n", &ProductState::num_qubits)
      .def("is_pure_product", &ProductState::is_pure_product, py::arg("tol") = 1e-9);

  py::class_<ParameterizedCircuit>(m, "ParameterizedCircuit")
      .def_property_readonly("n", &ParameterizedCircuit::num_qubits)
      .def_property_readonly("m", &ParameterizedCircuit::num_parameters)
      .def("num_gates", [](const ParameterizedCircuit& c) { return c.gates().size(); })
      .def("to_json", [](const ParameterizedCircuit& c) { return circuit_to_json(c); })
      .def_static("from_json", [](const std::string& text) { return circuit_from_json(text); })
      .def("__eq__", [](const ParameterizedCircuit& a, const ParameterizedCircuit& b) {
        return a == b;
      });

  m.def(
      "build_efficient_su2",
      [](std::size_t n, std::size_t depth, const std::string& axes,
         const std::string& entanglement) {
        if (axes.size() != 2) throw std::invalid_argument("axes needs two letters");
        return build_efficient_su2(n, depth, {pauli_from_char(axes[0]), pauli_from_char(axes[1])},
                                   entanglement_from_name(entanglement));
      },
      py::arg("n"), py::arg("depth"), py::arg("axes") = "YZ",
      py::arg("entanglement") = "pairwise");
  m.def("build_cartan", &build_cartan, py::arg("n"), py::arg("depth"));
  m.def("validate_circuit_class", [](const ParameterizedCircuit& c) {
    ValidationReport r = validate_circuit_class(c);
    py::dict d;
    d["valid"] = r.valid;
    d["violations"] = r.violations;
    return d;
  });
  m.def("fixture", [](const std::string& name) {
    for (const auto& f : fixtures::all())
      if (f.name == name) return f.circuit;
    throw std::invalid_argument("unknown fixture '" + name + "'");
  });
  m.def("fixture_names", [] {
    std::vector<std::string> names;
    for (const auto& f : fixtures::all()) names.push_back(f.name);
    return names;
  });

  m.def(
      "propagate",
      [](const ParameterizedCircuit& c, const std::vector<int>& bits, const PauliString& p) {
        PropagatedFrame frame = propagate(c, assignment_from_bits(bits), p);
        return py::make_tuple(frame.pauli, frame.cone, frame.sign());
      },
      py::arg("circuit"), py::arg("theta_bits"), py::arg("pauli"),
      "Conjugate the observable through the circuit at a discrete point; returns "
      "(pauli, cone, sign).");
  m.def("full_cone", &full_cone, py::arg("circuit"), py::arg("pauli"), py::arg("n_probe") = 200,
        py::arg("seed") = 0);
  m.def(
      "orthogonality",
      [](const ProductState& rho, const std::string& axes) {
        std::vector<Pauli> nu = axes_from_string(axes);
        return orthogonality(rho, nu);
      },
      py::arg("state"), py::arg("first_layer_axes"));

  m.def(
      "estimate_term",
      [](const ParameterizedCircuit& c, const PauliString& p, const ProductState& rho,
         std::size_t n_samples, std::uint64_t seed, double confidence, bool allow_invalid) {
        return bound_report_dict(
            estimate_term(c, p, rho, make_spec(n_samples, seed, confidence, allow_invalid)));
      },
      py::arg("circuit"), py::arg("pauli"), py::arg("state"), py::arg("n_samples") = 10000,
      py::arg("seed") = 0, py::arg("confidence") = 0.95, py::arg("allow_invalid_class") = false);

  m.def(
      "estimate_observable",
      [](const ParameterizedCircuit& c, const Observable& h, const ProductState& rho,
         std::size_t n_samples, std::uint64_t seed, double confidence, bool allow_invalid) {
        ObservableReport rep =
            estimate_observable(c, h, rho, make_spec(n_samples, seed, confidence, allow_invalid));
        py::dict d;
        py::list terms;
        for (const auto& t : rep.terms) {
          py::dict td = bound_report_dict(t.report);
          td["coeff"] = t.coeff;
          td["alpha_label"] = t.pauli.label();
          terms.append(td);
        }
        d["terms"] = terms;
        d["lower"] = interval_dict(rep.lower);
        d["variance"] = interval_dict(rep.variance);
        d["upper"] = interval_dict(rep.upper);
        d["omega"] = rep.omega;
        d["n_samples"] = rep.n_samples;
        d["exact"] = rep.exact;
        return d;
      },
      py::arg("circuit"), py::arg("observable"), py::arg("state"), py::arg("n_samples") = 10000,
      py::arg("seed") = 0, py::arg("confidence") = 0.95, py::arg("allow_invalid_class") = false);

  m.def(
      "estimate_gradient_variance",
      [](const ParameterizedCircuit& c, const PauliString& p, const ProductState& rho,
         std::size_t param_index, std::size_t n_samples, std::uint64_t seed) {
        Interval iv =
            estimate_gradient_variance(c, p, rho, param_index, make_spec(n_samples, seed, 0.95, false));
        return interval_dict(iv);
      },
      py::arg("circuit"), py::arg("pauli"), py::arg("state"), py::arg("param_index"),
      py::arg("n_samples") = 10000, py::arg("seed") = 0);

  m.def(
      "oracle_loss",
      [](const ParameterizedCircuit& c, const std::vector<double>& theta, const Observable& h,
         const ProductState& rho) { return oracle_loss(c, theta, h, rho); },
      py::arg("circuit"), py::arg("theta"), py::arg("observable"), py::arg("state"));
  m.def(
      "oracle_gradient",
      [](const ParameterizedCircuit& c, const std::vector<double>& theta, const Observable& h,
         const ProductState& rho) { return oracle_gradient(c, theta, h, rho); },
      py::arg("circuit"), py::arg("theta"), py::arg("observable"), py::arg("state"));

  m.def(
      "moment_suite",
      [](const ParameterizedCircuit& c, const Observable& h, const ProductState& rho,
         std::size_t n_samples, double range_scale, std::uint64_t seed, bool with_gradients,
         bool allow_invalid) {
        MomentOptions opts;
        opts.n_samples = n_samples;
        opts.range_scale = range_scale;
        opts.seed = seed;
        opts.with_gradients = with_gradients;
        opts.allow_invalid_class = allow_invalid;
        MomentReport rep = moment_suite(c, h, rho, opts);
        py::dict d;
        py::list terms;
        for (const auto& t : rep.terms) {
          py::dict td;
          td["label"] = t.label;
          td["coeff"] = t.coeff;
          td["mean"] = t.mean;
          td["mean_se"] = t.mean_se;
          td["second_moment"] = t.second_moment;
          terms.append(td);
        }
        py::list pairs;
        for (const auto& p : rep.pairs) {
          py::dict pd;
          pd["label_a"] = p.label_a;
          pd["label_b"] = p.label_b;
          pd["product_mean"] = p.product_mean;
          pd["product_se"] = p.product_se;
          pairs.append(pd);
        }
        d["terms"] = terms;
        d["pairs"] = pairs;
        d["loss_variance"] = rep.loss_variance;
        d["loss_variance_se"] = rep.loss_variance_se;
        d["weighted_term_variance"] = rep.weighted_term_variance;
        d["independence_gap"] = rep.independence_gap;
        d["independence_gap_se"] = rep.independence_gap_se;
        return d;
      },
      py::arg("circuit"), py::arg("observable"), py::arg("state"), py::arg("n_samples") = 100000,
      py::arg("range_scale") = 1.0, py::arg("seed") = 0, py::arg("with_gradients") = false,
      py::arg("allow_invalid_class") = false);

  py::class_<DiscriminatorSpec>(m, "DiscriminatorSpec")
      .def_static(
          "balanced",
          [](std::size_t n, std::size_t layers, std::size_t width, double gamma,
             const std::string& activation) {
            return DiscriminatorSpec::balanced(n, layers, width, gamma,
                                               activation == "minmax"
                                                   ? OutputActivation::MinMax
                                                   : OutputActivation::Wasserstein);
          },
          py::arg("n"), py::arg("hidden_layers"), py::arg("width"), py::arg("gamma"),
          py::arg("activation") = "wasserstein")
      .def_static("from_json", &DiscriminatorSpec::from_json)
      .def("to_json", &DiscriminatorSpec::to_json, py::arg("indent") = 2)
      .def_property_readonly("n", [](const DiscriminatorSpec& s) { return s.n; })
      .def_property_readonly("hidden_layers", &DiscriminatorSpec::hidden_layers);

  py::class_<DiscriminatorParams>(m, "DiscriminatorParams");

  m.def("init_discriminator", &init_discriminator, py::arg("spec"), py::arg("seed"),
        py::arg("draw_index") = 0);
  m.def("discriminator_forward", &discriminator_forward, py::arg("params"), py::arg("spec"),
        py::arg("x"));
  m.def("walsh_coefficients", &walsh_coefficients, py::arg("params"), py::arg("spec"));
  m.def("extract_coefficients", &extract_coefficients, py::arg("params"), py::arg("spec"),
        py::arg("max_weight"), py::arg("enumeration_cap") = 20);
  m.def(
      "verify_weight_bound",
      [](const DiscriminatorSpec& spec, std::size_t n_draws, std::size_t target_qubit,
         std::uint64_t seed, unsigned threads) {
        WeightBoundCheck chk = verify_weight_bound(spec, n_draws, target_qubit, seed, threads);
        py::dict d;
        d["empirical"] = chk.empirical;
        d["std_error"] = chk.std_error;
        d["bound"] = chk.bound;
        d["bound_reduced"] = chk.bound_reduced;
        d["pass"] = chk.pass;
        d["draws"] = chk.draws;
        return d;
      },
      py::arg("spec"), py::arg("n_draws"), py::arg("target_qubit") = 0, py::arg("seed") = 0,
      py::arg("threads") = 1);
  m.def(
      "locality_profile",
      [](const DiscriminatorParams& params, const DiscriminatorSpec& spec,
         const ParameterizedCircuit& generator, const ProductState& rho, std::size_t n_samples,
         std::uint64_t seed) {
        auto profile = locality_profile(params, spec, generator, rho,
                                        make_spec(n_samples, seed, 0.95, false));
        py::list out;
        for (const auto& g : profile) {
          py::dict d;
          d["weight"] = g.weight;
          d["sum_coeff_sq"] = g.sum_coeff_sq;
          d["term_count"] = g.term_count;
          d["contribution"] = interval_dict(g.contribution);
          out.append(d);
        }
        return out;
      },
      py::arg("params"), py::arg("spec"), py::arg("generator"), py::arg("state"),
      py::arg("n_samples") = 10000, py::arg("seed") = 0);

  m.def("estimator_variance_check",
        [](double g, int n, std::size_t n_samples, std::uint64_t seed) {
          EstimatorVarianceCheck chk = estimator_variance_check(g, n, n_samples, seed);
          py::dict d;
          d["g"] = chk.g;
          d["bernoulli_empirical"] = chk.bernoulli_empirical;
          d["bernoulli_analytic"] = chk.bernoulli_analytic;
          d["cone_empirical"] = chk.cone_empirical;
          d["cone_exact"] = chk.cone_exact;
          d["cone_cap"] = chk.cone_cap;
          return d;
        },
        py::arg("g"), py::arg("n") = 30, py::arg("n_samples") = 1000000, py::arg("seed") = 0);

  m.def("run_counterexamples", [](std::uint64_t seed) {
    py::list out;
    for (const auto& r : run_counterexamples(seed)) {
      py::dict d;
      d["name"] = r.name;
      d["claim"] = r.claim;
      d["observed"] = r.observed;
      d["reference"] = r.reference;
      d["pass"] = r.pass;
      out.append(d);
    }
    return out;
  }, py::arg("seed") = 0);
}
