// Command-line front end: circuit builders, concentration estimates, sweeps,
// the dense oracle, the discriminator analyzer, and the counterexample suite.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "plateau/circuit_io.hpp"
#include "plateau/errors.hpp"
#include "plateau/threading.hpp"
#include "plateau/estimator.hpp"
#include "plateau/fixtures.hpp"
#include "plateau/oracle.hpp"
#include "plateau/qgan.hpp"
#include "plateau/report.hpp"
#include "plateau/version.hpp"

using nlohmann::json;
using namespace plateau;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;       // config, file and parse errors
constexpr int kExitValidation = 3;  // circuit outside the supported class
constexpr int kExitCap = 4;         // simulation size cap exceeded

unsigned thread_count_from_env() {
  const char* env = std::getenv("PLATEAU_THREADS");
  if (!env) return default_thread_count();
  int v = std::atoi(env);
  return v > 0 ? static_cast<unsigned>(v) : 1u;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CircuitOptions {
  std::string circuit_file;
  std::string ansatz;
  std::size_t n = 0;
  std::size_t depth = 0;
  std::string axes = "YZ";
  std::string entanglement = "pairwise";

  void attach(CLI::App* cmd, bool with_n = true) {
    cmd->add_option("--circuit", circuit_file, "circuit JSON file");
    cmd->add_option("--ansatz", ansatz, "builder: efficientsu2 | cartan");
    if (with_n) cmd->add_option("--n", n, "qubit count (builder)");
    cmd->add_option("--depth", depth, "depth (builder)");
    cmd->add_option("--axes", axes, "two rotation axes, e.g. YZ (efficientsu2)");
    cmd->add_option("--entanglement", entanglement, "pairwise | linear | circular");
  }

  ParameterizedCircuit resolve(json& config) const {
    if (!circuit_file.empty() && !ansatz.empty())
      throw std::runtime_error("--circuit conflicts with --ansatz; pass exactly one source");
    if (!circuit_file.empty()) {
      config["circuit_file"] = circuit_file;
      return load_circuit(circuit_file);
    }
    if (ansatz.empty()) throw std::runtime_error("need --circuit or --ansatz");
    if (n == 0) throw std::runtime_error("builder needs --n");
    config["ansatz"] = ansatz;
    config["n"] = n;
    config["depth"] = depth;
    if (ansatz == "efficientsu2") {
      if (axes.size() != 2) throw std::runtime_error("--axes needs two letters");
      RotationAxes ax{pauli_from_char(axes[0]), pauli_from_char(axes[1])};
      config["axes"] = axes;
      config["entanglement"] = entanglement;
      return build_efficient_su2(n, depth, ax, entanglement_from_name(entanglement));
    }
    if (ansatz == "cartan") return build_cartan(n, depth);
    throw std::runtime_error("unknown ansatz '" + ansatz + "'");
  }
};

struct ObservableOptions {
  std::string obs_file;
  std::string obs_text;

  void attach(CLI::App* cmd) {
    cmd->add_option("--obs", obs_file, "observable text file");
    cmd->add_option("--obs-text", obs_text, "inline observable, ';' separates terms");
  }

  Observable resolve(json& config) const {
    if (!obs_file.empty() && !obs_text.empty())
      throw std::runtime_error("--obs conflicts with --obs-text; pass exactly one");
    if (!obs_file.empty()) {
      config["obs_file"] = obs_file;
      return Observable::parse(read_file(obs_file));
    }
    if (obs_text.empty()) throw std::runtime_error("need --obs or --obs-text");
    std::string text = obs_text;
    for (auto& c : text)
      if (c == ';') c = '\n';
    config["obs_text"] = obs_text;
    return Observable::parse(text);
  }
};

struct StateOptions {
  std::string state = "zero";
  std::string bloch_file;

  void attach(CLI::App* cmd) {
    cmd->add_option("--state", state, "zero | plus | mixed");
    cmd->add_option("--bloch", bloch_file, "JSON [[rx,ry,rz],...] for --state mixed");
  }

  ProductState resolve(std::size_t n, json& config) const {
    config["state"] = state;
    if (state == "zero") return ProductState::zero(n);
    if (state == "plus") return ProductState::plus(n);
    if (state == "mixed") {
      if (bloch_file.empty()) throw std::runtime_error("--state mixed needs --bloch");
      config["bloch_file"] = bloch_file;
      json j = json::parse(read_file(bloch_file));
      std::vector<ProductState::Bloch> bloch;
      for (const auto& row : j)
        bloch.push_back({row.at(0).get<double>(), row.at(1).get<double>(), row.at(2).get<double>()});
      return ProductState::mixed(bloch);
    }
    throw std::runtime_error("unknown state '" + state + "'");
  }
};

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    write_text_file(out_path, content);
}

void print_summary(const ObservableReport& report) {
  std::printf("%-16s %12s %12s %12s\n", "term", "lower", "variance", "upper");
  for (const auto& t : report.terms)
    std::printf("%-16s %12.6g %12.6g %12.6g\n", t.pauli.label().c_str(),
                t.report.lower.estimate, t.report.variance.estimate, t.report.upper.estimate);
  std::printf("%-16s %12.6g %12.6g %12.6g   (omega=%.6g, samples=%zu%s)\n", "total",
              report.lower.estimate, report.variance.estimate, report.upper.estimate, report.omega,
              report.n_samples, report.exact ? ", exact" : "");
}

int cmd_analyze(const CircuitOptions& copt, const ObservableOptions& oopt,
                const StateOptions& sopt, const SampleSpec& spec, const std::string& out_path,
                const std::string& format) {
  json config{{"command", "analyze"},
              {"samples", spec.n_samples},
              {"seed", spec.seed},
              {"confidence", spec.confidence_level},
              {"allow_invalid_class", spec.allow_invalid_class},
              {"format", format}};
  ParameterizedCircuit c = copt.resolve(config);
  Observable h = oopt.resolve(config);
  ProductState rho = sopt.resolve(c.num_qubits(), config);

  ObservableReport report = estimate_observable(c, h, rho, spec);
  std::string content = (format == "json")
                            ? observable_report_json(report, c.num_qubits(), config.dump())
                            : observable_report_csv(report, c.num_qubits(), config.dump());
  emit(out_path, content);
  if (!out_path.empty()) print_summary(report);
  return kExitOk;
}

int cmd_sweep(const SweepConfig& sweep, const std::string& n_list_text, const SampleSpec& spec,
              const std::string& out_path, const std::string& format) {
  std::vector<std::size_t> n_list;
  std::stringstream ss(n_list_text);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) n_list.push_back(static_cast<std::size_t>(std::stoul(tok)));

  json config{{"command", "sweep"},
              {"ansatz", sweep.ansatz},
              {"depth_rule", sweep.depth_rule},
              {"obs_rule", sweep.obs_rule},
              {"state", sweep.state_rule},
              {"n_list", n_list},
              {"samples", spec.n_samples},
              {"seed", spec.seed},
              {"format", format}};
  if (sweep.gradient_param) config["gradient_param"] = *sweep.gradient_param;

  std::vector<SweepRow> rows = sweep_qubits(sweep, n_list, spec);
  emit(out_path,
       format == "json" ? sweep_json(rows, config.dump()) : sweep_csv(rows, config.dump()));
  return kExitOk;
}

int cmd_oracle(const CircuitOptions& copt, const ObservableOptions& oopt, const StateOptions& sopt,
               const MomentOptions& opts, const std::string& reduction_term,
               const std::string& out_path) {
  json config{{"command", "oracle"},
              {"samples", opts.n_samples},
              {"seed", opts.seed},
              {"range_scale", opts.range_scale},
              {"with_gradients", opts.with_gradients},
              {"allow_invalid_class", opts.allow_invalid_class}};
  ParameterizedCircuit c = copt.resolve(config);
  Observable h = oopt.resolve(config);
  ProductState rho = sopt.resolve(c.num_qubits(), config);

  MomentReport report = moment_suite(c, h, rho, opts);
  std::string content = moment_report_json(report, config.dump());
  if (!reduction_term.empty()) {
    config["reduction_term"] = reduction_term;
    ReductionCheck check = discrete_reduction_check(c, PauliString::from_label(reduction_term),
                                                    rho, opts.n_samples, opts.seed);
    json j = json::parse(content);
    j["reduction_check"] = json{{"continuous_variance", check.continuous_variance},
                                {"continuous_se", check.continuous_se},
                                {"discrete_value", check.discrete_value},
                                {"discrete_exact", check.discrete_exact},
                                {"z", check.z}};
    j["config"] = config;
    content = j.dump(2) + "\n";
  }
  emit(out_path, content);
  return kExitOk;
}

int cmd_qgan_bound(std::size_t n, std::size_t layers, std::size_t width, double gamma,
                   const std::string& activation, const std::string& law, double sigma_out_sq,
                   std::size_t draws, std::uint64_t seed, std::size_t target_qubit,
                   unsigned threads, const std::string& spec_file, const std::string& out_path) {
  DiscriminatorSpec spec;
  if (!spec_file.empty()) {
    spec = DiscriminatorSpec::from_json(read_file(spec_file));
  } else {
    OutputActivation act =
        activation == "minmax" ? OutputActivation::MinMax : OutputActivation::Wasserstein;
    spec = DiscriminatorSpec::balanced(n, layers, width, gamma, act);
    if (law == "gaussian") spec.law = WeightLaw::Gaussian;
    if (sigma_out_sq > 0.0) spec.sigmas.back() = std::sqrt(sigma_out_sq);
  }
  json config{{"command", "qgan-bound"}, {"spec", json::parse(spec.to_json(-1))},
              {"draws", draws},          {"seed", seed},
              {"target_qubit", target_qubit}, {"threads", threads}};

  WeightBoundCheck check = verify_weight_bound(spec, draws, target_qubit, seed, threads);
  std::vector<std::pair<DiscriminatorSpec, WeightBoundCheck>> rows{{spec, check}};
  emit(out_path, weight_bound_csv(rows, config.dump()));
  std::fprintf(stderr, "empirical=%.6g bound=%.6g stderr=%.3g -> %s\n", check.empirical,
               check.bound, check.std_error, check.pass ? "pass" : "FAIL");
  return check.pass ? kExitOk : 1;
}

int cmd_qgan_profile(std::size_t n, std::size_t layers, std::size_t width, double gamma,
                     const std::string& activation, std::uint64_t seed, const CircuitOptions& copt,
                     const SampleSpec& spec, const std::string& out_path) {
  OutputActivation act =
      activation == "minmax" ? OutputActivation::MinMax : OutputActivation::Wasserstein;
  DiscriminatorSpec dspec = DiscriminatorSpec::balanced(n, layers, width, gamma, act);
  json config{{"command", "qgan-profile"},
              {"spec", json::parse(dspec.to_json(-1))},
              {"seed", seed},
              {"samples", spec.n_samples},
              {"est_seed", spec.seed}};
  CircuitOptions generator = copt;
  if (generator.circuit_file.empty() && generator.ansatz.empty()) generator.ansatz = "efficientsu2";
  if (generator.n == 0) generator.n = n;
  ParameterizedCircuit g = generator.resolve(config);
  if (g.num_qubits() != n)
    throw std::runtime_error("generator qubit count differs from discriminator inputs");

  DiscriminatorParams params = init_discriminator(dspec, seed);
  std::vector<LocalityGroup> profile =
      locality_profile(params, dspec, g, ProductState::zero(n), spec);
  emit(out_path, locality_profile_csv(profile, config.dump()));
  return kExitOk;
}

int cmd_counterexamples(std::uint64_t seed) {
  std::vector<CounterexampleResult> results = run_counterexamples(seed);
  bool all_pass = true;
  std::printf("%-22s %-8s %14s %14s   %s\n", "fixture", "status", "observed", "reference",
              "claim");
  for (const auto& r : results) {
    all_pass = all_pass && r.pass;
    std::printf("%-22s %-8s %14.6g %14.6g   %s\n", r.name.c_str(), r.pass ? "pass" : "FAIL",
                r.observed, r.reference, r.claim.c_str());
  }
  std::printf("%zu/%zu passed\n", static_cast<std::size_t>(std::count_if(
                                      results.begin(), results.end(),
                                      [](const CounterexampleResult& r) { return r.pass; })),
              results.size());
  return all_pass ? kExitOk : 1;
}

int cmd_build(const CircuitOptions& copt, const std::string& fixture, const std::string& out_path) {
  ParameterizedCircuit c;
  if (!fixture.empty()) {
    bool found = false;
    for (auto& f : fixtures::all())
      if (f.name == fixture) {
        c = f.circuit;
        found = true;
        break;
      }
    if (!found) throw std::runtime_error("unknown fixture '" + fixture + "'");
  } else {
    json config;
    c = copt.resolve(config);
  }
  ValidationReport report = validate_circuit_class(c);
  std::string text = circuit_to_json(c) + "\n";
  emit(out_path, text);
  if (!report.valid) {
    std::fprintf(stderr, "note: circuit is outside the supported class:\n");
    for (const auto& v : report.violations) std::fprintf(stderr, "  - %s\n", v.c_str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classical concentration diagnostics for parameterized quantum circuits"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  // analyze
  auto* analyze = app.add_subcommand("analyze", "estimate per-term variance and bounds");
  CircuitOptions a_circuit;
  ObservableOptions a_obs;
  StateOptions a_state;
  SampleSpec a_spec;
  std::string a_out, a_format = "csv";
  a_circuit.attach(analyze);
  a_obs.attach(analyze);
  a_state.attach(analyze);
  analyze->add_option("--samples", a_spec.n_samples, "assignments to draw");
  analyze->add_option("--seed", a_spec.seed, "RNG seed");
  analyze->add_option("--confidence", a_spec.confidence_level, "CI level");
  analyze->add_flag("--allow-invalid-class", a_spec.allow_invalid_class,
                    "estimate even if validation fails");
  analyze->add_option("--out", a_out, "output file (stdout otherwise)");
  analyze->add_option("--format", a_format, "csv | json");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "scaling table over qubit counts");
  SweepConfig s_config;
  std::string s_nlist, s_out, s_format = "csv", s_axes = "YZ";
  SampleSpec s_spec;
  long long s_grad = -1;
  sweep->add_option("--ansatz", s_config.ansatz, "efficientsu2 | cartan");
  sweep->add_option("--axes", s_axes, "rotation axes (efficientsu2)");
  sweep->add_option("--depth-rule", s_config.depth_rule, "log2 | n/2 | <int>");
  sweep->add_option("--obs-rule", s_config.obs_rule, "z0 | zk:log2 | zk:<int> | global-x | mixed");
  sweep->add_option("--state", s_config.state_rule, "zero | plus");
  sweep->add_option("--n-list", s_nlist, "comma-separated qubit counts")->required();
  sweep->add_option("--gradient-param", s_grad, "sweep Var of this partial derivative");
  sweep->add_option("--samples", s_spec.n_samples, "assignments per n");
  sweep->add_option("--seed", s_spec.seed, "RNG seed");
  sweep->add_option("--out", s_out, "output file");
  sweep->add_option("--format", s_format, "csv | json");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "dense moment report (continuous parameters)");
  CircuitOptions o_circuit;
  ObservableOptions o_obs;
  StateOptions o_state;
  MomentOptions o_opts;
  std::string o_out, o_reduction;
  o_circuit.attach(oracle);
  o_obs.attach(oracle);
  o_state.attach(oracle);
  oracle->add_option("--samples", o_opts.n_samples, "parameter samples");
  oracle->add_option("--seed", o_opts.seed, "RNG seed");
  oracle->add_option("--range-scale", o_opts.range_scale, "uniform range [-a*pi, a*pi]");
  oracle->add_flag("--with-gradients", o_opts.with_gradients, "per-parameter gradient variances");
  oracle->add_flag("--allow-invalid-class", o_opts.allow_invalid_class,
                   "run even if validation fails");
  oracle->add_option("--reduction-term", o_reduction,
                     "also compare continuous variance of this Pauli against the discrete value");
  oracle->add_option("--out", o_out, "output file");

  // qgan
  auto* qgan = app.add_subcommand("qgan", "discriminator-induced observable analysis");
  qgan->require_subcommand(1);
  auto* bound = qgan->add_subcommand("bound", "verify the 1-local weight bound");
  std::size_t q_n = 4, q_layers = 1, q_width = 8, q_draws = 10000, q_target = 0;
  double q_gamma = 1.0, q_sigma_out_sq = 0.0;
  std::string q_act = "wasserstein", q_law = "uniform", q_out, q_spec_file;
  std::uint64_t q_seed = 0;
  unsigned q_threads = thread_count_from_env();
  bound->add_option("--n", q_n, "input bits");
  bound->add_option("--layers", q_layers, "hidden layers");
  bound->add_option("--width", q_width, "hidden width");
  bound->add_option("--gamma", q_gamma, "leaky-ReLU slope");
  bound->add_option("--activation", q_act, "wasserstein | minmax");
  bound->add_option("--init", q_law, "uniform | gaussian");
  bound->add_option("--sigma-out-sq", q_sigma_out_sq, "override output-layer weight variance");
  bound->add_option("--draws", q_draws, "initialization draws");
  bound->add_option("--seed", q_seed, "RNG seed");
  bound->add_option("--target-qubit", q_target, "which weight-1 coefficient");
  bound->add_option("--threads", q_threads, "worker threads");
  bound->add_option("--spec", q_spec_file, "discriminator spec JSON (overrides flags)");
  bound->add_option("--out", q_out, "output CSV");

  auto* profile = qgan->add_subcommand("profile", "variance contribution by term weight");
  std::size_t p_n = 4, p_layers = 1, p_width = 8;
  double p_gamma = 1.0;
  std::string p_act = "wasserstein", p_out;
  std::uint64_t p_seed = 0;
  CircuitOptions p_circuit;
  SampleSpec p_spec;
  profile->add_option("--n", p_n, "input bits / generator qubits");
  profile->add_option("--layers", p_layers, "hidden layers");
  profile->add_option("--width", p_width, "hidden width");
  profile->add_option("--gamma", p_gamma, "leaky-ReLU slope");
  profile->add_option("--activation", p_act, "wasserstein | minmax");
  profile->add_option("--seed", p_seed, "discriminator draw seed");
  p_circuit.attach(profile, /*with_n=*/false);
  profile->add_option("--samples", p_spec.n_samples, "estimator assignments");
  profile->add_option("--est-seed", p_spec.seed, "estimator seed");
  profile->add_option("--out", p_out, "output CSV");

  // counterexamples
  auto* counter = app.add_subcommand("counterexamples", "run the five pathology fixtures");
  std::uint64_t c_seed = 0;
  counter->add_option("--seed", c_seed, "RNG seed");

  // build
  auto* build = app.add_subcommand("build", "emit a circuit JSON file");
  CircuitOptions b_circuit;
  std::string b_out, b_fixture;
  b_circuit.attach(build);
  build->add_option("--fixture", b_fixture, "emit a named fixture circuit");
  build->add_option("--out", b_out, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*analyze) return cmd_analyze(a_circuit, a_obs, a_state, a_spec, a_out, a_format);
    if (*sweep) {
      if (s_axes.size() == 2)
        s_config.axes = RotationAxes{pauli_from_char(s_axes[0]), pauli_from_char(s_axes[1])};
      if (s_grad >= 0) s_config.gradient_param = static_cast<std::size_t>(s_grad);
      return cmd_sweep(s_config, s_nlist, s_spec, s_out, s_format);
    }
    if (*oracle) return cmd_oracle(o_circuit, o_obs, o_state, o_opts, o_reduction, o_out);
    if (*bound)
      return cmd_qgan_bound(q_n, q_layers, q_width, q_gamma, q_act, q_law, q_sigma_out_sq,
                            q_draws, q_seed, q_target, q_threads, q_spec_file, q_out);
    if (*profile)
      return cmd_qgan_profile(p_n, p_layers, p_width, p_gamma, p_act, p_seed, p_circuit, p_spec,
                              p_out);
    if (*counter) return cmd_counterexamples(c_seed);
    if (*build) return cmd_build(b_circuit, b_fixture, b_out);
  } catch (const ClassValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  } catch (const CapExceeded& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitCap;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
