#include "plateau/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "plateau/version.hpp"

namespace plateau {

using nlohmann::json;

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string csv_header(const std::string& config_json) {
  std::string out;
  out += std::string("# version=") + kVersion + "\n";
  out += "# config=" + config_json + "\n";
  return out;
}

json interval_json(const Interval& iv) {
  return json{{"estimate", iv.estimate}, {"ci_lo", iv.lo}, {"ci_hi", iv.hi}};
}

void append_bound_row(std::string& out, std::size_t n, const std::string& label, double coeff,
                      bool has_coeff, const BoundReport& r) {
  out += std::to_string(n) + "," + label + ",";
  out += has_coeff ? format_full(coeff) : std::string();
  out += "," + std::to_string(r.n_samples) + "," + (r.exact ? "1" : "0");
  for (const Interval* iv : {&r.lower, &r.variance, &r.upper})
    out += "," + format_full(iv->estimate) + "," + format_full(iv->lo) + "," + format_full(iv->hi);
  out += "," + format_full(r.omega) + "\n";
}

json bound_report_json(const BoundReport& r) {
  json hist = json::object();
  for (const auto& [cone, count] : r.cone_histogram) hist[std::to_string(cone)] = count;
  return json{{"lower", interval_json(r.lower)},
              {"variance", interval_json(r.variance)},
              {"upper", interval_json(r.upper)},
              {"omega", r.omega},
              {"cone_histogram", hist},
              {"n_samples", r.n_samples},
              {"exact", r.exact}};
}

}  // namespace

std::string observable_report_csv(const ObservableReport& report, std::size_t n,
                                  const std::string& config_json) {
  std::string out = csv_header(config_json);
  out += "n,alpha_label,coeff,n_samples,exact,lower,lower_ci_lo,lower_ci_hi,variance,var_ci_lo,"
         "var_ci_hi,upper,upper_ci_lo,upper_ci_hi,omega\n";
  for (const auto& t : report.terms)
    append_bound_row(out, n, t.pauli.label(), t.coeff, true, t.report);
  BoundReport agg;
  agg.lower = report.lower;
  agg.variance = report.variance;
  agg.upper = report.upper;
  agg.omega = report.omega;
  agg.n_samples = report.n_samples;
  agg.exact = report.exact;
  append_bound_row(out, n, "total", 0.0, false, agg);
  return out;
}

std::string observable_report_json(const ObservableReport& report, std::size_t n,
                                   const std::string& config_json) {
  json terms = json::array();
  for (const auto& t : report.terms) {
    json jt = bound_report_json(t.report);
    jt["alpha_label"] = t.pauli.label();
    jt["coeff"] = t.coeff;
    jt["n"] = n;
    terms.push_back(std::move(jt));
  }
  json j;
  j["version"] = kVersion;
  j["config"] = json::parse(config_json);
  j["n"] = n;
  j["terms"] = std::move(terms);
  j["total"] = json{{"lower", interval_json(report.lower)},
                    {"variance", interval_json(report.variance)},
                    {"upper", interval_json(report.upper)},
                    {"omega", report.omega},
                    {"n_samples", report.n_samples},
                    {"exact", report.exact}};
  return j.dump(2) + "\n";
}

std::string sweep_csv(const std::vector<SweepRow>& rows, const std::string& config_json) {
  std::string out = csv_header(config_json);
  out += "n,lower,variance,upper\n";
  for (const auto& r : rows)
    out += std::to_string(r.n) + "," + format_full(r.lower.estimate) + "," +
           format_full(r.variance.estimate) + "," + format_full(r.upper.estimate) + "\n";
  return out;
}

std::string sweep_json(const std::vector<SweepRow>& rows, const std::string& config_json) {
  json arr = json::array();
  for (const auto& r : rows)
    arr.push_back(json{{"n", r.n},
                       {"depth", r.depth},
                       {"lower", interval_json(r.lower)},
                       {"variance", interval_json(r.variance)},
                       {"upper", interval_json(r.upper)}});
  json j;
  j["version"] = kVersion;
  j["config"] = json::parse(config_json);
  j["rows"] = std::move(arr);
  return j.dump(2) + "\n";
}

std::string moment_report_json(const MomentReport& report, const std::string& config_json) {
  json terms = json::array();
  for (const auto& t : report.terms) {
    double z = t.mean_se > 0.0 ? t.mean / t.mean_se : 0.0;
    terms.push_back(json{{"label", t.label},
                         {"coeff", t.coeff},
                         {"mean", t.mean},
                         {"mean_se", t.mean_se},
                         {"mean_z", z},
                         {"second_moment", t.second_moment},
                         {"second_moment_se", t.second_moment_se}});
  }
  json pairs = json::array();
  for (const auto& p : report.pairs) {
    double z = p.product_se > 0.0 ? p.product_mean / p.product_se : 0.0;
    pairs.push_back(json{{"label_a", p.label_a},
                         {"label_b", p.label_b},
                         {"product_mean", p.product_mean},
                         {"product_se", p.product_se},
                         {"product_z", z}});
  }
  json grads = json::array();
  for (const auto& g : report.gradients)
    grads.push_back(json{{"param_index", g.param_index},
                         {"variance", g.variance},
                         {"variance_se", g.variance_se}});
  double gap_z =
      report.independence_gap_se > 0.0 ? report.independence_gap / report.independence_gap_se : 0.0;
  json j;
  j["version"] = kVersion;
  j["config"] = json::parse(config_json);
  j["n_samples"] = report.n_samples;
  j["range_scale"] = report.range_scale;
  j["seed"] = report.seed;
  j["terms"] = std::move(terms);
  j["pairs"] = std::move(pairs);
  j["loss_mean"] = report.loss_mean;
  j["loss_mean_se"] = report.loss_mean_se;
  j["loss_variance"] = report.loss_variance;
  j["loss_variance_se"] = report.loss_variance_se;
  j["weighted_term_variance"] = report.weighted_term_variance;
  j["independence_gap"] = report.independence_gap;
  j["independence_gap_se"] = report.independence_gap_se;
  j["independence_gap_z"] = gap_z;
  j["gradients"] = std::move(grads);
  return j.dump(2) + "\n";
}

std::string weight_bound_csv(
    const std::vector<std::pair<DiscriminatorSpec, WeightBoundCheck>>& rows,
    const std::string& config_json) {
  std::string out = csv_header(config_json);
  out += "n,L,widths,gamma,sigma_out_sq,bound,empirical,stderr,pass\n";
  for (const auto& [spec, check] : rows) {
    std::string widths;
    for (std::size_t i = 0; i < spec.widths.size(); ++i) {
      if (i) widths += "|";
      widths += std::to_string(spec.widths[i]);
    }
    double gamma = spec.slopes.empty() ? 1.0 : spec.slopes.front();
    double sig_out = spec.sigmas.back() * spec.sigmas.back();
    out += std::to_string(spec.n) + "," + std::to_string(spec.hidden_layers()) + "," + widths +
           "," + format_full(gamma) + "," + format_full(sig_out) + "," +
           format_full(check.bound) + "," + format_full(check.empirical) + "," +
           format_full(check.std_error) + "," + (check.pass ? "1" : "0") + "\n";
  }
  return out;
}

std::string locality_profile_csv(const std::vector<LocalityGroup>& profile,
                                 const std::string& config_json) {
  std::string out = csv_header(config_json);
  out += "k,term_count,sum_coeff_sq,contribution,contribution_ci_lo,contribution_ci_hi\n";
  for (const auto& g : profile)
    out += std::to_string(g.weight) + "," + std::to_string(g.term_count) + "," +
           format_full(g.sum_coeff_sq) + "," + format_full(g.contribution.estimate) + "," +
           format_full(g.contribution.lo) + "," + format_full(g.contribution.hi) + "\n";
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
}

}  // namespace plateau
