#pragma once

#include <string>
#include <vector>

#include "plateau/estimator.hpp"
#include "plateau/oracle.hpp"
#include "plateau/qgan.hpp"

namespace plateau {

// Every emitted file carries the tool version, the fully resolved run
// configuration (as compact JSON) and the seed; re-running that
// configuration reproduces the file byte for byte. CSV files carry them as
// leading '#' comment lines, JSON files as top-level fields.

// Columns: n, alpha_label, coeff, n_samples, exact, lower, lower_ci_lo,
// lower_ci_hi, variance, var_ci_lo, var_ci_hi, upper, upper_ci_lo,
// upper_ci_hi, omega. Per-term rows first, then one "total" aggregate row.
std::string observable_report_csv(const ObservableReport& report, std::size_t n,
                                  const std::string& config_json);
std::string observable_report_json(const ObservableReport& report, std::size_t n,
                                   const std::string& config_json);

// Columns: n, lower, variance, upper.
std::string sweep_csv(const std::vector<SweepRow>& rows, const std::string& config_json);
std::string sweep_json(const std::vector<SweepRow>& rows, const std::string& config_json);

std::string moment_report_json(const MomentReport& report, const std::string& config_json);

// Columns: n, L, widths, gamma, sigma_out_sq, bound, empirical, stderr, pass.
std::string weight_bound_csv(const std::vector<std::pair<DiscriminatorSpec, WeightBoundCheck>>& rows,
                             const std::string& config_json);

std::string locality_profile_csv(const std::vector<LocalityGroup>& profile,
                                 const std::string& config_json);

std::string format_full(double v);  // round-trip double formatting

void write_text_file(const std::string& path, const std::string& content);

}  // namespace plateau
