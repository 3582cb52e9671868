#pragma once

#include "mbistat/descriptive.hpp"

#include <optional>
#include <string>

namespace mbistat::effects {

using descriptive::Sample;
using descriptive::SampleSummary;

enum class VarianceModel { welch, pooled };

enum class PairedStandardizer { baseline_sd, diff_sd };

struct ComparisonConfig {
  double ci_level = 0.90;                // must satisfy 0.5 < ci_level < 1
  VarianceModel variance_model = VarianceModel::welch;
  bool use_log_scale = false;
  PairedStandardizer paired_standardizer = PairedStandardizer::baseline_sd;
};

// The reporting quartet for one comparison: mean difference with CI,
// p-value, optional percent difference, standardized effect size with CI.
struct ComparisonResult {
  double diff = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double se = 0.0; // standard error of diff
  double p_value = 1.0;
  double df = 0.0;
  double effect_size = 0.0;
  double es_ci_low = 0.0;
  double es_ci_high = 0.0;
  double es_se = 0.0;       // standard error of the standardized effect
  double standardizer = 0.0; // divisor that produced effect_size, in units
  std::optional<double> pct_diff;
  std::optional<double> pct_ci_low;
  std::optional<double> pct_ci_high;
  SampleSummary group_a; // group 1 / pre
  SampleSummary group_b; // group 2 / post
  std::string standardizer_name; // e.g. "pooled sd", "baseline sd"
  std::string variance_model_name;
};

struct EffectSizeResult {
  double d = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double se = 0.0;
  double pooled_sd = 0.0;
};

// Two independent groups; diff = mean(b) - mean(a). Welch or pooled
// standard error per cfg. When use_log_scale is set the analysis runs on log
// data and the percent fields are populated.
ComparisonResult compare_independent(const Sample& a, const Sample& b,
                                     const ComparisonConfig& cfg = {});

// Positionally paired pre/post; analysis of element-wise differences,
// df = n - 1. Effect size standardized by sd(pre) unless cfg selects the
// sd of differences.
ComparisonResult compare_paired(const Sample& pre, const Sample& post,
                                const ComparisonConfig& cfg = {});

// Cohen's d with a normal-approximation CI:
//   d = (mean(b) - mean(a)) / pooled_sd
//   se_d = sqrt((n1+n2)/(n1*n2) + d^2/(2*(n1+n2)))
EffectSizeResult cohens_d(const Sample& a, const Sample& b,
                          double ci_level = 0.90);

} // namespace mbistat::effects
