#include "mbistat/effects.hpp"

#include "mbistat/errors.hpp"
#include "mbistat/specfun.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace mbistat::effects {

namespace {

void check_ci_level(double ci_level) {
  if (!(ci_level > 0.5 && ci_level < 1.0))
    throw std::domain_error("ci_level must be in (0.5, 1)");
}

// Two-sided p from a t statistic; t = 0 must give exactly 1.
double two_tailed_p(double t, double df) {
  if (t == 0.0) return 1.0;
  if (std::isinf(t)) return 0.0;
  return 2.0 * (1.0 - specfun::t_cdf(std::fabs(t), df));
}

struct RawComparison {
  double diff, se, df;
  SampleSummary sa, sb;
};

RawComparison independent_raw(const Sample& a, const Sample& b,
                              VarianceModel model) {
  RawComparison r;
  r.sa = descriptive::summarize(a);
  r.sb = descriptive::summarize(b);
  r.diff = r.sb.mean - r.sa.mean;
  const double n1 = static_cast<double>(r.sa.n);
  const double n2 = static_cast<double>(r.sb.n);
  const double v1 = r.sa.sd * r.sa.sd;
  const double v2 = r.sb.sd * r.sb.sd;
  if (model == VarianceModel::pooled) {
    const double sp2 = ((n1 - 1.0) * v1 + (n2 - 1.0) * v2) / (n1 + n2 - 2.0);
    r.se = std::sqrt(sp2 * (1.0 / n1 + 1.0 / n2));
    r.df = n1 + n2 - 2.0;
  } else {
    const double q1 = v1 / n1;
    const double q2 = v2 / n2;
    r.se = std::sqrt(q1 + q2);
    if (q1 + q2 == 0.0) {
      r.df = n1 + n2 - 2.0; // degenerate; df is moot once se = 0
    } else {
      r.df = (q1 + q2) * (q1 + q2) /
             (q1 * q1 / (n1 - 1.0) + q2 * q2 / (n2 - 1.0));
    }
  }
  return r;
}

} // namespace

EffectSizeResult cohens_d(const Sample& a, const Sample& b, double ci_level) {
  check_ci_level(ci_level);
  const SampleSummary sa = descriptive::summarize(a);
  const SampleSummary sb = descriptive::summarize(b);
  const double n1 = static_cast<double>(sa.n);
  const double n2 = static_cast<double>(sb.n);
  const double pooled_sd = std::sqrt(((n1 - 1.0) * sa.sd * sa.sd +
                                      (n2 - 1.0) * sb.sd * sb.sd) /
                                     (n1 + n2 - 2.0));
  const double diff = sb.mean - sa.mean;

  EffectSizeResult out;
  out.pooled_sd = pooled_sd;
  if (pooled_sd == 0.0) {
    if (diff != 0.0)
      throw degenerate_data_error(
          "zero pooled sd with nonzero mean difference: effect size is infinite");
    // Identical constant groups: d = 0 with a zero-width interval.
    return out;
  }
  out.d = diff / pooled_sd;
  out.se = std::sqrt((n1 + n2) / (n1 * n2) + out.d * out.d / (2.0 * (n1 + n2)));
  const double z = specfun::norm_quantile(0.5 * (1.0 + ci_level));
  out.ci_low = out.d - z * out.se;
  out.ci_high = out.d + z * out.se;
  return out;
}

ComparisonResult compare_independent(const Sample& a, const Sample& b,
                                     const ComparisonConfig& cfg) {
  check_ci_level(cfg.ci_level);
  const Sample* pa = &a;
  const Sample* pb = &b;
  Sample la, lb;
  if (cfg.use_log_scale) {
    la = descriptive::log_transform(a);
    lb = descriptive::log_transform(b);
    pa = &la;
    pb = &lb;
  }

  const RawComparison raw = independent_raw(*pa, *pb, cfg.variance_model);
  if (raw.se == 0.0 && raw.diff != 0.0)
    throw degenerate_data_error(
        "zero pooled variance with nonzero mean difference between \"" +
        a.label() + "\" and \"" + b.label() + "\"");

  ComparisonResult out;
  out.diff = raw.diff;
  out.se = raw.se;
  out.df = raw.df;
  // Group summaries stay on the measurement scale even when the analysis
  // runs on logs; the percent fields carry the interpretable effect.
  out.group_a = cfg.use_log_scale ? descriptive::summarize(a) : raw.sa;
  out.group_b = cfg.use_log_scale ? descriptive::summarize(b) : raw.sb;
  out.variance_model_name =
      cfg.variance_model == VarianceModel::welch ? "welch" : "pooled";

  const double tq = specfun::t_quantile(0.5 * (1.0 + cfg.ci_level), raw.df);
  out.ci_low = raw.diff - tq * raw.se;
  out.ci_high = raw.diff + tq * raw.se;
  out.p_value = raw.se == 0.0 ? 1.0 : two_tailed_p(raw.diff / raw.se, raw.df);

  const EffectSizeResult es = cohens_d(*pa, *pb, cfg.ci_level);
  out.effect_size = es.d;
  out.es_ci_low = es.ci_low;
  out.es_ci_high = es.ci_high;
  out.es_se = es.se;
  out.standardizer = es.pooled_sd;
  out.standardizer_name = "pooled sd";

  if (cfg.use_log_scale) {
    const auto pct =
        descriptive::back_transform_pct(out.diff, out.ci_low, out.ci_high);
    out.pct_diff = pct.value;
    out.pct_ci_low = pct.low;
    out.pct_ci_high = pct.high;
  }
  return out;
}

ComparisonResult compare_paired(const Sample& pre, const Sample& post,
                                const ComparisonConfig& cfg) {
  check_ci_level(cfg.ci_level);
  if (pre.size() != post.size()) {
    std::ostringstream msg;
    msg << "paired samples differ in length: " << pre.size() << " vs "
        << post.size();
    throw degenerate_data_error(msg.str());
  }

  const Sample* ppre = &pre;
  const Sample* ppost = &post;
  Sample lpre, lpost;
  if (cfg.use_log_scale) {
    lpre = descriptive::log_transform(pre);
    lpost = descriptive::log_transform(post);
    ppre = &lpre;
    ppost = &lpost;
  }

  std::vector<double> diffs(ppre->size());
  for (std::size_t i = 0; i < diffs.size(); ++i)
    diffs[i] = ppost->values()[i] - ppre->values()[i];
  const SampleSummary sd_summary = descriptive::summarize(
      Sample(diffs, "paired differences"));

  ComparisonResult out;
  // Measurement-scale summaries for display; the standardizer below stays
  // on the analysis scale.
  out.group_a = descriptive::summarize(pre);
  out.group_b = descriptive::summarize(post);
  out.diff = sd_summary.mean;
  out.se = sd_summary.sem;
  out.df = static_cast<double>(sd_summary.n) - 1.0;
  out.variance_model_name = "paired";

  const double tq = specfun::t_quantile(0.5 * (1.0 + cfg.ci_level), out.df);
  out.ci_low = out.diff - tq * out.se;
  out.ci_high = out.diff + tq * out.se;
  // Constant differences give se = 0; the limit values apply (a point CI,
  // p of 0 or 1) rather than an error.
  out.p_value = out.se == 0.0 ? (out.diff == 0.0 ? 1.0 : 0.0)
                              : two_tailed_p(out.diff / out.se, out.df);

  if (cfg.paired_standardizer == PairedStandardizer::baseline_sd) {
    out.standardizer = descriptive::summarize(*ppre).sd;
    out.standardizer_name = "baseline sd";
  } else {
    out.standardizer = sd_summary.sd;
    out.standardizer_name = "diff sd";
  }
  if (out.standardizer == 0.0) {
    if (out.diff == 0.0) {
      out.effect_size = out.es_ci_low = out.es_ci_high = 0.0;
    } else {
      const double inf = std::numeric_limits<double>::infinity();
      const double sign = out.diff > 0.0 ? 1.0 : -1.0;
      out.effect_size = out.es_ci_low = out.es_ci_high = sign * inf;
    }
    out.es_se = 0.0;
  } else {
    out.effect_size = out.diff / out.standardizer;
    out.es_ci_low = out.ci_low / out.standardizer;
    out.es_ci_high = out.ci_high / out.standardizer;
    out.es_se = out.se / out.standardizer;
  }

  if (cfg.use_log_scale) {
    const auto pct =
        descriptive::back_transform_pct(out.diff, out.ci_low, out.ci_high);
    out.pct_diff = pct.value;
    out.pct_ci_low = pct.low;
    out.pct_ci_high = pct.high;
  }
  return out;
}

} // namespace mbistat::effects
