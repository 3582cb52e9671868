#include "mbistat/simulate.hpp"

#include "mbistat/errors.hpp"
#include "mbistat/rng.hpp"
#include "mbistat/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace mbistat::simulate {

void DanceConfig::validate() const {
  if (n_experiments < 1)
    throw std::domain_error("n_experiments must be at least 1");
  if (n_per_group < 2)
    throw std::domain_error("n_per_group must be at least 2");
  if (!(sigma > 0.0)) throw std::domain_error("sigma must be positive");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("alpha must be in (0,1)");
  if (!(ci_level > 0.5 && ci_level < 1.0))
    throw std::domain_error("ci_level must be in (0.5, 1)");
  if (!std::isfinite(delta_mu))
    throw std::domain_error("delta_mu must be finite");
}

std::string sig_category(double p) {
  if (p < 0.001) return "***";
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  if (p < 0.10) return "?";
  return "ns";
}

DanceRecord run_experiment(const DanceConfig& cfg, std::size_t index) {
  rng::NormalSampler normals(rng::substream(cfg.seed, index));

  std::vector<double> a(cfg.n_per_group), b(cfg.n_per_group);
  for (double& x : a) x = cfg.sigma * normals.next();
  for (double& x : b) x = cfg.delta_mu + cfg.sigma * normals.next();

  effects::ComparisonConfig ccfg;
  ccfg.ci_level = cfg.ci_level;
  ccfg.variance_model = cfg.variance_model;
  const effects::ComparisonResult cmp = effects::compare_independent(
      effects::Sample(std::move(a), "a"), effects::Sample(std::move(b), "b"),
      ccfg);

  DanceRecord rec;
  rec.index = index;
  rec.diff = cmp.diff;
  rec.ci_low = cmp.ci_low;
  rec.ci_high = cmp.ci_high;
  rec.p_value = cmp.p_value;
  rec.sig_category = sig_category(cmp.p_value);
  return rec;
}

namespace {

// Summary reduction over the index-ordered records; Neumaier-compensated
// mean so the result does not depend on how the records were produced.
DanceSummary summarize(const std::vector<DanceRecord>& records,
                       const DanceConfig& cfg) {
  DanceSummary s;
  double sum = 0.0, comp = 0.0;
  for (const DanceRecord& r : records) {
    if (r.p_value < cfg.alpha) ++s.count_significant;
    if (r.ci_low <= cfg.delta_mu && cfg.delta_mu <= r.ci_high)
      ++s.ci_capture_count;
    const double t = sum + r.diff;
    if (std::fabs(sum) >= std::fabs(r.diff))
      comp += (sum - t) + r.diff;
    else
      comp += (r.diff - t) + sum;
    sum = t;
  }
  s.mean_diff_of_diffs =
      (sum + comp) / static_cast<double>(records.size());
  return s;
}

} // namespace

DanceResult run_dance(const DanceConfig& cfg) {
  cfg.validate();
  DanceResult out;
  out.records.resize(cfg.n_experiments);
  const std::int64_t n = static_cast<std::int64_t>(cfg.n_experiments);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i)
    out.records[static_cast<std::size_t>(i)] =
        run_experiment(cfg, static_cast<std::size_t>(i));
  out.summary = summarize(out.records, cfg);
  return out;
}

DanceResult run_dance_serial(const DanceConfig& cfg) {
  cfg.validate();
  DanceResult out;
  out.records.reserve(cfg.n_experiments);
  for (std::size_t i = 0; i < cfg.n_experiments; ++i)
    out.records.push_back(run_experiment(cfg, i));
  out.summary = summarize(out.records, cfg);
  return out;
}

double theoretical_power(double d, std::size_t n_per_group, double alpha) {
  if (n_per_group < 2)
    throw std::domain_error("theoretical_power requires n_per_group >= 2");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("alpha must be in (0,1)");
  const double n = static_cast<double>(n_per_group);
  const double ncp = d * std::sqrt(n / 2.0);
  const double t_crit = specfun::t_quantile(1.0 - alpha / 2.0, 2.0 * n - 2.0);
  return (1.0 - specfun::norm_cdf(t_crit - ncp)) +
         specfun::norm_cdf(-t_crit - ncp);
}

double false_discovery_rate(double prior_real_effect, double alpha,
                            double power) {
  if (!(prior_real_effect > 0.0 && prior_real_effect <= 1.0))
    throw std::domain_error("prior_real_effect must be in (0,1]");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("alpha must be in (0,1)");
  if (!(power > 0.0 && power <= 1.0))
    throw std::domain_error("power must be in (0,1]");
  const double false_pos = alpha * (1.0 - prior_real_effect);
  const double true_pos = power * prior_real_effect;
  return false_pos / (false_pos + true_pos);
}

} // namespace mbistat::simulate
