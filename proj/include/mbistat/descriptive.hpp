#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace mbistat::descriptive {

// An ordered collection of finite real observations with a short label.
// NaN and infinities are rejected at construction.
class Sample {
public:
  Sample() = default;
  Sample(std::vector<double> values, std::string label);

  const std::vector<double>& values() const { return values_; }
  const std::string& label() const { return label_; }
  std::size_t size() const { return values_.size(); }

private:
  std::vector<double> values_;
  std::string label_;
};

struct SampleSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation, n-1 denominator
  double sem = 0.0; // sd / sqrt(n)
};

// Mean and n-1 standard deviation via Welford accumulation.
// Throws degenerate_data_error for n < 2.
SampleSummary summarize(const Sample& s);

// Element-wise natural log; label annotated with "(log)". Throws
// degenerate_data_error naming the first offending index if any value
// is <= 0.
Sample log_transform(const Sample& s);

// 100 * (exp(x) - 1) applied to a log-scale effect and its CI bounds.
struct PercentTriple {
  double value = 0.0;
  double low = 0.0;
  double high = 0.0;
};
PercentTriple back_transform_pct(double log_effect, double log_ci_low,
                                 double log_ci_high);

// Scalar helpers shared by the analysis and rendering layers.
double mean_of(const std::vector<double>& xs);
double sample_sd(const std::vector<double>& xs); // n-1 denominator, n >= 2

} // namespace mbistat::descriptive
