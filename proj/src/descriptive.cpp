#include "mbistat/descriptive.hpp"

#include "mbistat/errors.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace mbistat::descriptive {

Sample::Sample(std::vector<double> values, std::string label)
    : values_(std::move(values)), label_(std::move(label)) {
  if (values_.empty())
    throw degenerate_data_error("sample \"" + label_ + "\" is empty");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      std::ostringstream msg;
      msg << "sample \"" << label_ << "\" has a non-finite value at index " << i;
      throw degenerate_data_error(msg.str());
    }
  }
}

SampleSummary summarize(const Sample& s) {
  const auto& xs = s.values();
  if (xs.size() < 2) {
    std::ostringstream msg;
    msg << "sample \"" << s.label() << "\" needs at least 2 observations, got "
        << xs.size();
    throw degenerate_data_error(msg.str());
  }
  // Welford: immune to cancellation when the mean dwarfs the spread.
  double mean = 0.0, m2 = 0.0;
  std::size_t n = 0;
  for (double x : xs) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }
  SampleSummary out;
  out.n = n;
  out.mean = mean;
  out.sd = std::sqrt(std::max(0.0, m2 / static_cast<double>(n - 1)));
  out.sem = out.sd / std::sqrt(static_cast<double>(n));
  return out;
}

Sample log_transform(const Sample& s) {
  std::vector<double> logged;
  logged.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double x = s.values()[i];
    if (!(x > 0.0)) {
      std::ostringstream msg;
      msg << "log transform undefined: sample \"" << s.label()
          << "\" has nonpositive value " << x << " at index " << i;
      throw degenerate_data_error(msg.str());
    }
    logged.push_back(std::log(x));
  }
  return Sample(std::move(logged), s.label() + " (log)");
}

PercentTriple back_transform_pct(double log_effect, double log_ci_low,
                                 double log_ci_high) {
  auto pct = [](double x) { return 100.0 * std::expm1(x); };
  return PercentTriple{pct(log_effect), pct(log_ci_low), pct(log_ci_high)};
}

double mean_of(const std::vector<double>& xs) {
  double mean = 0.0;
  std::size_t n = 0;
  for (double x : xs) {
    ++n;
    mean += (x - mean) / static_cast<double>(n);
  }
  return mean;
}

double sample_sd(const std::vector<double>& xs) {
  double mean = 0.0, m2 = 0.0;
  std::size_t n = 0;
  for (double x : xs) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }
  return std::sqrt(std::max(0.0, m2 / static_cast<double>(n - 1)));
}

} // namespace mbistat::descriptive
