#include "oracles.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracles {

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(const std::function<double(double)>& f, double a, double fa,
                double b, double fb, double fm, double whole, double tol,
                int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1) +
         adaptive(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1);
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = simpson(a, fa, b, fb, fm);
  return adaptive(f, a, fa, b, fb, fm, whole, tol, 60);
}

double t_density(double t, double df) {
  const double half = 0.5 * (df + 1.0);
  const double ln_norm = std::lgamma(half) - std::lgamma(0.5 * df) -
                         0.5 * std::log(df * 3.14159265358979323846);
  return std::exp(ln_norm - half * std::log1p(t * t / df));
}

double t_cdf_quadrature(double t, double df) {
  if (t == 0.0) return 0.5;
  const double mass =
      integrate([df](double u) { return t_density(u, df); }, 0.0,
                std::fabs(t), 1e-13);
  return t > 0.0 ? 0.5 + mass : 0.5 - mass;
}

double reg_inc_beta_quadrature(double a, double b, double x) {
  if (!(a >= 1.0 && b >= 1.0))
    throw std::invalid_argument("quadrature oracle needs a, b >= 1");
  const double ln_beta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  const auto density = [&](double u) {
    if (u <= 0.0 || u >= 1.0) return 0.0;
    return std::exp((a - 1.0) * std::log(u) + (b - 1.0) * std::log1p(-u) -
                    ln_beta);
  };
  return integrate(density, 0.0, x, 1e-13);
}

double norm_cdf_ref(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double norm_quantile_bisect(double p) {
  double lo = -40.0, hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (norm_cdf_ref(mid) < p) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double mc_power(double d, std::size_t n_per_group, double t_crit,
                std::size_t replicates, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double n = static_cast<double>(n_per_group);
  std::size_t rejections = 0;
  for (std::size_t rep = 0; rep < replicates; ++rep) {
    double sum_a = 0.0, sumsq_a = 0.0, sum_b = 0.0, sumsq_b = 0.0;
    for (std::size_t i = 0; i < n_per_group; ++i) {
      const double a = normal(gen);
      const double b = normal(gen) + d;
      sum_a += a;
      sumsq_a += a * a;
      sum_b += b;
      sumsq_b += b * b;
    }
    const double mean_a = sum_a / n;
    const double mean_b = sum_b / n;
    const double ss_a = sumsq_a - n * mean_a * mean_a;
    const double ss_b = sumsq_b - n * mean_b * mean_b;
    const double sp2 = (ss_a + ss_b) / (2.0 * n - 2.0);
    const double se = std::sqrt(sp2 * 2.0 / n);
    const double t = (mean_b - mean_a) / se;
    if (std::fabs(t) > t_crit) ++rejections;
  }
  return static_cast<double>(rejections) / static_cast<double>(replicates);
}

BinomialBand binomial_band(long n, double p, double coverage) {
  // pmf recurrence; central interval from both tails.
  std::vector<double> pmf(static_cast<std::size_t>(n) + 1);
  pmf[0] = std::pow(1.0 - p, static_cast<double>(n));
  for (long k = 1; k <= n; ++k)
    pmf[static_cast<std::size_t>(k)] = pmf[static_cast<std::size_t>(k - 1)] *
                                       (static_cast<double>(n - k + 1) /
                                        static_cast<double>(k)) *
                                       (p / (1.0 - p));
  const double tail = 0.5 * (1.0 - coverage);
  long lo = 0;
  double acc = 0.0;
  while (lo < n && acc + pmf[static_cast<std::size_t>(lo)] <= tail)
    acc += pmf[static_cast<std::size_t>(lo++)];
  long hi = n;
  acc = 0.0;
  while (hi > 0 && acc + pmf[static_cast<std::size_t>(hi)] <= tail)
    acc += pmf[static_cast<std::size_t>(hi--)];
  return {lo, hi};
}

} // namespace oracles
