#include "mbistat/specfun.hpp"

#include "mbistat/errors.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mbistat::specfun {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfLog2Pi = 0.91893853320467274178; // ln(2*pi)/2

// Lanczos g=7, n=9 coefficient set (Godfrey).
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

double ln_gamma_lanczos(double x) {
  // Valid for x >= 0.5; callers reflect below that.
  double acc = kLanczos[0];
  for (int i = 1; i < 9; ++i)
    acc += kLanczos[i] / (x - 1.0 + i);
  double t = x + 6.5;
  return kHalfLog2Pi + (x - 0.5) * std::log(t) - t + std::log(acc);
}

// Continued fraction for I_x(a,b), modified Lentz. Convergence tolerance
// 1e-15, at most 300 iterations (two fraction terms per iteration, as in
// the standard formulation). Non-convergence is reported, never masked.
double beta_cf(double a, double b, double x) {
  constexpr double kTiny = 1e-30;
  constexpr double kEps = 1e-15;
  constexpr int kMaxIter = 300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;

  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;

  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  std::ostringstream msg;
  msg << "incomplete beta continued fraction did not converge: a=" << a
      << " b=" << b << " x=" << x;
  throw numeric_error(msg.str());
}

} // namespace

double ln_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("ln_gamma requires x > 0");
  if (x < 0.5) {
    // Reflection: Gamma(x) * Gamma(1-x) = pi / sin(pi x)
    return std::log(kPi / std::sin(kPi * x)) - ln_gamma_lanczos(1.0 - x);
  }
  return ln_gamma_lanczos(x);
}

double reg_inc_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::domain_error("reg_inc_beta requires a > 0 and b > 0");
  if (!(x >= 0.0 && x <= 1.0))
    throw std::domain_error("reg_inc_beta requires x in [0,1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;

  const double ln_front = ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0))
    return front * beta_cf(a, b, x) / a;
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double t_cdf(double t, double df) {
  if (!(df > 0.0)) throw std::domain_error("t_cdf requires df > 0");
  if (t == 0.0) return 0.5;
  const double x = df / (df + t * t);
  const double tail = 0.5 * reg_inc_beta(0.5 * df, 0.5, x);
  return t > 0.0 ? 1.0 - tail : tail;
}

double t_pdf(double t, double df) {
  if (!(df > 0.0)) throw std::domain_error("t_pdf requires df > 0");
  const double half = 0.5 * (df + 1.0);
  const double ln_norm =
      ln_gamma(half) - ln_gamma(0.5 * df) - 0.5 * std::log(df * kPi);
  return std::exp(ln_norm - half * std::log1p(t * t / df));
}

double t_quantile(double p, double df) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("t_quantile requires p in (0,1)");
  if (!(df > 0.0)) throw std::domain_error("t_quantile requires df > 0");
  if (p == 0.5) return 0.0;

  // Bracket the root, doubling outward. df=1 is Cauchy, so extreme p can
  // push the quantile far out; the cap is generous.
  double lo = -1.0, hi = 1.0;
  while (t_cdf(lo, df) > p) {
    lo *= 2.0;
    if (lo < -1e12) throw numeric_error("t_quantile bracket failed (low)");
  }
  while (t_cdf(hi, df) < p) {
    hi *= 2.0;
    if (hi > 1e12) throw numeric_error("t_quantile bracket failed (high)");
  }

  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double err = t_cdf(x, df) - p;
    if (std::fabs(err) <= 1e-14) return x;
    if (err > 0.0) hi = x; else lo = x;
    const double dens = t_pdf(x, df);
    double next = x - err / dens;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi); // Newton left the bracket
    if (next == x) return x; // converged to machine resolution
    x = next;
  }
  const double residual = std::fabs(t_cdf(x, df) - p);
  if (residual <= 1e-10) return x;
  throw numeric_error("t_quantile did not converge");
}

double norm_cdf(double z) {
  return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

double norm_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * kPi);
}

double norm_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("norm_quantile requires p in (0,1)");

  // Acklam's rational initial estimate, then Newton polish against norm_cdf.
  static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                              -2.759285104469687e+02, 1.383577518672690e+02,
                              -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                              -1.556989798598866e+02, 6.680131188771972e+01,
                              -1.328068155288572e+01};
  static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                              -2.400758277161838e+00, -2.549732539343734e+00,
                              4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;

  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  for (int i = 0; i < 2; ++i) {
    const double dens = norm_pdf(x);
    if (dens <= 0.0) break; // far tail: estimate already at double's limit
    x -= (norm_cdf(x) - p) / dens;
  }
  return x;
}

} // namespace mbistat::specfun
