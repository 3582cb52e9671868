#include "mbistat/simulate.hpp"

#include "mbistat/errors.hpp"
#include "mbistat/rng.hpp"
#include "oracles.hpp"

#include <doctest.h>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cmath>
#include <set>

using namespace mbistat;
using simulate::DanceConfig;
using simulate::DanceResult;

namespace {

bool records_identical(const DanceResult& a, const DanceResult& b) {
  if (a.records.size() != b.records.size()) return false;
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    const auto& x = a.records[i];
    const auto& y = b.records[i];
    if (x.index != y.index || x.diff != y.diff || x.ci_low != y.ci_low ||
        x.ci_high != y.ci_high || x.p_value != y.p_value ||
        x.sig_category != y.sig_category)
      return false;
  }
  return a.summary.count_significant == b.summary.count_significant &&
         a.summary.ci_capture_count == b.summary.ci_capture_count &&
         a.summary.mean_diff_of_diffs == b.summary.mean_diff_of_diffs;
}

} // namespace

TEST_CASE("significance glyph bands are exhaustive and lower-inclusive upward") {
  CHECK(simulate::sig_category(0.0005) == "***");
  CHECK(simulate::sig_category(0.001) == "**");
  CHECK(simulate::sig_category(0.0099) == "**");
  CHECK(simulate::sig_category(0.01) == "*");
  CHECK(simulate::sig_category(0.049) == "*");
  CHECK(simulate::sig_category(0.05) == "?");
  CHECK(simulate::sig_category(0.0999) == "?");
  CHECK(simulate::sig_category(0.10) == "ns");
  CHECK(simulate::sig_category(0.9) == "ns");
}

TEST_CASE("pcg32 substreams are deterministic and distinct") {
  rng::Pcg32 a = rng::substream(42, 0);
  rng::Pcg32 b = rng::substream(42, 0);
  rng::Pcg32 c = rng::substream(42, 1);
  bool all_equal = true, any_equal_to_next = false;
  for (int i = 0; i < 64; ++i) {
    const auto va = a.next_u32();
    all_equal = all_equal && va == b.next_u32();
    any_equal_to_next = any_equal_to_next || va == c.next_u32();
  }
  CHECK(all_equal);
  CHECK(!any_equal_to_next); // 64 collisions in a row would be a bug
}

TEST_CASE("run_dance is bit-identical across invocations and thread counts") {
  DanceConfig cfg;
  cfg.n_experiments = 200;
  cfg.seed = 987;

  const auto serial = simulate::run_dance_serial(cfg);
  const auto again = simulate::run_dance_serial(cfg);
  CHECK(records_identical(serial, again));

#ifdef _OPENMP
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const auto one = simulate::run_dance(cfg);
  omp_set_num_threads(std::max(2, saved));
  const auto many = simulate::run_dance(cfg);
  omp_set_num_threads(saved);
  CHECK(records_identical(serial, one));
  CHECK(records_identical(serial, many));
#else
  CHECK(records_identical(serial, simulate::run_dance(cfg)));
#endif
}

TEST_CASE("per-experiment records come straight from their substream") {
  DanceConfig cfg;
  cfg.n_experiments = 10;
  cfg.seed = 5;
  const auto result = simulate::run_dance(cfg);
  for (std::size_t i : {std::size_t{0}, std::size_t{4}, std::size_t{9}}) {
    const auto rec = simulate::run_experiment(cfg, i);
    CHECK(rec.diff == result.records[i].diff);
    CHECK(rec.p_value == result.records[i].p_value);
  }
}

TEST_CASE("different seeds move the records") {
  DanceConfig a, b;
  a.n_experiments = b.n_experiments = 8;
  a.seed = 1;
  b.seed = 2;
  CHECK(!records_identical(simulate::run_dance(a), simulate::run_dance(b)));
}

TEST_CASE("null simulation rejects at about the nominal rate") {
  DanceConfig cfg;
  cfg.n_experiments = 10000;
  cfg.delta_mu = 0.0;
  cfg.seed = 42;
  const auto r = simulate::run_dance(cfg);
  const double frac = static_cast<double>(r.summary.count_significant) / 10000.0;
  CHECK(frac >= 0.04);
  CHECK(frac <= 0.06);
}

TEST_CASE("default population recovers the power and capture rates") {
  DanceConfig cfg;
  cfg.n_experiments = 10000;
  cfg.seed = 42;
  const auto r = simulate::run_dance(cfg);
  const double frac = static_cast<double>(r.summary.count_significant) / 10000.0;
  const double power = simulate::theoretical_power(0.5, 20, 0.05);
  CHECK(std::fabs(frac - power) <= 0.02);
  const double capture = static_cast<double>(r.summary.ci_capture_count) / 10000.0;
  CHECK(capture >= 0.94);
  CHECK(capture <= 0.96);
  CHECK(r.summary.mean_diff_of_diffs == doctest::Approx(10.0).epsilon(0.03));
}

TEST_CASE("a 25-experiment run lands in the binomial band around the power") {
  DanceConfig cfg;
  cfg.seed = 42; // defaults: 25 experiments, n 20, sigma 20, delta 10
  const auto r = simulate::run_dance(cfg);
  CHECK(r.records.size() == 25);
  const double power = simulate::theoretical_power(0.5, 20, 0.05);
  const auto band = oracles::binomial_band(25, power, 0.95);
  CHECK(static_cast<long>(r.summary.count_significant) >= band.lo);
  CHECK(static_cast<long>(r.summary.count_significant) <= band.hi);
}

TEST_CASE("theoretical power: size, exemplar and saturation") {
  // d = 0: the approximation sits within the documented 0.01 of the level
  CHECK(std::fabs(simulate::theoretical_power(0.0, 20, 0.05) - 0.05) <= 0.01);
  const double p = simulate::theoretical_power(0.5, 20, 0.05);
  CHECK(p >= 0.31);
  CHECK(p <= 0.35);
  CHECK(simulate::theoretical_power(2.0, 20, 0.05) > 0.99);
}

TEST_CASE("theoretical power tracks an independent Monte Carlo oracle") {
  // mt19937_64 + published critical value qt(0.975, 38) = 2.024394
  const double mc = oracles::mc_power(0.5, 20, 2.024394, 4000000, 1);
  CHECK(mc == doctest::Approx(0.337).epsilon(0.02));
  CHECK(std::fabs(simulate::theoretical_power(0.5, 20, 0.05) - mc) <= 0.01);
}

TEST_CASE("false discovery rate arithmetic") {
  CHECK(simulate::false_discovery_rate(0.1, 0.05, 0.8) ==
        doctest::Approx(0.36).epsilon(1e-12));
  CHECK(simulate::false_discovery_rate(1.0, 0.05, 0.8) == 0.0);
  CHECK(simulate::false_discovery_rate(0.5, 0.05, 0.8) ==
        doctest::Approx(1.0 / 17.0).epsilon(1e-12));
}

TEST_CASE("false discovery rate monotonicity, randomized") {
  rng::Pcg32 gen(606, 3);
  for (int i = 0; i < 1000; ++i) {
    const double pi1 = 0.05 + 0.85 * gen.next_double();
    const double alpha = 0.005 + 0.2 * gen.next_double();
    const double power = 0.2 + 0.75 * gen.next_double();
    const double base = simulate::false_discovery_rate(pi1, alpha, power);
    CHECK(simulate::false_discovery_rate(pi1 + 0.05, alpha, power) < base);
    CHECK(simulate::false_discovery_rate(pi1, alpha, power + 0.04) < base);
    CHECK(simulate::false_discovery_rate(pi1, alpha + 0.01, power) > base);
  }
}

TEST_CASE("domain checks") {
  CHECK_THROWS_AS(simulate::false_discovery_rate(0.0, 0.05, 0.8),
                  std::domain_error);
  CHECK_THROWS_AS(simulate::false_discovery_rate(0.5, 1.5, 0.8),
                  std::domain_error);
  CHECK_THROWS_AS(simulate::theoretical_power(0.5, 1, 0.05), std::domain_error);

  DanceConfig bad;
  bad.sigma = -1.0;
  CHECK_THROWS_AS(simulate::run_dance(bad), std::domain_error);
  bad = DanceConfig{};
  bad.n_per_group = 1;
  CHECK_THROWS_AS(simulate::run_dance(bad), std::domain_error);
  bad = DanceConfig{};
  bad.alpha = 0.0;
  CHECK_THROWS_AS(simulate::run_dance(bad), std::domain_error);
}
