// Serial reference vs OpenMP replication engine: timings and an equality
// check over the same seed. Usage: bench_dance [experiments] [repeats]

#include "mbistat/rng.hpp"
#include "mbistat/simulate.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace mbistat;

namespace {

double seconds(std::chrono::steady_clock::time_point a,
               std::chrono::steady_clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

bool identical(const simulate::DanceResult& x, const simulate::DanceResult& y) {
  if (x.records.size() != y.records.size()) return false;
  for (std::size_t i = 0; i < x.records.size(); ++i) {
    const auto& a = x.records[i];
    const auto& b = y.records[i];
    if (a.diff != b.diff || a.ci_low != b.ci_low || a.ci_high != b.ci_high ||
        a.p_value != b.p_value || a.sig_category != b.sig_category)
      return false;
  }
  return x.summary.count_significant == y.summary.count_significant &&
         x.summary.ci_capture_count == y.summary.ci_capture_count &&
         x.summary.mean_diff_of_diffs == y.summary.mean_diff_of_diffs;
}

} // namespace

int main(int argc, char** argv) {
  simulate::DanceConfig cfg;
  cfg.n_experiments = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20000;
  cfg.seed = 20260810;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;

#ifdef _OPENMP
  std::printf("threads available: %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; both paths run serially\n");
#endif
  std::printf("experiments: %zu, n per group: %zu, repeats: %d\n",
              cfg.n_experiments, cfg.n_per_group, repeats);

  double serial_best = 1e300, parallel_best = 1e300;
  simulate::DanceResult serial, parallel;
  for (int r = 0; r < repeats; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    serial = simulate::run_dance_serial(cfg);
    auto t1 = std::chrono::steady_clock::now();
    parallel = simulate::run_dance(cfg);
    auto t2 = std::chrono::steady_clock::now();
    serial_best = std::min(serial_best, seconds(t0, t1));
    parallel_best = std::min(parallel_best, seconds(t1, t2));
  }

  std::printf("serial:   %8.3f s\n", serial_best);
  std::printf("parallel: %8.3f s  (speedup %.2fx)\n", parallel_best,
              serial_best / parallel_best);
  std::printf("outputs identical: %s\n", identical(serial, parallel) ? "yes" : "NO");
  std::printf("count_significant=%zu capture=%zu mean_diff=%.6f\n",
              serial.summary.count_significant, serial.summary.ci_capture_count,
              serial.summary.mean_diff_of_diffs);
  return identical(serial, parallel) ? 0 : 1;
}
