// Wall-clock comparison of the OpenMP grid kernels against their serial
// reference implementations. Not a registered test; build and run directly.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fansub/onefan_search.hpp"
#include "fansub/twofan_search.hpp"

using namespace fansub;

namespace {

using bench_clock = std::chrono::steady_clock;

double seconds_since(bench_clock::time_point t0) {
  return std::chrono::duration<double>(bench_clock::now() - t0).count();
}

template <typename F>
double best_of(int reps, F&& run) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = bench_clock::now();
    run();
    best = std::min(best, seconds_since(t0));
  }
  return best;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not available; the parallel column runs the serial path\n");
#endif

  // 2-fan offset grid on an asymmetric two-shock datum.
  {
    RiemannData d;
    d.left = {1.0, 0.0, 2.0, 1.5};
    d.right = {2.0, 0.0, -1.0, 0.5};
    const GasModel gas{1.4};
    TwoFanConfig cfg;
    cfg.max_j = 512;
    cfg.max_k = 511;

    std::vector<TwoFanScanRow> ser, par;
    const double ts = best_of(3, [&] { ser = scan_grid_serial(d, gas, cfg); });
    cfg.parallel = true;
    const double tp = best_of(3, [&] { par = scan_grid(d, gas, cfg); });
    std::printf("2-fan margin grid   %7zu cells: serial %8.4fs  parallel %8.4fs  "
                "speedup %5.2fx\n",
                ser.size(), ts, tp, ts / tp);
    if (par.size() != ser.size()) {
      std::printf("size mismatch between kernels\n");
      return 1;
    }
  }

  // Threshold scan over a geometric batch of middle densities.
  {
    RiemannData d;
    d.left = {1.0, 0.0, 0.0, 1.0};
    d.right = {2.0, 0.0, 0.0, 1.0};
    const GasModel gas{1.0};
    const double mr = min_rho1(d, gas);
    std::vector<double> rho1s;
    const int count = 64;
    for (int i = 0; i < count; ++i) {
      const double t = static_cast<double>(i) / (count - 1);
      rho1s.push_back(1.02 * mr * std::pow(8.0 / 1.02, t));
    }

    OneFanConfig cfg;
    std::vector<ThresholdScanRow> ser, par;
    const double ts = best_of(3, [&] { ser = threshold_scan_serial(d, gas, rho1s, cfg); });
    cfg.parallel = true;
    const double tp = best_of(3, [&] { par = threshold_scan(d, gas, rho1s, cfg); });
    std::printf("threshold scan      %7zu rows:  serial %8.4fs  parallel %8.4fs  "
                "speedup %5.2fx\n",
                ser.size(), ts, tp, ts / tp);

    for (size_t i = 0; i < ser.size(); ++i) {
      const bool same = ser[i].ok == par[i].ok &&
                        (ser[i].u_bar == par[i].u_bar ||
                         (ser[i].u_bar != ser[i].u_bar && par[i].u_bar != par[i].u_bar));
      if (!same) {
        std::printf("row %zu differs between kernels\n", i);
        return 1;
      }
    }
  }
  return 0;
}
