#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rocflow/stencil.hpp"

using clk = std::chrono::steady_clock;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
  fn();  // warm up
  auto t0 = clk::now();
  for (int r = 0; r < reps; ++r) fn();
  auto t1 = clk::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("openmp enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("openmp disabled\n");
#endif
  for (int n : {129, 257, 513, 1025}) {
    std::vector<double> a(size_t(n) * n), out(a.size());
    double h = 2.5 / (n - 1);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        a[size_t(j) * n + i] = std::sin(0.37 * i) * std::cos(0.53 * j);
    int reps = n <= 257 ? 200 : 40;
    double ts = time_ms(
        [&] {
          rocflow::serial::deriv_x(a.data(), out.data(), n, h);
          rocflow::serial::deriv_y(a.data(), out.data(), n, h);
        },
        reps);
    double tp = time_ms(
        [&] {
          rocflow::kernels::deriv_x(a.data(), out.data(), n, h);
          rocflow::kernels::deriv_y(a.data(), out.data(), n, h);
        },
        reps);
    std::printf("n=%5d  serial %8.3f ms  parallel %8.3f ms  speedup %5.2fx\n",
                n, ts, tp, ts / tp);
  }
  return 0;
}
