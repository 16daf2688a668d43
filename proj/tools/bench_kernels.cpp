// Benchmark: serial vs OpenMP Clenshaw evaluation of long Chebyshev series.
// Both paths must agree bit-for-bit; the serial path is the reference.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#include "qsl/kernels.hpp"

namespace {

double time_ms(const std::function<void()>& f, int reps) {
  f();  // warm up
  auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

}  // namespace

int main() {
  std::mt19937_64 gen(12345);
  std::uniform_real_distribution<double> u(-1.0, 1.0);

  std::printf("%10s %10s %12s %12s %9s %10s\n", "degree", "points", "serial_ms", "parallel_ms",
              "speedup", "bitwise");
  for (int deg : {64, 512, 4096, 32768}) {
    for (std::size_t n : {std::size_t(1000), std::size_t(20000)}) {
      std::vector<double> coeffs(deg + 1);
      for (double& c : coeffs) c = u(gen) / (1.0 + deg);
      std::vector<double> x(n), ys(n), yp(n);
      for (double& v : x) v = u(gen);

      double ts = time_ms([&] { qsl::kernels::chebyshev_eval_serial(coeffs, x.data(), ys.data(), n); }, 3);
      double tp = time_ms([&] { qsl::kernels::chebyshev_eval_parallel(coeffs, x.data(), yp.data(), n); }, 3);
      bool same = true;
      for (std::size_t i = 0; i < n; ++i)
        if (ys[i] != yp[i]) same = false;
      std::printf("%10d %10zu %12.3f %12.3f %8.2fx %10s\n", deg, n, ts, tp, ts / tp,
                  same ? "identical" : "DIFFER");
    }
  }
  return 0;
}
