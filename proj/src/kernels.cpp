#include "qsl/kernels.hpp"

namespace qsl::kernels {
namespace {

inline double clenshaw_one(const std::vector<double>& c, double x) {
  // b_k = c_k + 2x b_{k+1} - b_{k+2}; value = c_0 + x b_1 - b_2.
  double b1 = 0.0, b2 = 0.0;
  const double x2 = 2.0 * x;
  for (std::size_t k = c.size(); k-- > 1;) {
    double b0 = c[k] + x2 * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return c.empty() ? 0.0 : c[0] + x * b1 - b2;
}

}  // namespace

void chebyshev_eval_serial(const std::vector<double>& coeffs,
                           const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = clenshaw_one(coeffs, x[i]);
}

void chebyshev_eval_parallel(const std::vector<double>& coeffs,
                             const double* x, double* y, std::size_t n) {
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(n); ++i)
    y[i] = clenshaw_one(coeffs, x[i]);
}

void chebyshev_eval(const std::vector<double>& coeffs,
                    const double* x, double* y, std::size_t n) {
  if (coeffs.size() * n >= (1u << 20))
    chebyshev_eval_parallel(coeffs, x, y, n);
  else
    chebyshev_eval_serial(coeffs, x, y, n);
}

std::vector<double> chebyshev_eval(const std::vector<double>& coeffs,
                                   const std::vector<double>& x) {
  std::vector<double> y(x.size());
  chebyshev_eval(coeffs, x.data(), y.data(), x.size());
  return y;
}

}  // namespace qsl::kernels
