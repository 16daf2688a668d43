#pragma once

#include <cstddef>
#include <vector>

namespace qsl::kernels {

// Clenshaw evaluation of a Chebyshev series at many points.
// Serial and OpenMP variants produce bit-identical output (one write per
// element, reductions done outside), so the serial path doubles as the
// reference implementation in tests and benchmarks.
void chebyshev_eval_serial(const std::vector<double>& coeffs,
                           const double* x, double* y, std::size_t n);
void chebyshev_eval_parallel(const std::vector<double>& coeffs,
                             const double* x, double* y, std::size_t n);
// Dispatch: parallel when coeffs.size() * n is large enough to pay off.
void chebyshev_eval(const std::vector<double>& coeffs,
                    const double* x, double* y, std::size_t n);

std::vector<double> chebyshev_eval(const std::vector<double>& coeffs,
                                   const std::vector<double>& x);

}  // namespace qsl::kernels
