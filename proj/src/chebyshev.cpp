#include "qsl/chebyshev.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>

#include "qsl/errors.hpp"
#include "qsl/kernels.hpp"

namespace qsl::cheb {
namespace {

// REDFT00 of length n+1: Y_k = X_0 + (-1)^k X_n + 2 sum_{j=1}^{n-1} X_j cos(pi jk/n).
void dct1(std::vector<double>& data) {
  int n = static_cast<int>(data.size());
  if (n < 2) return;
  std::vector<double> out(n);
  fftw_plan plan = fftw_plan_r2r_1d(n, data.data(), out.data(), FFTW_REDFT00, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  data = std::move(out);
}

}  // namespace

std::vector<double> lobatto_nodes(int degree) {
  std::vector<double> x(degree + 1);
  for (int j = 0; j <= degree; ++j) x[j] = std::cos(M_PI * j / degree);
  if (degree == 0) x = {1.0};
  return x;
}

std::vector<double> interpolate(const std::function<double(double)>& f, int degree) {
  if (degree < 1) return {f(0.0)};
  std::vector<double> v(degree + 1);
  for (int j = 0; j <= degree; ++j) v[j] = f(std::cos(M_PI * j / degree));
  dct1(v);
  std::vector<double> c(degree + 1);
  for (int k = 0; k <= degree; ++k) c[k] = v[k] / degree;
  c[0] *= 0.5;
  c[degree] *= 0.5;
  return c;
}

double eval(const std::vector<double>& c, double x) {
  double y;
  qsl::kernels::chebyshev_eval_serial(c, &x, &y, 1);
  return y;
}

std::vector<double> synthesize(const std::vector<double>& c, int D) {
  std::vector<double> x(D + 1, 0.0);
  for (std::size_t k = 0; k < c.size() && k <= static_cast<std::size_t>(D); ++k)
    x[k] = (k == 0 || static_cast<int>(k) == D) ? c[k] : 0.5 * c[k];
  dct1(x);
  return x;
}

std::vector<double> multiply(const std::vector<double>& a, const std::vector<double>& b) {
  int da = static_cast<int>(a.size()) - 1, db = static_cast<int>(b.size()) - 1;
  int D = da + db;
  if (D == 0) return {a[0] * b[0]};
  auto va = synthesize(a, D);
  auto vb = synthesize(b, D);
  for (int j = 0; j <= D; ++j) va[j] *= vb[j];
  dct1(va);
  std::vector<double> c(D + 1);
  for (int k = 0; k <= D; ++k) c[k] = va[k] / D;
  c[0] *= 0.5;
  c[D] *= 0.5;
  return c;
}

std::vector<double> monomial(int k) {
  std::vector<double> c{1.0};
  std::vector<double> x{0.0, 1.0};
  for (int i = 0; i < k; ++i) c = multiply(c, x);
  return c;
}

void enforce_parity(std::vector<double>& c, int parity) {
  if (parity == 0) return;
  for (std::size_t k = 0; k < c.size(); ++k) {
    bool keep = (parity > 0) ? (k % 2 == 0) : (k % 2 == 1);
    if (!keep) c[k] = 0.0;
  }
}

void trim(std::vector<double>& c, double tol) {
  while (c.size() > 1 && std::fabs(c.back()) <= tol) c.pop_back();
}

}  // namespace qsl::cheb
