#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "qsl/chebyshev.hpp"
#include "qsl/kernels.hpp"

using namespace qsl;

TEST_CASE("serial and parallel Clenshaw agree bit for bit") {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int deg : {0, 1, 7, 64, 1000}) {
    std::vector<double> c(deg + 1);
    for (double& v : c) v = u(gen);
    std::vector<double> x(5000), ys(5000), yp(5000);
    for (double& v : x) v = u(gen);
    kernels::chebyshev_eval_serial(c, x.data(), ys.data(), x.size());
    kernels::chebyshev_eval_parallel(c, x.data(), yp.data(), x.size());
    for (size_t i = 0; i < x.size(); ++i) CHECK(ys[i] == yp[i]);
  }
}

TEST_CASE("kernel output matches the scalar Chebyshev evaluator") {
  std::vector<double> c = {0.5, -0.25, 0.125, 0.0625};
  std::vector<double> x = {-1.0, -0.5, 0.0, 0.3, 1.0};
  std::vector<double> y = kernels::chebyshev_eval(c, x);
  for (size_t i = 0; i < x.size(); ++i)
    CHECK(y[i] == doctest::Approx(cheb::eval(c, x[i])).epsilon(1e-14));
}

TEST_CASE("known series: T_2 evaluates to 2x^2 - 1") {
  std::vector<double> c = {0.0, 0.0, 1.0};
  std::vector<double> x = {-0.9, -0.2, 0.0, 0.4, 0.8};
  std::vector<double> y = kernels::chebyshev_eval(c, x);
  for (size_t i = 0; i < x.size(); ++i)
    CHECK(y[i] == doctest::Approx(2.0 * x[i] * x[i] - 1.0).epsilon(1e-14));
}

TEST_CASE("dispatch path handles tiny and empty inputs") {
  std::vector<double> c = {1.0, 2.0};
  double x = 0.5, y = 0.0;
  kernels::chebyshev_eval(c, &x, &y, 1);
  CHECK(y == doctest::Approx(2.0));
  kernels::chebyshev_eval(c, nullptr, nullptr, 0);  // no-op, must not crash
  std::vector<double> empty_out = kernels::chebyshev_eval(c, {});
  CHECK(empty_out.empty());
}
