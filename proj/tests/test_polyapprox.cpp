#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qsl/errors.hpp"
#include "qsl/polyapprox.hpp"

using namespace qsl;

namespace {

// Independent max-error scan against an analytic target on [lo, hi].
double scan_err(const CertifiedPolynomial& p, double lo, double hi,
                const std::function<double(double)>& f, int n = 4001) {
  double worst = 0;
  for (int i = 0; i <= n; ++i) {
    double x = lo + (hi - lo) * i / n;
    worst = std::max(worst, std::fabs(p.eval(x) - f(x)));
  }
  return worst;
}

double scan_max_abs(const CertifiedPolynomial& p, double lo, double hi, int n = 4001) {
  double worst = 0;
  for (int i = 0; i <= n; ++i) {
    double x = lo + (hi - lo) * i / n;
    worst = std::max(worst, std::fabs(p.eval(x)));
  }
  return worst;
}

}  // namespace

TEST_CASE("rectangle polynomial: plateau, stopband, parity") {
  double t = 0.5, delta = 0.1, eps = 0.05;
  CertifiedPolynomial p = build_rectangle(t, delta, eps);
  REQUIRE(p.certified);
  CHECK(p.parity == +1);
  for (double x : {0.0, 0.2, -0.35, t - delta}) {
    CHECK(p.eval(x) >= 1.0 - eps);
    CHECK(p.eval(x) <= 1.0);
  }
  for (double x : {t + delta, 0.8, -0.95, 1.0}) {
    CHECK(p.eval(x) >= 0.0);
    CHECK(p.eval(x) <= eps);
  }
  CHECK(scan_max_abs(p, -1.0, 1.0) <= 1.0 + 1e-12);
  // even parity: odd coefficients vanish
  for (size_t i = 1; i < p.coeffs_chebyshev.size(); i += 2)
    CHECK(p.coeffs_chebyshev[i] == 0.0);
}

TEST_CASE("negative power polynomial tracks (1/2)(x/delta)^{-c}") {
  double c = 0.5, delta = 0.15, eps = 0.05;
  CertifiedPolynomial p = build_negative_power(c, delta, eps);
  REQUIRE(p.certified);
  auto f = [&](double x) { return 0.5 * std::pow(std::fabs(x) / delta, -c); };
  CHECK(scan_err(p, delta, 1.0, f) <= eps + 1e-12);
  CHECK(scan_err(p, -1.0, -delta, f) <= eps + 1e-12);
  CHECK(p.eval(delta) == doctest::Approx(0.5).epsilon(0.15));
  CHECK(scan_max_abs(p, -1.0, 1.0) <= 1.0 + 1e-12);
}

TEST_CASE("positive power polynomial tracks (1/4)(x/2beta)^c and caps near 0") {
  double c = 0.5, delta = 0.1, beta = 0.25, eps = 0.05;
  CertifiedPolynomial p = build_positive_power(c, delta, beta, eps);
  REQUIRE(p.certified);
  auto f = [&](double x) { return 0.25 * std::pow(std::fabs(x) / (2.0 * beta), c); };
  CHECK(scan_err(p, delta, beta, f) <= eps + 1e-12);
  CHECK(scan_max_abs(p, -delta, delta) <= 2.0 * f(delta) + 1e-12);
  CHECK(scan_max_abs(p, -1.0, 1.0) <= 0.5 + 1e-12);
  CHECK(p.global_bound == doctest::Approx(0.5));
}

TEST_CASE("positive power with integer exponent") {
  CertifiedPolynomial p = build_positive_power(1.0, 0.1, 0.5, 0.05);
  REQUIRE(p.certified);
  auto f = [](double x) { return 0.25 * (std::fabs(x) / 1.0); };
  CHECK(scan_err(p, 0.1, 0.5, f) <= 0.05 + 1e-12);
}

TEST_CASE("log polynomial normalizations 2 and 4") {
  for (int norm : {2, 4}) {
    double delta = 0.1, eps = 0.02;
    CertifiedPolynomial p = build_log(delta, eps, norm);
    REQUIRE(p.certified);
    double nl = norm * std::log(2.0 / delta);
    auto f = [&](double x) { return std::log(1.0 / std::fabs(x)) / nl; };
    CHECK(scan_err(p, delta, 1.0, f) <= eps + 1e-12);
    CHECK(scan_err(p, -1.0, -delta, f) <= eps + 1e-12);
    CHECK(scan_max_abs(p, -1.0, 1.0) <= 0.5 + 1e-12);
  }
}

TEST_CASE("arcsin half polynomial") {
  double eps = 0.02;
  CertifiedPolynomial p = build_arcsin_half(eps);
  REQUIRE(p.certified);
  CHECK(p.parity == -1);
  double s = std::sin(1.0);
  auto f = [](double x) { return 0.5 * std::asin(x); };
  CHECK(scan_err(p, -s, s, f) <= eps + 1e-12);
  CHECK(scan_max_abs(p, -1.0, 1.0) <= 0.5 + 1e-12);
}

TEST_CASE("certify reports per-region margins") {
  CertifiedPolynomial p = build_rectangle(0.5, 0.15, 0.1);
  CertificateReport rep = certify(p);
  REQUIRE(rep.certified);
  for (const auto& r : rep.regions) {
    CHECK(r.pass);
    CHECK(r.margin >= 0.0);
    CHECK(r.worst_x >= r.lo - 1e-12);
    CHECK(r.worst_x <= r.hi + 1e-12);
  }
}

TEST_CASE("scaled polynomial evaluates proportionally but is uncertified") {
  CertifiedPolynomial p = build_rectangle(0.5, 0.15, 0.1);
  CertifiedPolynomial half = scaled(p, 0.5);
  CHECK_FALSE(half.certified);
  for (double x : {-0.8, -0.3, 0.0, 0.4, 0.9})
    CHECK(half.eval(x) == doctest::Approx(0.5 * p.eval(x)));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((void)build_rectangle(0.5, 0.6, 0.05), ParameterError);
  CHECK_THROWS_AS((void)build_arcsin_half(0.3), ParameterError);
  CHECK_THROWS_AS((void)build_log(0.0, 0.01), ParameterError);
}

TEST_CASE("degree cap is positive and exposed") {
  CHECK(poly_degree_cap() >= 1000);
}
