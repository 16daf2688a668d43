#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qsl/bounds.hpp"
#include "qsl/errors.hpp"
#include "qsl/rng.hpp"

using namespace qsl;

TEST_CASE("mixedness instance: exact trace distance and spectrum") {
  DensityMatrix rho = make_mixedness_instance(4, 0.2, 0.5);
  auto ev = rho.eigenvalues();
  CHECK(ev(0) == doctest::Approx(0.35));
  CHECK(ev(1) == doctest::Approx(0.35));
  CHECK(ev(2) == doctest::Approx(0.15));
  CHECK(ev(3) == doctest::Approx(0.15));
  Mat mm = Mat::Identity(4, 4) / 4.0;
  CHECK(trace_norm(rho.data - mm) / 2.0 == doctest::Approx(0.2).epsilon(1e-10));

  // eps = 0 returns the maximally mixed state
  DensityMatrix flat = make_mixedness_instance(4, 0.0, 0.5);
  CHECK((flat.data - mm).norm() < 1e-14);

  CHECK_THROWS_AS((void)make_mixedness_instance(4, 0.3, 0.9), ParameterError);
  CHECK_THROWS_AS((void)make_mixedness_instance(4, 0.3, 0.01), ParameterError);
}

TEST_CASE("mixedness instance entropy deficit") {
  for (double eps : {0.1, 0.2, 0.3}) {
    for (double z : {0.25, 0.5, 0.7}) {
      DensityMatrix rho = make_mixedness_instance(16, eps, z);
      CHECK(von_neumann_entropy(rho) <= std::log(16.0) - eps * eps + 1e-12);
    }
  }
}

TEST_CASE("log inequality grid") {
  VerifierReport rep = verify_log_eq(100, 100);
  CHECK(rep.pass);
  CHECK(rep.min_margin > 0.0);
  CHECK(rep.points == 10000);
  REQUIRE(rep.arg_min.size() == 2);
}

TEST_CASE("Renyi lt1 power-sum deficit on random distributions") {
  SplitRng rng(8);
  std::vector<std::vector<double>> dists;
  for (int i = 0; i < 500; ++i) {
    int n = 2 + int(rng.next_u64() % 15);
    std::vector<double> p(n);
    double tot = 0;
    for (double& x : p) tot += (x = rng.uniform(0.01, 1.0));
    for (double& x : p) x /= tot;
    dists.push_back(std::move(p));
  }
  VerifierReport rep = verify_renyi_lt1_ineq(dists, 0.5);
  CHECK(rep.pass);
  CHECK(rep.points == 500);

  // uniform distribution achieves the eps = 0 equality case
  VerifierReport uni = verify_renyi_lt1_ineq({{0.25, 0.25, 0.25, 0.25}}, 0.5);
  CHECK(uni.pass);
  CHECK(uni.min_margin == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("Helstrom bound: identical and orthogonal states") {
  SplitRng rng(12);
  DensityMatrix rho = random_density(2, 2, rng);
  HelstromReport same = helstrom_bound_check(rho, rho, 1, 20000, 1);
  CHECK(same.bound == doctest::Approx(0.5));
  CHECK(same.pass);

  Mat a = Mat::Zero(2, 2), b = Mat::Zero(2, 2);
  a(0, 0) = 1;
  b(1, 1) = 1;
  HelstromReport orth =
      helstrom_bound_check(DensityMatrix(a, 1), DensityMatrix(b, 1), 1, 5000, 1);
  CHECK(orth.bound == doctest::Approx(1.0));
  CHECK(orth.empirical_success == doctest::Approx(1.0));
  CHECK(orth.pass);
  CHECK(orth.fidelity_pass);
}

TEST_CASE("Helstrom bound on the hard instance family with copies") {
  HardInstancePair pair = make_distinguishing_pair(4, 0.3);
  CHECK(pair.analytic_gap == doctest::Approx(1.0 - 0.3 - 0.25));
  for (int copies : {1, 2, 3}) {
    HelstromReport rep = helstrom_bound_check(pair.rho0, pair.rho1, copies, 20000, 7 + copies);
    CHECK(rep.pass);
    CHECK(rep.fidelity_pass);
    CHECK(rep.copies_half_norm <= rep.fidelity_rhs + 1e-10);
  }
}

TEST_CASE("alpha ordering and monotonicity") {
  SplitRng rng(19);
  std::vector<DensityMatrix> states;
  states.push_back(DensityMatrix(Mat::Identity(4, 4) / 4.0, 4));
  for (int i = 0; i < 200; ++i) {
    int d = 2 << (rng.next_u64() % 2);
    states.push_back(random_density(d, d, rng));
  }
  VerifierReport rep = verify_alpha_ordering(states, {1.5, 2.0, 4.0});
  CHECK(rep.pass);
  CHECK(rep.min_margin >= 0.0);
  CHECK_THROWS_AS((void)verify_alpha_ordering(states, {0.5}), ParameterError);
}
