#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "qsl/errors.hpp"
#include "qsl/polyapprox.hpp"
#include "qsl/qet.hpp"
#include "qsl/rng.hpp"

using namespace qsl;

namespace {

BlockEncoding exact_encoding(const Mat& a, int system_qubits) {
  return BlockEncoding(dilate_to_unitary(a), system_qubits, 1, 1.0, 0.0, a);
}

Mat rand_herm(int d, SplitRng& rng) {
  Mat g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = cd(rng.normal(), rng.normal());
  Mat h = ((g + g.adjoint()) / 2.0).eval();
  return h / operator_norm(h);
}

}  // namespace

TEST_CASE("eigen_transform realizes p on the spectrum of an exact encoding") {
  Mat a = Mat::Zero(2, 2);
  a(0, 0) = 0.3;
  a(1, 1) = -0.2;
  BlockEncoding be = exact_encoding(a, 1);
  CertifiedPolynomial p = build_log(0.1, 0.02, 2);
  EigenTransformResult et = eigen_transform(be, p, 1e-3);

  CHECK(et.added_ancillas == 2);
  CHECK(et.query_count == p.degree());
  CHECK(et.encoding.scale == doctest::Approx(1.0));
  CHECK(et.encoding.ancilla_qubits == be.ancilla_qubits + 2);

  Mat corner = et.encoding.corner();
  CHECK(std::abs(corner(0, 0).real() - p.eval(0.3)) < 1e-9);
  CHECK(std::abs(corner(1, 1).real() - p.eval(-0.2)) < 1e-9);
  CHECK(et.realized_error <= et.error_bound);

  // resulting encoding is a genuine unitary
  const Mat& u = et.encoding.unitary.data;
  CHECK((u * u.adjoint() - Mat::Identity(u.rows(), u.cols())).norm() < 1e-10);
}

TEST_CASE("eigen_transform error bound holds under encoding perturbations") {
  SplitRng rng(71);
  CertifiedPolynomial p = build_log(0.12, 0.03, 2);
  for (int trial = 0; trial < 20; ++trial) {
    Mat a = rand_herm(2, rng) * 0.4;
    double eps = rng.uniform(0.0, 0.02);
    Mat u = dilate_to_unitary(a).data;
    Mat k = rand_herm(4, rng);
    Mat upert = (matrix_function_c(k, [&](double x) { return std::exp(cd(0, eps * x)); }) * u).eval();
    BlockEncoding be(UnitaryMatrix(upert), 1, 1, 1.0, eps + 1e-9, a);
    EigenTransformResult et = eigen_transform(be, p, 1e-4);
    // realized deviation from p(target) stays within the stated bound
    Mat nominal = matrix_function(a, [&](double x) { return p.eval(std::clamp(x, -1.0, 1.0)); });
    double dev = operator_norm(et.encoding.corner() - nominal);
    CHECK(dev <= et.error_bound + 1e-9);
    CHECK(et.error_bound <= 4.0 * p.degree() * std::sqrt(eps + 1e-9) + 1e-4 + 1e-8);
  }
}

TEST_CASE("eigen_transform rejects bad inputs") {
  Mat a = Mat::Zero(2, 2);
  BlockEncoding be = exact_encoding(a, 1);
  CertifiedPolynomial rect = build_rectangle(0.5, 0.1, 0.05);  // global bound 1
  CHECK_THROWS_AS((void)eigen_transform(be, rect, 1e-3), ParameterError);

  CertifiedPolynomial p = build_log(0.1, 0.02, 2);
  CertifiedPolynomial uncert = scaled(p, 0.5);  // drops certification
  CHECK_THROWS_AS((void)eigen_transform(be, uncert, 1e-3), ParameterError);
  CHECK_THROWS_AS((void)eigen_transform(be, p, -0.1), ParameterError);
}

TEST_CASE("hadamard test probability and measurement channel") {
  SplitRng rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    Mat a = rand_herm(4, rng) * 0.8;
    BlockEncoding be = exact_encoding(a, 2);
    DensityMatrix rho = random_density(4, 4, rng);
    HadamardTestResult h = hadamard_test(be, rho);
    double expect = (1.0 + (a * rho.data).trace().real()) / 2.0;
    CHECK(h.p1 == doctest::Approx(expect).epsilon(1e-9));

    QuantumChannel mc = h.channel();
    // trace preserving
    Mat sum = Mat::Zero(4, 4);
    for (const Mat& k : mc.kraus) sum += k.adjoint() * k;
    CHECK((sum - Mat::Identity(4, 4)).norm() < 1e-10);
    Mat out = mc.apply(rho.data);
    CHECK(out(1, 1).real() == doctest::Approx(h.p1).epsilon(1e-9));
    CHECK(out(0, 0).real() == doctest::Approx(1.0 - h.p1).epsilon(1e-9));
  }
}

TEST_CASE("hadamard test imaginary part variant") {
  SplitRng rng(29);
  Mat a = Mat::Zero(2, 2);
  a(0, 1) = cd(0, 0.5);
  a(1, 0) = cd(0, 0.5);  // anti-Hermitian part only
  BlockEncoding be(dilate_to_unitary(a), 1, 1, 1.0, 0.0);
  DensityMatrix rho = random_density(2, 2, rng);
  HadamardTestResult h = hadamard_test(be, rho, true);
  Mat herm = ((a - a.adjoint()) / cd(0, 2)).eval();
  double expect = (1.0 + (herm * rho.data).trace().real()) / 2.0;
  CHECK(h.p1 == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("hadamard test preconditions") {
  Mat a = Mat::Zero(2, 2);
  BlockEncoding be(dilate_to_unitary(a), 1, 1, 2.0, 0.0);  // scale 2
  SplitRng rng(1);
  DensityMatrix rho = random_density(2, 2, rng);
  CHECK_THROWS_AS((void)hadamard_test(be, rho), ParameterError);
  DensityMatrix wrong = random_density(4, 4, rng);
  BlockEncoding ok(dilate_to_unitary(a), 1, 1, 1.0, 0.0);
  CHECK_THROWS_AS((void)hadamard_test(ok, wrong), DimensionError);
}

TEST_CASE("hamiltonian simulation reproduces e^{-iHt}") {
  SplitRng rng(41);
  Mat h = rand_herm(2, rng) * 0.9;
  BlockEncoding be = exact_encoding(h, 1);
  for (double t : {0.5, 2.0, -3.0}) {
    HamiltonianSimulationResult r = hamiltonian_simulation(be, t, 1e-6);
    Mat expect = matrix_function_c(h, [t](double x) { return std::exp(cd(0, -x * t)); });
    CHECK(operator_norm(r.encoding.corner() - expect) < 1e-9);
    CHECK(r.query_count >= 1);
    CHECK(r.query_count == std::max(1, int(std::ceil(std::fabs(t) + std::log(1e6)))));
    CHECK(r.encoding.ancilla_qubits == be.ancilla_qubits + 2);
  }
  CHECK_THROWS_AS((void)hamiltonian_simulation(be, 51.0, 1e-6), ParameterError);
  CHECK_THROWS_AS((void)hamiltonian_simulation(be, 1.0, 0.0), ParameterError);
}
