#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "qsl/errors.hpp"
#include "qsl/rng.hpp"
#include "qsl/samplizer.hpp"

using namespace qsl;

namespace {

QuantumChannel exp_channel(const DensityMatrix& rho, double t) {
  Mat u = matrix_function_c(rho.data, [t](double x) { return std::exp(cd(0, -x * t)); });
  return QuantumChannel::from_unitary(u);
}

Mat hadamard_full(int qubits, int on_qubit) {
  Mat h(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  Mat out = Mat::Identity(1, 1);
  for (int q = 0; q < qubits; ++q)
    out = tensor(out, q == on_qubit ? h : Mat(Mat::Identity(2, 2)));
  return out;
}

}  // namespace

TEST_CASE("lmr channel: t = 0 is the identity") {
  SplitRng rng(3);
  DensityMatrix rho = random_density(2, 2, rng);
  QuantumChannel e = lmr_channel(rho, {0.0, 4});
  DensityMatrix s = random_density(2, 2, rng);
  CHECK((e.apply(s.data) - s.data).norm() < 1e-12);
}

TEST_CASE("lmr channel converges to e^{-i rho t} conjugation at rate ~1/n") {
  SplitRng rng(7);
  DensityMatrix rho = random_density(2, 2, rng);
  QuantumChannel target = exp_channel(rho, 1.0);
  double prev = 1e9;
  for (int n : {4, 8, 16, 32}) {
    auto d = diamond_distance(lmr_channel(rho, {1.0, n}), target);
    CHECK(d.upper < prev + 1e-9);
    prev = d.upper;
  }
  // at n = 32 the error is well below the n = 4 error
  auto d4 = diamond_distance(lmr_channel(rho, {1.0, 4}), target);
  auto d32 = diamond_distance(lmr_channel(rho, {1.0, 32}), target);
  CHECK(d32.upper < d4.upper / 4.0);
}

TEST_CASE("controlled exponential approximates the controlled unitary") {
  SplitRng rng(11);
  DensityMatrix rho = random_density(2, 2, rng);
  double t = 0.8;
  Mat u = matrix_function_c(rho.data, [t](double x) { return std::exp(cd(0, -x * t)); });
  Mat p0 = Mat::Zero(2, 2), p1 = Mat::Zero(2, 2);
  p0(0, 0) = 1;
  p1(1, 1) = 1;
  Mat cu = tensor(p0, Mat(Mat::Identity(2, 2))) + tensor(p1, u);
  QuantumChannel target = QuantumChannel::from_unitary(cu);
  auto d64 = diamond_distance(controlled_exponential(rho, t, 64), target);
  CHECK(d64.upper < 0.1);
  auto d256 = diamond_distance(controlled_exponential(rho, t, 256), target);
  CHECK(d256.upper < d64.upper);
}

TEST_CASE("sample block encoding: ideal mode is the exact pinned unitary") {
  SplitRng rng(19);
  DensityMatrix rho = random_density(2, 2, rng);
  auto sbe = sample_block_encoding(rho, 0.25, SampleMode::Ideal);
  CHECK(sbe.forward.samples_consumed == 0);
  CHECK(sbe.forward.per_query_error == 0.0);
  CHECK(sbe.nominal.scale == doctest::Approx(2.0));
  CHECK(sbe.nominal.ancilla_qubits == 4);
  // corner of the pinned unitary is rho/2 (so the encoding encodes rho at scale 2)
  CHECK((sbe.nominal.corner() - rho.data / 2.0).norm() < 1e-12);
  // forward then inverse is the identity
  DensityMatrix probe = random_density(2, 2, rng);
  Mat full = tensor(probe.data, Mat(Mat::Identity(16, 16) / 16.0));
  Mat round_trip = sbe.inverse.channel.apply(sbe.forward.channel.apply(full));
  CHECK((round_trip - full).norm() < 1e-10);
}

TEST_CASE("active faithful channels meet their certified diamond error") {
  SplitRng rng(23);
  DensityMatrix rho = random_density(2, 2, rng);
  double delta = 0.4;
  ActiveSampleChannels act = active_sample_block_encoding(rho, delta, false);
  REQUIRE(act.dim == 4);
  CHECK(act.forward.per_query_error <= delta);
  CHECK(act.forward.samples_consumed > 0);
  QuantumChannel nominal = QuantumChannel::from_unitary(act.nominal);
  auto d = diamond_distance(act.forward.channel, nominal);
  CHECK(d.lower <= act.forward.per_query_error + 1e-7);
  auto di = diamond_distance(act.inverse.channel,
                             QuantumChannel::from_unitary(Mat(act.nominal.adjoint())));
  CHECK(di.lower <= act.inverse.per_query_error + 1e-7);
}

TEST_CASE("active faithful channels with outer control") {
  SplitRng rng(29);
  DensityMatrix rho = random_density(2, 2, rng);
  double delta = 0.5;
  ActiveSampleChannels act = active_sample_block_encoding(rho, delta, true);
  REQUIRE(act.dim == 8);
  // nominal is the controlled dilation: block diag(I, dilate(rho/2))
  Mat top_left = act.nominal.block(0, 0, 4, 4);
  CHECK((top_left - Mat::Identity(4, 4)).norm() < 1e-12);
  QuantumChannel nominal = QuantumChannel::from_unitary(act.nominal);
  auto d = diamond_distance(act.forward.channel, nominal);
  CHECK(d.lower <= act.forward.per_query_error + 1e-7);
}

TEST_CASE("faithful full-space channel stays close to the pinned unitary") {
  SplitRng rng(31);
  DensityMatrix rho = random_density(2, 2, rng);
  double delta = 0.4;
  auto sbe = sample_block_encoding(rho, delta, SampleMode::Faithful);
  CHECK(sbe.forward.per_query_error <= delta);
  CHECK(sbe.forward.samples_consumed == 2 * sbe.lmr_steps);
  auto td = channel_trace_distance(sbe.forward.channel,
                                   QuantumChannel::from_unitary(sbe.nominal.unitary.data), 8);
  CHECK(td.value <= sbe.forward.per_query_error + 1e-6);
}

TEST_CASE("query circuit validation and instantiation") {
  QueryCircuit c;
  c.system_qubits = 1;
  c.oracle_ancillas = 4;
  CHECK(c.total_qubits() == 5);

  CircuitGate h;
  h.kind = CircuitGate::Kind::Fixed;
  h.fixed = hadamard_full(5, 0);
  CircuitGate o;
  o.kind = CircuitGate::Kind::Oracle;
  CircuitGate od = o;
  od.dagger = true;
  c.gates = {h, o, od, h};
  CHECK(c.query_count() == 2);
  c.validate();

  SplitRng rng(37);
  Mat u = random_unitary(32, rng);
  Mat inst = c.instantiate(u);
  Mat expect = (h.fixed * u.adjoint() * u * h.fixed).eval();
  CHECK((inst - expect).norm() < 1e-11);

  QueryCircuit bad = c;
  bad.oracle_ancillas = 3;
  CHECK_THROWS_AS(bad.validate(), ParameterError);

  QueryCircuit ctl = c;
  CircuitGate oc = o;
  oc.controlled = true;
  ctl.gates = {oc};
  CHECK_THROWS_AS(ctl.validate(), ParameterError);  // needs m >= 5
  ctl.oracle_ancillas = 5;
  ctl.validate();
}

TEST_CASE("samplize ideal mode is exact") {
  SplitRng rng(41);
  DensityMatrix rho = random_density(2, 2, rng);
  QueryCircuit c;
  c.system_qubits = 1;
  c.oracle_ancillas = 4;
  CircuitGate h;
  h.kind = CircuitGate::Kind::Fixed;
  h.fixed = hadamard_full(5, 0);
  CircuitGate o;
  o.kind = CircuitGate::Kind::Oracle;
  c.gates = {h, o, h};

  SampleChannel sc = samplize(c, rho, 0.3, SampleMode::Ideal);
  CHECK(sc.samples_consumed == 0);
  auto sbe = sample_block_encoding(rho, 0.3, SampleMode::Ideal);
  QuantumChannel exact = QuantumChannel::from_unitary(c.instantiate(sbe.nominal.unitary.data));
  auto d = diamond_of_difference(sc.channel.choi() - exact.choi(), 32, 32);
  CHECK(d.upper <= 1e-8);
}

TEST_CASE("samplize faithful mode composes errors subadditively") {
  SplitRng rng(43);
  DensityMatrix rho = random_density(2, 2, rng);
  double delta = 0.6;
  for (int q : {1, 2}) {
    QueryCircuit c;
    c.system_qubits = 1;
    c.oracle_ancillas = 4;
    CircuitGate o;
    o.kind = CircuitGate::Kind::Oracle;
    for (int i = 0; i < q; ++i) c.gates.push_back(o);

    SampleChannel sc = samplize(c, rho, delta, SampleMode::Faithful);
    CHECK(sc.per_query_error <= delta / q + 1e-12);
    auto sbe = sample_block_encoding(rho, delta / q, SampleMode::Ideal);
    QuantumChannel exact = QuantumChannel::from_unitary(c.instantiate(sbe.nominal.unitary.data));
    auto td = channel_trace_distance(sc.channel, exact, 8);
    CHECK(td.value <= delta + 1e-6);
    CHECK(td.value <= q * sc.per_query_error + 1e-6);
    CHECK(sc.samples_consumed > 0);
  }
}

TEST_CASE("samplize rejects controlled slots in faithful mode") {
  SplitRng rng(47);
  DensityMatrix rho = random_density(2, 2, rng);
  QueryCircuit c;
  c.system_qubits = 1;
  c.oracle_ancillas = 5;
  CircuitGate oc;
  oc.kind = CircuitGate::Kind::Oracle;
  oc.controlled = true;
  c.gates = {oc};
  CHECK_THROWS_AS((void)samplize(c, rho, 0.5, SampleMode::Faithful), ParameterError);
}

TEST_CASE("lower bound instance check") {
  SplitRng rng(53);
  for (int trial = 0; trial < 3; ++trial) {
    DensityMatrix rho = random_density(2, 2, rng);
    LowerBoundReport rep =
        lower_bound_instance_check(rho, 0.7, 0.02 + 0.01 * trial, 0.1, 100 + trial);
    CHECK(rep.pass);
    CHECK(rep.measured <= rep.bound + 1e-9);
  }
}

TEST_CASE("superoperator helpers round trip") {
  SplitRng rng(59);
  Mat u = random_unitary(4, rng);
  QuantumChannel e = QuantumChannel::from_unitary(u);
  Mat s = superop_from_kraus(e.kraus);
  QuantumChannel back = channel_from_superop(s, 4, 4);
  DensityMatrix rho = random_density(4, 4, rng);
  CHECK((back.apply(rho.data) - e.apply(rho.data)).norm() < 1e-10);
  Mat j = choi_from_superop(s, 4, 4);
  CHECK((j - e.choi()).norm() < 1e-10);
}

TEST_CASE("sample block encoding parameter checks") {
  SplitRng rng(61);
  DensityMatrix rho = random_density(2, 2, rng);
  CHECK_THROWS_AS((void)sample_block_encoding(rho, 0.0, SampleMode::Ideal), ParameterError);
  DensityMatrix big = random_density(32, 32, rng);
  CHECK_THROWS_AS((void)sample_block_encoding(big, 0.5, SampleMode::Ideal), DimensionError);
}
