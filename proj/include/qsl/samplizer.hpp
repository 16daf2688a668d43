#pragma once

#include <vector>

#include "qsl/qcore.hpp"

namespace qsl {

// ---------- LMR density-matrix exponentiation ----------

struct LmrConfig {
  double t;   // evolution time
  int steps;  // partial-swap steps; one fresh copy of rho per step
  int copies() const { return steps; }
};

// n-fold composition of sigma -> Tr_B[e^{-iS t/n}(sigma (x) rho)e^{iS t/n}];
// converges to conjugation by e^{-i rho t} at rate ~1/n.
QuantumChannel lmr_channel(const DensityMatrix& rho, const LmrConfig& cfg);

// Controlled variant on (control qubit, system), control the slow factor:
// approximates conjugation by |0><0| (x) I + |1><1| (x) e^{-i rho t}.
QuantumChannel controlled_exponential(const DensityMatrix& rho, double t, int steps);

// ---------- sample-based block-encoding ----------

enum class SampleMode { Ideal, Faithful };

struct SampleChannel {
  QuantumChannel channel;
  long long samples_consumed = 0;
  SampleMode mode = SampleMode::Ideal;
  double per_query_error = 0;  // certified diamond-error bound vs the nominal unitary
};

struct SampleBlockEncodingResult {
  SampleChannel forward;   // approximates conjugation by U_rho
  SampleChannel inverse;   // approximates conjugation by U_rho^dagger
  BlockEncoding nominal;   // pinned U_rho: (2,4,0)-encoding of rho
  long long lmr_steps = 0; // per controlled exponential
};

// Pinned target: dilation of rho/2 padded to 4 ancilla qubits. Faithful mode
// realizes it from controlled e^{+-i rho} (LMR) through the LCU corner
// sin(rho) and an arcsin(x)/2 eigenvalue transform, with a certified
// diamond-error bracket <= delta. Step budget cap 10^6 per channel.
SampleBlockEncodingResult sample_block_encoding(const DensityMatrix& rho, double delta,
                                                SampleMode mode);

// Active-space faithful channels: everything in the construction acts on
// (system (x) 1 ancilla qubit) only; the 4-ancilla channels above are these
// extended by identity on the 3 padding qubits. With `outer_control` every
// stage is additionally controlled on an extra slowest qubit, yielding a
// faithful controlled-U_rho for interference circuits.
struct ActiveSampleChannels {
  SampleChannel forward, inverse;
  Mat nominal;  // (controlled-) dilation of rho/2 on the same space
  int dim;      // (2 or 4) * rho.dim
};
ActiveSampleChannels active_sample_block_encoding(const DensityMatrix& rho, double delta,
                                                  bool outer_control);

// ---------- query circuits and Samplize ----------

struct CircuitGate {
  enum class Kind { Fixed, Oracle };
  Kind kind = Kind::Fixed;
  Mat fixed;               // Fixed: unitary on the full (n+m)-qubit space
  bool dagger = false;     // Oracle: apply the inverse slot
  bool controlled = false; // Oracle: controlled on qubit n+4 (needs m >= 5)
};

struct QueryCircuit {
  int system_qubits = 1;
  int oracle_ancillas = 4;  // m >= 4
  std::vector<CircuitGate> gates;

  int query_count() const;
  int total_qubits() const { return system_qubits + oracle_ancillas; }
  void validate() const;
  // C[U]: the circuit with `u` (x) I_{m-4} substituted in every slot.
  Mat instantiate(const Mat& u) const;
};

// Replace every oracle slot by the sample block-encoding channel at
// per-query budget delta/Q and compose.
SampleChannel samplize(const QueryCircuit& circuit, const DensityMatrix& rho, double delta,
                       SampleMode mode);

// ---------- lower-bound instance check ----------

struct LowerBoundReport {
  double measured;  // channel trace distance of F[rho] from e^{-i rho t} conjugation
  double bound;     // delta + 5 eps
  bool pass;
  double eps, delta;
};

// Builds F[rho] from an eps-perturbed block-encoding of e^{-i rho t}
// further perturbed by a channel at trace distance delta, and checks the
// composite closeness bound.
LowerBoundReport lower_bound_instance_check(const DensityMatrix& rho, double t, double eps,
                                            double delta, std::uint64_t seed);

// ---------- superoperator helpers (exposed for tests/benchmarks) ----------

Mat superop_from_kraus(const std::vector<Mat>& kraus);
Mat choi_from_superop(const Mat& s, int in_dim, int out_dim);
QuantumChannel channel_from_superop(const Mat& s, int in_dim, int out_dim);

}  // namespace qsl
