#pragma once

#include "qsl/polyapprox.hpp"
#include "qsl/qcore.hpp"

namespace qsl {

struct EigenTransformResult {
  BlockEncoding encoding;
  int query_count;      // = polynomial degree, unit-cost accounting
  int added_ancillas;   // always 2
  double realized_error;
  double error_bound;   // 4 d sqrt(eps_in/alpha) + delta + 1e-9
};

// Block-encoding of p(A/alpha) from a block-encoding of Hermitian A.
// Spectral realization: p is applied to the (symmetrized) realized corner
// and the result is dilated back to a unitary with 2 extra ancilla qubits.
EigenTransformResult eigen_transform(const BlockEncoding& u, const CertifiedPolynomial& p,
                                     double delta);

struct HadamardTestResult {
  double p1;     // probability of outcome 1
  Mat effect;    // Hermitian E with p1 = tr(E rho)
  // Classical-output two-outcome measurement channel (out_dim = 2).
  QuantumChannel channel() const;
  int in_dim;
};

// One-ancilla interference test: p1 = (1 + Re tr(A rho))/2, or the Im
// variant, for the corner A of a scale-1 block-encoding.
HadamardTestResult hadamard_test(const BlockEncoding& u, const DensityMatrix& rho,
                                 bool imaginary_part = false);

struct HamiltonianSimulationResult {
  BlockEncoding encoding;  // (1, a+2, eps)-encoding of e^{-iHt}
  int query_count;         // ceil(|t| + log(1/eps)), scaling accounting only
};

HamiltonianSimulationResult hamiltonian_simulation(const BlockEncoding& u, double t, double eps);

}  // namespace qsl
