#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace qsl {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// ---------- basic linear algebra ----------

// Kronecker product, second factor fastest. Checks the global dimension cap.
Mat tensor(const Mat& a, const Mat& b);
Vec tensor(const Vec& a, const Vec& b);

// Trace out all factors not listed in `keep`. dims are the factor dimensions
// in tensor order (first factor slowest); keep indices refer to that order.
Mat partial_trace(const Mat& m, const std::vector<int>& dims, const std::vector<int>& keep);

double trace_norm(const Mat& m);        // sum of singular values
double operator_norm(const Mat& m);     // largest singular value

// f applied to the spectrum of a Hermitian matrix (symmetrized first).
Mat matrix_function(const Mat& herm, const std::function<double(double)>& f);
Mat matrix_function_c(const Mat& herm, const std::function<cd(double)>& f);

// ---------- domain types ----------

struct DensityMatrix {
  int dim;
  Mat data;
  std::optional<int> rank_hint;

  explicit DensityMatrix(Mat m, std::optional<int> rank = std::nullopt);
  // Eigenvalues sorted descending, clipped to [0, inf).
  Eigen::VectorXd eigenvalues() const;
  int rank_or_dim() const { return rank_hint ? *rank_hint : dim; }
};

struct PureState {
  int dim;
  Vec amplitudes;
  explicit PureState(Vec v);
  DensityMatrix to_density() const;
};

struct UnitaryMatrix {
  int dim;
  Mat data;
  explicit UnitaryMatrix(Mat u);
};

struct BlockEncoding {
  UnitaryMatrix unitary;
  int system_qubits;
  int ancilla_qubits;
  double scale;           // alpha
  double encoding_error;  // eps
  std::optional<Mat> target;

  BlockEncoding(UnitaryMatrix u, int n, int a, double alpha, double eps,
                std::optional<Mat> tgt = std::nullopt);
  int system_dim() const { return 1 << system_qubits; }
  int ancilla_dim() const { return 1 << ancilla_qubits; }
  Mat corner() const;  // <0|_a U |0>_a  (ancilla register is the fast factor)
  // Same encoding with extra |0>-padded ancilla qubits appended.
  BlockEncoding padded(int extra_ancillas) const;
};

struct QuantumChannel {
  int in_dim, out_dim;
  std::vector<Mat> kraus;

  QuantumChannel(int in, int out, std::vector<Mat> ks);
  Mat apply(const Mat& rho) const;
  Mat apply_adjoint(const Mat& x) const;  // Heisenberg picture
  Mat choi() const;                       // sum_ij |i><j| (x) Phi(|i><j|)

  static QuantumChannel identity(int d);
  static QuantumChannel from_unitary(const Mat& u);
  static QuantumChannel from_choi(const Mat& j, int in_dim, int out_dim);
  QuantumChannel compose_after(const QuantumChannel& inner) const;  // this o inner
  QuantumChannel tensor_identity(int d) const;                      // this (x) I_d
  // Re-extract a minimal Kraus set from the Choi matrix.
  QuantumChannel compressed() const;
};

// ---------- distances ----------

double trace_norm_distance_states(const DensityMatrix& a, const DensityMatrix& b);

struct ChannelDistanceResult {
  double value;    // certified lower estimate of sup_rho ||(E-F)(rho)||_1
  double spread;   // disagreement across restarts
  bool converged;  // spread <= 1e-6
};
ChannelDistanceResult channel_trace_distance(const QuantumChannel& e, const QuantumChannel& f,
                                             int restarts = 32, std::uint64_t seed = 0x51ab);

struct DiamondDistanceResult {
  double lower = 0, upper = 0;
  bool coarse = false;     // fell back to the norm-sandwich bracket
  bool converged = false;  // bracket width <= 1e-6
};
// Bracket on the diamond norm of e - f. Exact (primal/dual) path up to
// in_dim <= sdp_dim_budget; coarse sandwich bracket beyond.
DiamondDistanceResult diamond_distance(const QuantumChannel& e, const QuantumChannel& f,
                                       int sdp_dim_budget = 16);
// Same, for the difference map directly (choi = J(e) - J(f)).
DiamondDistanceResult diamond_of_difference(const Mat& choi_diff, int in_dim, int out_dim);

// Spectral/SVD dilation: unitary on one extra (appended) qubit whose
// corner equals the contraction `a` exactly.
UnitaryMatrix dilate_to_unitary(const Mat& a);

// ---------- entropy oracles ----------

double von_neumann_entropy(const DensityMatrix& rho);         // -tr(rho ln rho)
double p_alpha(const DensityMatrix& rho, double alpha);       // tr(rho^alpha)
double renyi_entropy(const DensityMatrix& rho, double alpha); // ln(P_alpha)/(1-alpha)

// ---------- random instances (test/experiment helpers) ----------

class SplitRng;
DensityMatrix random_density(int dim, int rank, SplitRng& rng);
Mat random_unitary(int dim, SplitRng& rng);
Vec random_pure(int dim, SplitRng& rng);

}  // namespace qsl
