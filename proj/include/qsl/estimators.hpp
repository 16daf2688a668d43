#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qsl/qet.hpp"
#include "qsl/samplizer.hpp"

namespace qsl {

class SplitRng;

// Exact-expectation mode evaluates acceptance probabilities analytically
// (verifies the deterministic error lemmas); sampled mode draws shot
// outcomes through the binomial fast path (verifies the probabilistic
// theorems).
enum class EvalMode { ExactExpectation, Sampled };

struct VonNeumannParams {
  double eps, fail_prob;
  int rank;
  double delta_p, eps_p, delta_q, delta_a, eps_h;
  long long k;  // Hadamard-test shots

  static VonNeumannParams resolve(double eps, double fail_prob, int rank);
  std::vector<std::pair<std::string, double>> snapshot() const;
};

struct RenyiParams {
  double alpha, eps, fail_prob, promise_p;
  int rank;
  bool gt1;
  double beta, delta_p, eps_p, delta_q, delta_a;
  long long k;  // shots per batch
  int m;        // median batches

  static RenyiParams resolve(double alpha, double eps, double fail_prob, int rank,
                             double promise_p);
  double rescale_factor() const;  // 16 (4 beta)^{alpha-1} or 16 (2 delta_p)^{alpha-1}
  std::vector<std::pair<std::string, double>> snapshot() const;
};

struct EstimatorReport {
  double estimate = 0, truth = 0, abs_error = 0;
  double bound = 0;  // analytic error bound for the configuration, where defined
  long long shots_used = 0, samples_consumed = 0;
  std::uint64_t seed = 0;
  SampleMode sample_mode = SampleMode::Ideal;
  EvalMode eval_mode = EvalMode::ExactExpectation;
  std::vector<std::pair<std::string, double>> params;
};

// ---------- subroutines (block-encoding level) ----------

EigenTransformResult von_neumann_subroutine(const BlockEncoding& u, const VonNeumannParams& p);
EigenTransformResult renyi_gt1_subroutine(const BlockEncoding& u, const RenyiParams& p);
EigenTransformResult renyi_lt1_subroutine(const BlockEncoding& u, const RenyiParams& p);

// Pinned (1,4,0)-encoding of rho/2 (dilation padded to 4 ancillas).
BlockEncoding pinned_half_encoding(const DensityMatrix& rho);

// Ideal-mode analytic acceptance probabilities of the measurement circuits.
double von_neumann_pa(const DensityMatrix& rho, const VonNeumannParams& p);
double renyi_pa(const DensityMatrix& rho, const RenyiParams& p);
// Faithful-mode analogues through the sample-based channels; reports the
// copies of rho consumed per circuit application.
double von_neumann_pa_faithful(const DensityMatrix& rho, const VonNeumannParams& p,
                               long long* samples_per_shot);
double renyi_pa_faithful(const DensityMatrix& rho, const RenyiParams& p,
                         long long* samples_per_shot);

// ---------- estimators ----------

EstimatorReport estimate_von_neumann(const DensityMatrix& rho, double eps, double fail_prob,
                                     SampleMode smode, EvalMode emode, std::uint64_t seed);

struct PromiseEstimate {
  double p_tilde = 0;
  long long shots = 0, samples = 0;
};
PromiseEstimate estimate_renyi_gt1_promise(const DensityMatrix& rho, double alpha,
                                           double promise_p, double eps, double fail_prob,
                                           SampleMode smode, EvalMode emode, SplitRng& rng);
PromiseEstimate estimate_renyi_lt1_promise(const DensityMatrix& rho, double alpha,
                                           double promise_p, double eps, double fail_prob,
                                           SampleMode smode, EvalMode emode, SplitRng& rng);
PromiseEstimate estimate_renyi_gt1(const DensityMatrix& rho, double alpha, double eps,
                                   double fail_prob, SampleMode smode, EvalMode emode,
                                   SplitRng& rng);
PromiseEstimate estimate_renyi_lt1(const DensityMatrix& rho, double alpha, double eps,
                                   double fail_prob, SampleMode smode, EvalMode emode,
                                   SplitRng& rng);

EstimatorReport estimate_renyi_alpha(const DensityMatrix& rho, double alpha, double eps,
                                     double fail_prob, SampleMode smode, EvalMode emode,
                                     std::uint64_t seed);

EstimatorReport estimate_purity_swap(const DensityMatrix& rho, double eps, double fail_prob,
                                     std::uint64_t seed);

// One binomial draw, distributed identically to k Bernoulli(p) trials.
long long binomial_fast_path(double p, long long k, std::uint64_t seed);

}  // namespace qsl
