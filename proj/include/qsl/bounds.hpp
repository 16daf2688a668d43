#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qsl/qcore.hpp"

namespace qsl {

// Hard-instance generators and numeric verifiers for the distinguishability
// and entropy-deficit inequalities backing the sample lower bounds. Lower
// bounds are verified as inequalities at concrete instances, never asserted
// as complexity statements.

struct HardInstancePair {
  DensityMatrix rho0, rho1;
  std::string description;
  double analytic_gap = 0;  // entropy difference or trace distance
};

// rho0 = diag(1 - delta, delta/(N-1), ...), rho1 = I/N;
// analytic_gap = trace distance 1 - delta - 1/N.
HardInstancePair make_distinguishing_pair(int N, double delta);

// State at trace distance exactly eps from I/N: spectrum 1/N + eps/|S| on
// |S| = round(z N) indices and 1/N - eps/|T| on the rest.
// Valid range: eps/(N-1) <= z <= 1 - eps.
DensityMatrix make_mixedness_instance(int N, double eps, double z);

struct VerifierReport {
  std::string name;
  bool pass = false;
  double min_margin = 0;  // smallest slack (negative = violated)
  std::vector<std::pair<std::string, double>> arg_min;  // point achieving it
  long long points = 0;
};

// (z+eps) ln(1+eps/z) + (1-z-eps) ln(1-eps/(1-z)) >= eps^2 on a grid over
// eps in (0,1/2), z in (0, 1-eps].
VerifierReport verify_log_eq(int grid_eps = 100, int grid_z = 100);

// sum p_i^alpha <= (1 - alpha(1-alpha) eps^2) n^{1-alpha} for alpha in (0,1),
// where 2 eps = sum |p_i - 1/n| is computed from each distribution.
VerifierReport verify_renyi_lt1_ineq(const std::vector<std::vector<double>>& distributions,
                                     double alpha);

struct HelstromReport {
  double empirical_success = 0;
  double bound = 0;      // (1 + td) / 2 with td = trace distance of the copies
  double sigma = 0;      // Monte Carlo std dev of the empirical success
  bool pass = false;     // empirical <= bound + 3 sigma
  double copies_half_norm = 0;  // half trace norm of rho0^S - rho1^S
  double fidelity_rhs = 0;      // sqrt(1 - F^{2S})
  bool fidelity_pass = false;   // copies_half_norm <= fidelity_rhs + 1e-10
  long long trials = 0;
  int copies = 0;
};

// Monte Carlo of the optimal two-outcome (Helstrom projective) strategy on
// S copies, against the analytic success bound and the fidelity bound on
// the trace norm of the copy difference.
HelstromReport helstrom_bound_check(const DensityMatrix& rho0, const DensityMatrix& rho1,
                                    int copies, long long trials, std::uint64_t seed);

// S_alpha(rho) <= S(rho) for every alpha > 1, and S_alpha nonincreasing in
// alpha across the supplied list.
VerifierReport verify_alpha_ordering(const std::vector<DensityMatrix>& states,
                                     const std::vector<double>& alphas);

}  // namespace qsl
