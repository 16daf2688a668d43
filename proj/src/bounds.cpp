#include "qsl/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "qsl/errors.hpp"
#include "qsl/rng.hpp"

namespace qsl {
namespace {

Mat diag_state(const std::vector<double>& p) {
  Mat m = Mat::Zero(int(p.size()), int(p.size()));
  for (int i = 0; i < int(p.size()); ++i) m(i, i) = p[i];
  return m;
}

Mat kron_power(const Mat& a, int s) {
  Mat out = Mat::Identity(1, 1);
  for (int i = 0; i < s; ++i) out = tensor(out, a);
  return out;
}

}  // namespace

HardInstancePair make_distinguishing_pair(int N, double delta) {
  if (N < 2) throw ParameterError("make_distinguishing_pair: N must be >= 2");
  if (!(delta > 0.0) || !(delta < 1.0 - 1.0 / N))
    throw ParameterError("make_distinguishing_pair: delta outside (0, 1 - 1/N)");
  std::vector<double> p(N, delta / (N - 1));
  p[0] = 1.0 - delta;
  HardInstancePair pair{DensityMatrix(diag_state(p), N),
                        DensityMatrix(Mat::Identity(N, N) / double(N), N),
                        "near-pure spike vs maximally mixed", 1.0 - delta - 1.0 / N};
  double recomputed = trace_norm(pair.rho0.data - pair.rho1.data) / 2.0;
  if (std::fabs(recomputed - pair.analytic_gap) > 1e-9)
    throw ParameterError("make_distinguishing_pair: analytic gap mismatch");
  return pair;
}

DensityMatrix make_mixedness_instance(int N, double eps, double z) {
  if (N < 2) throw ParameterError("make_mixedness_instance: N must be >= 2");
  if (!(eps >= 0.0) || eps >= 1.0)
    throw ParameterError("make_mixedness_instance: eps outside [0,1)");
  if (eps > 0.0 && !(z >= eps / (N - 1) && z <= 1.0 - eps))
    throw ParameterError("make_mixedness_instance: z outside [eps/(N-1), 1-eps]");
  if (eps == 0.0) return DensityMatrix(Mat::Identity(N, N) / double(N));
  int s = std::clamp(int(std::lround(z * N)), 1, N - 1);
  int t = N - s;
  std::vector<double> p(N);
  for (int i = 0; i < N; ++i)
    p[i] = (i < s) ? 1.0 / N + eps / s : 1.0 / N - eps / t;
  if (p.back() < -1e-15)
    throw ParameterError("make_mixedness_instance: negative mass, z too small for eps");
  DensityMatrix rho(diag_state(p));
  double td = trace_norm(rho.data - Mat::Identity(N, N) / double(N)) / 2.0;
  if (std::fabs(td - eps) > 1e-10)
    throw ParameterError("make_mixedness_instance: trace distance drifted from eps");
  return rho;
}

VerifierReport verify_log_eq(int grid_eps, int grid_z) {
  VerifierReport rep;
  rep.name = "log-inequality";
  rep.min_margin = 1e300;
  for (int i = 1; i <= grid_eps; ++i) {
    double eps = 0.5 * double(i) / double(grid_eps + 1);
    for (int j = 1; j <= grid_z; ++j) {
      double z = (1.0 - eps) * double(j) / double(grid_z);
      double lhs = (z + eps) * std::log1p(eps / z) +
                   (1.0 - z - eps) * std::log1p(-eps / (1.0 - z));
      double margin = lhs - eps * eps;
      ++rep.points;
      if (margin < rep.min_margin) {
        rep.min_margin = margin;
        rep.arg_min = {{"eps", eps}, {"z", z}};
      }
    }
  }
  rep.pass = rep.min_margin > 0.0;
  return rep;
}

VerifierReport verify_renyi_lt1_ineq(const std::vector<std::vector<double>>& distributions,
                                     double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ParameterError("verify_renyi_lt1_ineq: alpha outside (0,1)");
  VerifierReport rep;
  rep.name = "renyi-lt1-deficit";
  rep.min_margin = 1e300;
  for (size_t idx = 0; idx < distributions.size(); ++idx) {
    const auto& p = distributions[idx];
    int n = int(p.size());
    if (n < 1) throw ParameterError("verify_renyi_lt1_ineq: empty distribution");
    double total = 0, dev = 0, palpha = 0;
    for (double x : p) {
      if (x < -1e-12) throw ParameterError("verify_renyi_lt1_ineq: negative mass");
      total += x;
      dev += std::fabs(x - 1.0 / n);
      palpha += std::pow(std::max(x, 0.0), alpha);
    }
    if (std::fabs(total - 1.0) > 1e-9)
      throw ParameterError("verify_renyi_lt1_ineq: distribution not normalized");
    double eps = dev / 2.0;
    double rhs = (1.0 - alpha * (1.0 - alpha) * eps * eps) * std::pow(double(n), 1.0 - alpha);
    double margin = rhs - palpha;
    ++rep.points;
    if (margin < rep.min_margin) {
      rep.min_margin = margin;
      rep.arg_min = {{"index", double(idx)}, {"eps", eps}, {"n", double(n)}};
    }
  }
  rep.pass = rep.min_margin >= 0.0;
  return rep;
}

HelstromReport helstrom_bound_check(const DensityMatrix& rho0, const DensityMatrix& rho1,
                                    int copies, long long trials, std::uint64_t seed) {
  if (rho0.dim != rho1.dim) throw DimensionError("helstrom_bound_check: dim mismatch");
  if (copies < 1 || trials < 1)
    throw ParameterError("helstrom_bound_check: copies and trials must be >= 1");
  // tensor() enforces the global dimension cap while building the copies.
  Mat a = kron_power(rho0.data, copies);
  Mat b = kron_power(rho1.data, copies);
  Mat diff = a - b;

  HelstromReport rep;
  rep.copies = copies;
  rep.trials = trials;
  rep.copies_half_norm = trace_norm(diff) / 2.0;
  rep.bound = 0.5 * (1.0 + rep.copies_half_norm);

  // Optimal projector: positive spectral part of the difference.
  Mat proj = matrix_function(((diff + diff.adjoint()) / 2.0).eval(),
                             [](double x) { return x > 0.0 ? 1.0 : 0.0; });
  double acc0 = std::clamp((proj * a).trace().real(), 0.0, 1.0);  // guess 0 | state 0
  double acc1 = std::clamp((proj * b).trace().real(), 0.0, 1.0);  // guess 0 | state 1

  SplitRng rng(seed);
  long long successes = 0;
  for (long long i = 0; i < trials; ++i) {
    bool pick1 = rng.uniform() < 0.5;
    bool guess0 = rng.uniform() < (pick1 ? acc1 : acc0);
    if (guess0 != pick1) ++successes;
  }
  rep.empirical_success = double(successes) / double(trials);
  rep.sigma = std::sqrt(std::max(rep.bound * (1.0 - rep.bound), 0.25 / double(trials)) /
                        double(trials));
  rep.pass = rep.empirical_success <= rep.bound + 3.0 * rep.sigma;

  Mat s0 = matrix_function(rho0.data, [](double x) { return std::sqrt(std::max(x, 0.0)); });
  Mat s1 = matrix_function(rho1.data, [](double x) { return std::sqrt(std::max(x, 0.0)); });
  double fid = std::clamp(trace_norm(s0 * s1), 0.0, 1.0);
  rep.fidelity_rhs = std::sqrt(std::max(1.0 - std::pow(fid, 2.0 * copies), 0.0));
  rep.fidelity_pass = rep.copies_half_norm <= rep.fidelity_rhs + 1e-10;
  return rep;
}

VerifierReport verify_alpha_ordering(const std::vector<DensityMatrix>& states,
                                     const std::vector<double>& alphas) {
  for (double a : alphas)
    if (!(a > 1.0)) throw ParameterError("verify_alpha_ordering: alphas must exceed 1");
  std::vector<double> sorted = alphas;
  std::sort(sorted.begin(), sorted.end());
  VerifierReport rep;
  rep.name = "alpha-ordering";
  rep.min_margin = 1e300;
  for (size_t idx = 0; idx < states.size(); ++idx) {
    const DensityMatrix& rho = states[idx];
    double s = von_neumann_entropy(rho);
    double prev = 1e300;
    for (double a : sorted) {
      double sa = renyi_entropy(rho, a);
      double margin = std::min(s + 1e-10 - sa, prev + 1e-10 - sa);
      prev = sa;
      ++rep.points;
      if (margin < rep.min_margin) {
        rep.min_margin = margin;
        rep.arg_min = {{"index", double(idx)}, {"alpha", a}};
      }
    }
  }
  rep.pass = rep.min_margin >= 0.0;
  return rep;
}

}  // namespace qsl
