#include "qsl/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "qsl/chebyshev.hpp"
#include "qsl/errors.hpp"
#include "qsl/polyapprox.hpp"
#include "qsl/rng.hpp"

namespace qsl {
namespace {

constexpr double kLn2 = 0.6931471805599453;

Mat eye(int d) { return Mat::Identity(d, d); }

int log2_dim(int dim) {
  int n = 0;
  while ((1 << n) < dim) ++n;
  if ((1 << n) != dim) throw DimensionError("estimators: state dim must be a power of 2");
  return n;
}

// Certified polynomials are expensive to build at the small delta_p the
// algorithms demand; cache by rounded parameters.
enum class PolyKind { Log4, PosPower, NegPowerHalved };

struct PolyKey {
  PolyKind kind;
  long long a, b, c;
  bool operator<(const PolyKey& o) const {
    return std::tie(kind, a, b, c) < std::tie(o.kind, o.a, o.b, o.c);
  }
};

long long quant(double x) { return llround(x * 1e14); }

// p -> p/2 with all certificate regions rescaled and re-checked.
CertifiedPolynomial halved(const CertifiedPolynomial& src) {
  CertifiedPolynomial p = src;
  for (double& v : p.coeffs_chebyshev) v *= 0.5;
  for (PolyRegion& r : p.regions) {
    if (r.kind == PolyRegion::Kind::Band) {
      r.band_lo *= 0.5;
      r.band_hi *= 0.5;
    } else {
      auto f = r.target;
      r.target = [f](double x) { return 0.5 * f(x); };
      r.tol *= 0.5;
    }
  }
  p.global_bound *= 0.5;
  certify(p);
  if (!p.certified)
    throw CertificationError("estimators: rescaled polynomial failed re-certification", 0);
  return p;
}

const CertifiedPolynomial& cached_poly(const PolyKey& key,
                                       const std::function<CertifiedPolynomial()>& build) {
  static std::map<PolyKey, CertifiedPolynomial> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build()).first;
  return it->second;
}

const CertifiedPolynomial& log_poly(const VonNeumannParams& p) {
  return cached_poly({PolyKind::Log4, quant(p.delta_p), quant(p.eps_p), 4},
                     [&] { return build_log(p.delta_p, p.eps_p, 4); });
}

const CertifiedPolynomial& renyi_poly(const RenyiParams& p) {
  if (p.gt1) {
    double c = (p.alpha - 1.0) / 2.0;
    return cached_poly({PolyKind::PosPower, quant(c), quant(p.delta_p),
                        quant(p.beta) + quant(p.eps_p) * 3},
                       [&] { return build_positive_power(c, p.delta_p, p.beta, p.eps_p); });
  }
  double c = (1.0 - p.alpha) / 2.0;
  return cached_poly(
      {PolyKind::NegPowerHalved, quant(c), quant(p.delta_p), quant(p.eps_p)},
      [&] { return halved(build_negative_power(c, p.delta_p, std::min(2.0 * p.eps_p, 0.49))); });
}

// Dilation core of p applied to rho/2, on (system (x) 1 qubit).
Mat transform_core(const DensityMatrix& rho, const CertifiedPolynomial& p) {
  const auto& c = p.coeffs_chebyshev;
  Mat pa = matrix_function((rho.data / 2.0).eval(),
                           [&c](double x) { return cheb::eval(c, std::clamp(x, -1.0, 1.0)); });
  return dilate_to_unitary(pa).data;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

}  // namespace

VonNeumannParams VonNeumannParams::resolve(double eps, double fail_prob, int rank) {
  if (!(eps > 0.0) || !(eps < 1.0))
    throw ParameterError("VonNeumannParams: eps outside (0,1)");
  if (!(fail_prob > 0.0) || !(fail_prob < 1.0))
    throw ParameterError("VonNeumannParams: fail_prob outside (0,1)");
  if (rank < 1) throw ParameterError("VonNeumannParams: rank must be >= 1");
  VonNeumannParams p;
  p.eps = eps;
  p.fail_prob = fail_prob;
  p.rank = rank;
  p.delta_p = eps / (128.0 * rank * std::log(32.0 * rank / eps));
  if (!(p.delta_p > 0.0) || p.delta_p > 1.0 / 3.0)
    throw ParameterError("VonNeumannParams: degenerate delta_p outside (0, 1/3]");
  double l = std::log(2.0 / p.delta_p);
  p.eps_p = eps / (32.0 * l);
  p.delta_q = eps / (32.0 * rank * l);
  p.delta_a = p.eps_h = eps / (64.0 * l);
  p.k = static_cast<long long>(std::ceil(std::log(2.0 / fail_prob) / (2.0 * p.eps_h * p.eps_h)));
  return p;
}

std::vector<std::pair<std::string, double>> VonNeumannParams::snapshot() const {
  return {{"eps", eps},         {"fail_prob", fail_prob}, {"rank", double(rank)},
          {"delta_p", delta_p}, {"eps_p", eps_p},         {"delta_q", delta_q},
          {"delta_a", delta_a}, {"eps_h", eps_h},         {"k", double(k)}};
}

RenyiParams RenyiParams::resolve(double alpha, double eps, double fail_prob, int rank,
                                 double promise_p) {
  if (!(alpha > 0.0) || alpha == 1.0)
    throw ParameterError("RenyiParams: alpha must be in (0,1) or (1,inf)");
  if (!(eps > 0.0) || !(eps < 1.0)) throw ParameterError("RenyiParams: eps outside (0,1)");
  if (!(fail_prob > 0.0) || !(fail_prob < 1.0))
    throw ParameterError("RenyiParams: fail_prob outside (0,1)");
  if (rank < 1 || !(promise_p > 0.0)) throw ParameterError("RenyiParams: bad rank or promise");
  RenyiParams p;
  p.alpha = alpha;
  p.eps = eps;
  p.fail_prob = fail_prob;
  p.rank = rank;
  p.promise_p = promise_p;
  p.gt1 = alpha > 1.0;
  p.beta = std::min(std::pow(10.0 * promise_p, 1.0 / alpha), 0.5);
  p.delta_p = 0.5 * std::pow(promise_p * eps / (40.0 * rank), 1.0 / alpha);
  double scale = p.gt1 ? std::pow(4.0 * p.beta, 1.0 - alpha)
                       : std::pow(2.0 * p.delta_p, 1.0 - alpha);
  p.eps_p = scale * promise_p * eps / 256.0;
  p.delta_q = scale * promise_p * eps / (128.0 * rank);
  p.delta_a = scale * promise_p * eps / 128.0;
  p.k = static_cast<long long>(std::ceil(65536.0 / (scale * promise_p * eps * eps)));
  p.m = static_cast<int>(std::ceil(8.0 * std::log(1.0 / fail_prob)));
  if (p.gt1 && !(p.delta_p > 0.0 && p.delta_p <= p.beta && p.beta <= 0.5))
    throw ParameterError("RenyiParams: need 0 < delta_p <= beta <= 1/2");
  if (!p.gt1 && !(p.delta_p > 0.0 && p.delta_p < 0.5))
    throw ParameterError("RenyiParams: degenerate delta_p outside (0, 1/2)");
  return p;
}

double RenyiParams::rescale_factor() const {
  return 16.0 * (gt1 ? std::pow(4.0 * beta, alpha - 1.0) : std::pow(2.0 * delta_p, alpha - 1.0));
}

std::vector<std::pair<std::string, double>> RenyiParams::snapshot() const {
  return {{"alpha", alpha},     {"eps", eps},     {"fail_prob", fail_prob},
          {"rank", double(rank)}, {"promise_p", promise_p}, {"beta", beta},
          {"delta_p", delta_p}, {"eps_p", eps_p}, {"delta_q", delta_q},
          {"delta_a", delta_a}, {"k", double(k)}, {"m", double(m)}};
}

BlockEncoding pinned_half_encoding(const DensityMatrix& rho) {
  int n = log2_dim(rho.dim);
  Mat u = tensor(dilate_to_unitary((rho.data / 2.0).eval()).data, eye(8));
  return BlockEncoding(UnitaryMatrix(u), n, 4, 1.0, 0.0, (rho.data / 2.0).eval());
}

EigenTransformResult von_neumann_subroutine(const BlockEncoding& u, const VonNeumannParams& p) {
  return eigen_transform(u, log_poly(p), p.delta_q);
}

EigenTransformResult renyi_gt1_subroutine(const BlockEncoding& u, const RenyiParams& p) {
  if (!p.gt1) throw ParameterError("renyi_gt1_subroutine: params resolved for alpha < 1");
  return eigen_transform(u, renyi_poly(p), p.delta_q);
}

EigenTransformResult renyi_lt1_subroutine(const BlockEncoding& u, const RenyiParams& p) {
  if (p.gt1) throw ParameterError("renyi_lt1_subroutine: params resolved for alpha > 1");
  return eigen_transform(u, renyi_poly(p), p.delta_q);
}

double von_neumann_pa(const DensityMatrix& rho, const VonNeumannParams& p) {
  auto et = von_neumann_subroutine(pinned_half_encoding(rho), p);
  return hadamard_test(et.encoding, rho).p1;
}

double renyi_pa(const DensityMatrix& rho, const RenyiParams& p) {
  auto et = p.gt1 ? renyi_gt1_subroutine(pinned_half_encoding(rho), p)
                  : renyi_lt1_subroutine(pinned_half_encoding(rho), p);
  Mat c = et.encoding.corner();
  return std::clamp((c * rho.data * c.adjoint()).trace().real(), 0.0, 1.0);
}

double von_neumann_pa_faithful(const DensityMatrix& rho, const VonNeumannParams& p,
                               long long* samples_per_shot) {
  // Controlled faithful U_rho on (test qubit (x) system (x) dilation qubit);
  // the exact repair ctl(core . dilation^dagger) upgrades it to the
  // controlled subroutine unitary.
  ActiveSampleChannels act = active_sample_block_encoding(rho, p.delta_a, true);
  Mat d_half = dilate_to_unitary((rho.data / 2.0).eval()).data;
  Mat core = transform_core(rho, log_poly(p));
  int twod = 2 * rho.dim;
  Mat p0 = Mat::Zero(2, 2), p1 = Mat::Zero(2, 2);
  p0(0, 0) = 1;
  p1(1, 1) = 1;
  Mat repair = tensor(p0, eye(twod)) + tensor(p1, (core * d_half.adjoint()).eval());
  Mat h2(2, 2);
  h2 << 1, 1, 1, -1;
  h2 /= std::sqrt(2.0);
  Mat hc = tensor(h2, eye(twod));

  Mat e00 = Mat::Zero(2, 2);
  e00(0, 0) = 1;
  Mat state = tensor(e00, tensor(rho.data, e00));
  state = (hc * state * hc.adjoint()).eval();
  state = act.forward.channel.apply(state);
  state = (repair * state * repair.adjoint()).eval();
  state = (hc * state * hc.adjoint()).eval();
  if (samples_per_shot) *samples_per_shot = act.forward.samples_consumed;
  double pr = (tensor(e00, eye(twod)) * state).trace().real();
  return std::clamp(pr, 0.0, 1.0);
}

double renyi_pa_faithful(const DensityMatrix& rho, const RenyiParams& p,
                         long long* samples_per_shot) {
  ActiveSampleChannels act = active_sample_block_encoding(rho, p.delta_a, false);
  Mat d_half = dilate_to_unitary((rho.data / 2.0).eval()).data;
  Mat core = transform_core(rho, renyi_poly(p));
  Mat repair = (core * d_half.adjoint()).eval();

  Mat e00 = Mat::Zero(2, 2);
  e00(0, 0) = 1;
  Mat state = tensor(rho.data, e00);
  state = act.forward.channel.apply(state);
  state = (repair * state * repair.adjoint()).eval();
  if (samples_per_shot) *samples_per_shot = act.forward.samples_consumed;
  double pr = (tensor(eye(rho.dim), e00) * state).trace().real();
  return std::clamp(pr, 0.0, 1.0);
}

EstimatorReport estimate_von_neumann(const DensityMatrix& rho, double eps, double fail_prob,
                                     SampleMode smode, EvalMode emode, std::uint64_t seed) {
  VonNeumannParams p = VonNeumannParams::resolve(eps, fail_prob, rho.rank_or_dim());
  long long per_shot = 0;
  double pa = (smode == SampleMode::Ideal) ? von_neumann_pa(rho, p)
                                           : von_neumann_pa_faithful(rho, p, &per_shot);
  EstimatorReport rep;
  rep.seed = seed;
  rep.sample_mode = smode;
  rep.eval_mode = emode;
  rep.params = p.snapshot();
  double xbar = pa;
  if (emode == EvalMode::Sampled) {
    rep.shots_used = p.k;
    xbar = double(binomial_fast_path(pa, p.k, seed)) / double(p.k);
  }
  rep.samples_consumed = per_shot * std::max<long long>(rep.shots_used, 1);
  double l = std::log(2.0 / p.delta_p);
  rep.estimate = 4.0 * (2.0 * xbar - 1.0) * l - kLn2;
  rep.truth = von_neumann_entropy(rho);
  rep.abs_error = std::fabs(rep.estimate - rep.truth);
  double inner = 2.0 * p.rank * p.delta_p + p.eps_p + p.rank * p.delta_q;
  if (smode == SampleMode::Faithful) inner += 2.0 * p.delta_a;
  if (emode == EvalMode::Sampled) inner += 2.0 * p.eps_h;
  rep.bound = 4.0 * inner * l;
  return rep;
}

namespace {

PromiseEstimate renyi_promise(const DensityMatrix& rho, const RenyiParams& p, SampleMode smode,
                              EvalMode emode, SplitRng& rng) {
  long long per_shot = 0;
  double pa = (smode == SampleMode::Ideal) ? renyi_pa(rho, p)
                                           : renyi_pa_faithful(rho, p, &per_shot);
  double f = p.rescale_factor();
  PromiseEstimate out;
  if (emode == EvalMode::ExactExpectation) {
    out.p_tilde = f * pa;
    out.samples = per_shot;
    return out;
  }
  std::vector<double> batches(p.m);
  for (int j = 0; j < p.m; ++j) {
    SplitRng sub = rng.split(static_cast<std::uint64_t>(j));
    batches[j] = f * double(sub.binomial(p.k, pa)) / double(p.k);
  }
  out.p_tilde = median_of(std::move(batches));
  out.shots = static_cast<long long>(p.m) * p.k;
  out.samples = per_shot * static_cast<long long>(p.m) * p.k;
  return out;
}

}  // namespace

PromiseEstimate estimate_renyi_gt1_promise(const DensityMatrix& rho, double alpha,
                                           double promise_p, double eps, double fail_prob,
                                           SampleMode smode, EvalMode emode, SplitRng& rng) {
  RenyiParams p = RenyiParams::resolve(alpha, eps, fail_prob, rho.rank_or_dim(), promise_p);
  return renyi_promise(rho, p, smode, emode, rng);
}

PromiseEstimate estimate_renyi_lt1_promise(const DensityMatrix& rho, double alpha,
                                           double promise_p, double eps, double fail_prob,
                                           SampleMode smode, EvalMode emode, SplitRng& rng) {
  RenyiParams p = RenyiParams::resolve(alpha, eps, fail_prob, rho.rank_or_dim(), promise_p);
  return renyi_promise(rho, p, smode, emode, rng);
}

namespace {

// Annealing recursion, Algorithms 6/10: lambda = 1 +- 1/ln(r), each level
// resolves a coarse (eps=1/4) estimate into the next promise window.
PromiseEstimate renyi_recursive(const DensityMatrix& rho, double alpha, double eps,
                                double fail_prob, SampleMode smode, EvalMode emode, SplitRng& rng,
                                bool gt1, int depth) {
  if (depth > 200) throw ParameterError("estimate_renyi: recursion depth cap exceeded");
  int r = rho.rank_or_dim();
  double lambda = (r >= 2) ? (gt1 ? 1.0 + 1.0 / std::log(double(r))
                                  : 1.0 - 1.0 / std::log(double(r)))
                           : (gt1 ? 1e300 : -1e300);
  bool base = gt1 ? (alpha <= lambda) : (alpha >= lambda);
  if (base) {
    double p0 = gt1 ? std::exp(-1.0) : 1.0;
    RenyiParams p = RenyiParams::resolve(alpha, eps, fail_prob, r, p0);
    return renyi_promise(rho, p, smode, emode, rng);
  }
  SplitRng sub_rng = rng.split(static_cast<std::uint64_t>(depth + 1000));
  PromiseEstimate sub = renyi_recursive(rho, alpha / lambda, 0.25, fail_prob / 2.0, smode, emode,
                                        sub_rng, gt1, depth + 1);
  double promise = std::pow(4.0 * sub.p_tilde / 5.0, lambda) * (gt1 ? std::exp(-1.0) : 1.0);
  RenyiParams p = RenyiParams::resolve(alpha, eps, fail_prob / 2.0, r, promise);
  PromiseEstimate out = renyi_promise(rho, p, smode, emode, rng);
  out.shots += sub.shots;
  out.samples += sub.samples;
  return out;
}

}  // namespace

PromiseEstimate estimate_renyi_gt1(const DensityMatrix& rho, double alpha, double eps,
                                   double fail_prob, SampleMode smode, EvalMode emode,
                                   SplitRng& rng) {
  if (!(alpha > 1.0)) throw ParameterError("estimate_renyi_gt1: alpha must exceed 1");
  return renyi_recursive(rho, alpha, eps, fail_prob, smode, emode, rng, true, 0);
}

PromiseEstimate estimate_renyi_lt1(const DensityMatrix& rho, double alpha, double eps,
                                   double fail_prob, SampleMode smode, EvalMode emode,
                                   SplitRng& rng) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ParameterError("estimate_renyi_lt1: alpha must be in (0,1)");
  return renyi_recursive(rho, alpha, eps, fail_prob, smode, emode, rng, false, 0);
}

EstimatorReport estimate_renyi_alpha(const DensityMatrix& rho, double alpha, double eps,
                                     double fail_prob, SampleMode smode, EvalMode emode,
                                     std::uint64_t seed) {
  if (alpha == 1.0)
    throw ParameterError("estimate_renyi_alpha: alpha = 1 is the von Neumann case");
  double eps_mult = std::min(std::fabs(1.0 - alpha) * eps / 2.0, 0.9);
  SplitRng rng(seed);
  PromiseEstimate pe = (alpha > 1.0)
                           ? estimate_renyi_gt1(rho, alpha, eps_mult, fail_prob, smode, emode, rng)
                           : estimate_renyi_lt1(rho, alpha, eps_mult, fail_prob, smode, emode, rng);
  EstimatorReport rep;
  rep.seed = seed;
  rep.sample_mode = smode;
  rep.eval_mode = emode;
  rep.shots_used = pe.shots;
  rep.samples_consumed = pe.samples;
  rep.estimate = std::log(std::max(pe.p_tilde, 1e-300)) / (1.0 - alpha);
  rep.truth = renyi_entropy(rho, alpha);
  rep.abs_error = std::fabs(rep.estimate - rep.truth);
  rep.bound = eps;
  rep.params = {{"alpha", alpha}, {"eps", eps}, {"eps_mult", eps_mult},
                {"fail_prob", fail_prob}, {"p_tilde", pe.p_tilde}};
  return rep;
}

EstimatorReport estimate_purity_swap(const DensityMatrix& rho, double eps, double fail_prob,
                                     std::uint64_t seed) {
  if (!(eps > 0.0) || !(eps < 1.0)) throw ParameterError("estimate_purity_swap: eps outside (0,1)");
  if (!(fail_prob > 0.0) || !(fail_prob < 1.0))
    throw ParameterError("estimate_purity_swap: fail_prob outside (0,1)");
  double p2 = (rho.data * rho.data).trace().real();
  double p0 = (1.0 + p2) / 2.0;  // controlled-SWAP outcome-0 probability
  int r = rho.rank_or_dim();
  long long kb = static_cast<long long>(std::ceil(64.0 * r * r / (eps * eps)));
  int m = static_cast<int>(std::ceil(8.0 * std::log(1.0 / fail_prob)));
  SplitRng rng(seed);
  std::vector<double> batches(m);
  for (int j = 0; j < m; ++j) {
    SplitRng sub = rng.split(static_cast<std::uint64_t>(j));
    batches[j] = 2.0 * double(sub.binomial(kb, p0)) / double(kb) - 1.0;
  }
  double ptil = std::max(median_of(std::move(batches)), 1e-12);
  EstimatorReport rep;
  rep.seed = seed;
  rep.eval_mode = EvalMode::Sampled;
  rep.shots_used = static_cast<long long>(m) * kb;
  rep.samples_consumed = 2 * rep.shots_used;  // two copies of rho per SWAP test
  rep.estimate = -std::log(ptil);
  rep.truth = renyi_entropy(rho, 2.0);
  rep.abs_error = std::fabs(rep.estimate - rep.truth);
  rep.bound = eps;
  rep.params = {{"eps", eps}, {"fail_prob", fail_prob}, {"k_batch", double(kb)},
                {"m", double(m)}, {"p0_exact", p0}};
  return rep;
}

long long binomial_fast_path(double p, long long k, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("binomial_fast_path: p outside [0,1]");
  if (k < 1) throw ParameterError("binomial_fast_path: k must be >= 1");
  SplitRng rng(seed);
  return static_cast<long long>(rng.binomial(static_cast<std::uint64_t>(k), p));
}

}  // namespace qsl
