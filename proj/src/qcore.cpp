#include "qsl/qcore.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

#include "qsl/config.hpp"
#include "qsl/errors.hpp"
#include "qsl/rng.hpp"

namespace qsl {
namespace {

Eigen::SelfAdjointEigenSolver<Mat> eig_herm(const Mat& m) {
  Mat h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  if (es.info() != Eigen::Success) throw Error("eigendecomposition failed");
  return es;
}

// sign(M) for Hermitian M, with sign(0) = 0.
Mat herm_sign(const Mat& m) {
  auto es = eig_herm(m);
  Eigen::VectorXd s = es.eigenvalues();
  for (int i = 0; i < s.size(); ++i) s[i] = (s[i] > 0) - (s[i] < 0);
  return es.eigenvectors() * s.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

// ---------- basic linear algebra ----------

Mat tensor(const Mat& a, const Mat& b) {
  long rows = static_cast<long>(a.rows()) * b.rows();
  long cols = static_cast<long>(a.cols()) * b.cols();
  if (rows > max_total_dim() || cols > max_total_dim())
    throw DimensionError("tensor: dimension " + std::to_string(std::max(rows, cols)) +
                         " exceeds cap " + std::to_string(max_total_dim()));
  Mat out(rows, cols);
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vec tensor(const Vec& a, const Vec& b) {
  long n = static_cast<long>(a.size()) * b.size();
  if (n > max_total_dim()) throw DimensionError("tensor: vector dimension exceeds cap");
  Vec out(n);
  for (long i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

Mat partial_trace(const Mat& m, const std::vector<int>& dims, const std::vector<int>& keep) {
  long total = 1;
  for (int d : dims) {
    if (d <= 0) throw DimensionError("partial_trace: nonpositive factor dimension");
    total *= d;
  }
  if (m.rows() != total || m.cols() != total)
    throw DimensionError("partial_trace: dims product does not match matrix size");

  int nf = static_cast<int>(dims.size());
  std::vector<bool> kept(nf, false);
  for (int k : keep) {
    if (k < 0 || k >= nf) throw DimensionError("partial_trace: keep index out of range");
    kept[k] = true;
  }
  long dkeep = 1, dtrace = 1;
  for (int f = 0; f < nf; ++f) (kept[f] ? dkeep : dtrace) *= dims[f];

  // strides of each factor in the full index (first factor slowest)
  std::vector<long> stride(nf, 1);
  for (int f = nf - 2; f >= 0; --f) stride[f] = stride[f + 1] * dims[f + 1];

  // enumerate kept / traced multi-indices as offsets into the full index
  std::vector<long> keep_off(dkeep, 0), tr_off(dtrace, 0);
  {
    long nk = 1, nt = 1;
    for (int f = 0; f < nf; ++f) {
      if (kept[f]) {
        std::vector<long> next(nk * dims[f]);
        for (long i = 0; i < nk; ++i)
          for (int v = 0; v < dims[f]; ++v) next[i * dims[f] + v] = keep_off[i] + v * stride[f];
        keep_off.assign(next.begin(), next.end());
        nk *= dims[f];
      } else {
        std::vector<long> next(nt * dims[f]);
        for (long i = 0; i < nt; ++i)
          for (int v = 0; v < dims[f]; ++v) next[i * dims[f] + v] = tr_off[i] + v * stride[f];
        tr_off.assign(next.begin(), next.end());
        nt *= dims[f];
      }
    }
    keep_off.resize(nk);
    tr_off.resize(nt);
  }

  Mat out = Mat::Zero(dkeep, dkeep);
  for (long i = 0; i < dkeep; ++i)
    for (long j = 0; j < dkeep; ++j) {
      cd s = 0;
      for (long t = 0; t < dtrace; ++t) s += m(keep_off[i] + tr_off[t], keep_off[j] + tr_off[t]);
      out(i, j) = s;
    }
  return out;
}

double trace_norm(const Mat& m) {
  if (m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-12) {
    auto es = eig_herm(m);
    return es.eigenvalues().cwiseAbs().sum();
  }
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues().sum();
}

double operator_norm(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

Mat matrix_function(const Mat& herm, const std::function<double(double)>& f) {
  auto es = eig_herm(herm);
  Eigen::VectorXd lam = es.eigenvalues();
  for (int i = 0; i < lam.size(); ++i) lam[i] = f(lam[i]);
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
}

Mat matrix_function_c(const Mat& herm, const std::function<cd(double)>& f) {
  auto es = eig_herm(herm);
  Vec lam(es.eigenvalues().size());
  for (int i = 0; i < lam.size(); ++i) lam[i] = f(es.eigenvalues()[i]);
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
}

// ---------- domain types ----------

DensityMatrix::DensityMatrix(Mat m, std::optional<int> rank) : dim(static_cast<int>(m.rows())), data(std::move(m)), rank_hint(rank) {
  if (data.rows() != data.cols() || dim <= 0) throw DimensionError("DensityMatrix: not square");
  if ((data - data.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw ParameterError("DensityMatrix: not Hermitian within 1e-10");
  if (std::abs(data.trace() - cd(1.0)) > 1e-10)
    throw ParameterError("DensityMatrix: trace differs from 1 beyond 1e-10");
  auto es = eig_herm(data);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw ParameterError("DensityMatrix: negative eigenvalue beyond tolerance");
  if (rank_hint) {
    int cnt = 0;
    for (int i = 0; i < es.eigenvalues().size(); ++i)
      if (es.eigenvalues()[i] > 1e-9) ++cnt;
    if (cnt != *rank_hint) throw ParameterError("DensityMatrix: rank_hint mismatch");
  }
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
  auto es = eig_herm(data);
  Eigen::VectorXd lam = es.eigenvalues();
  for (int i = 0; i < lam.size(); ++i) lam[i] = std::max(0.0, lam[i]);
  std::sort(lam.data(), lam.data() + lam.size(), std::greater<double>());
  return lam;
}

PureState::PureState(Vec v) : dim(static_cast<int>(v.size())), amplitudes(std::move(v)) {
  if (std::abs(amplitudes.norm() - 1.0) > 1e-10) throw ParameterError("PureState: not normalized");
}

DensityMatrix PureState::to_density() const {
  return DensityMatrix(amplitudes * amplitudes.adjoint(), 1);
}

UnitaryMatrix::UnitaryMatrix(Mat u) : dim(static_cast<int>(u.rows())), data(std::move(u)) {
  if (data.rows() != data.cols()) throw DimensionError("UnitaryMatrix: not square");
  Mat g = data.adjoint() * data - Mat::Identity(dim, dim);
  if (g.norm() > 1e-9) throw ParameterError("UnitaryMatrix: U'U deviates from I beyond 1e-9");
}

BlockEncoding::BlockEncoding(UnitaryMatrix u, int n, int a, double alpha, double eps,
                             std::optional<Mat> tgt)
    : unitary(std::move(u)), system_qubits(n), ancilla_qubits(a), scale(alpha),
      encoding_error(eps), target(std::move(tgt)) {
  if (unitary.dim != (1 << (n + a))) throw DimensionError("BlockEncoding: unitary dim mismatch");
  if (scale < 0 || encoding_error < 0) throw ParameterError("BlockEncoding: negative scale/error");
  if (target) {
    if (target->rows() != system_dim()) throw DimensionError("BlockEncoding: target dim mismatch");
    double dev = operator_norm(scale * corner() - *target);
    if (dev > encoding_error + 1e-9)
      throw ParameterError("BlockEncoding: corner deviates from target by " + std::to_string(dev));
  }
}

Mat BlockEncoding::corner() const {
  int n = system_dim(), da = ancilla_dim();
  Mat c(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c(i, j) = unitary.data(static_cast<long>(i) * da, static_cast<long>(j) * da);
  return c;
}

BlockEncoding BlockEncoding::padded(int extra_ancillas) const {
  if (extra_ancillas == 0) return *this;
  Mat u = tensor(unitary.data, Mat::Identity(1 << extra_ancillas, 1 << extra_ancillas));
  return BlockEncoding(UnitaryMatrix(std::move(u)), system_qubits, ancilla_qubits + extra_ancillas,
                       scale, encoding_error, target);
}

QuantumChannel::QuantumChannel(int in, int out, std::vector<Mat> ks)
    : in_dim(in), out_dim(out), kraus(std::move(ks)) {
  if (kraus.empty()) throw ParameterError("QuantumChannel: empty Kraus set");
  Mat acc = Mat::Zero(in_dim, in_dim);
  for (const Mat& k : kraus) {
    if (k.rows() != out_dim || k.cols() != in_dim)
      throw DimensionError("QuantumChannel: Kraus shape mismatch");
    acc += k.adjoint() * k;
  }
  if ((acc - Mat::Identity(in_dim, in_dim)).norm() > 1e-9)
    throw ParameterError("QuantumChannel: not trace preserving within 1e-9");
}

Mat QuantumChannel::apply(const Mat& rho) const {
  Mat out = Mat::Zero(out_dim, out_dim);
  for (const Mat& k : kraus) out += k * rho * k.adjoint();
  return out;
}

Mat QuantumChannel::apply_adjoint(const Mat& x) const {
  Mat out = Mat::Zero(in_dim, in_dim);
  for (const Mat& k : kraus) out += k.adjoint() * x * k;
  return out;
}

Mat QuantumChannel::choi() const {
  Mat j = Mat::Zero(static_cast<long>(in_dim) * out_dim, static_cast<long>(in_dim) * out_dim);
  for (const Mat& k : kraus) {
    // |w> = sum_i |i> (x) K|i>, w(i*out+b) = K(b,i)
    Vec w(static_cast<long>(in_dim) * out_dim);
    for (int i = 0; i < in_dim; ++i)
      for (int b = 0; b < out_dim; ++b) w[static_cast<long>(i) * out_dim + b] = k(b, i);
    j += w * w.adjoint();
  }
  return j;
}

QuantumChannel QuantumChannel::identity(int d) { return QuantumChannel(d, d, {Mat::Identity(d, d)}); }

QuantumChannel QuantumChannel::from_unitary(const Mat& u) {
  return QuantumChannel(static_cast<int>(u.cols()), static_cast<int>(u.rows()), {u});
}

QuantumChannel QuantumChannel::from_choi(const Mat& j, int in_dim, int out_dim) {
  auto es = eig_herm(j);
  std::vector<Mat> ks;
  for (int t = 0; t < es.eigenvalues().size(); ++t) {
    double lam = es.eigenvalues()[t];
    if (lam < 1e-13) continue;
    Mat k(out_dim, in_dim);
    for (int i = 0; i < in_dim; ++i)
      for (int b = 0; b < out_dim; ++b)
        k(b, i) = std::sqrt(lam) * es.eigenvectors()(static_cast<long>(i) * out_dim + b, t);
    ks.push_back(std::move(k));
  }
  return QuantumChannel(in_dim, out_dim, std::move(ks));
}

QuantumChannel QuantumChannel::compose_after(const QuantumChannel& inner) const {
  if (inner.out_dim != in_dim) throw DimensionError("compose: dimension mismatch");
  std::vector<Mat> ks;
  ks.reserve(kraus.size() * inner.kraus.size());
  for (const Mat& a : kraus)
    for (const Mat& b : inner.kraus) ks.push_back(a * b);
  QuantumChannel c(inner.in_dim, out_dim, std::move(ks));
  if (c.kraus.size() > static_cast<std::size_t>(c.in_dim) * c.out_dim) c = c.compressed();
  return c;
}

QuantumChannel QuantumChannel::tensor_identity(int d) const {
  std::vector<Mat> ks;
  for (const Mat& k : kraus) ks.push_back(tensor(k, Mat::Identity(d, d)));
  return QuantumChannel(in_dim * d, out_dim * d, std::move(ks));
}

QuantumChannel QuantumChannel::compressed() const { return from_choi(choi(), in_dim, out_dim); }

// ---------- distances ----------

double trace_norm_distance_states(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim != b.dim) throw DimensionError("trace_norm_distance_states: dim mismatch");
  return trace_norm(a.data - b.data);
}

namespace {

// One monotone ascent of psi -> top eigenvector of Delta^†(sign(Delta(psi psi^†))).
// Returns the achieved value of ||Delta(psi psi^†)||_1.
double ascend(const QuantumChannel& e, const QuantumChannel& f, Vec& psi, int max_iter) {
  double prev = -1.0;
  for (int it = 0; it < max_iter; ++it) {
    Mat rho = psi * psi.adjoint();
    Mat m = e.apply(rho) - f.apply(rho);
    Mat s = herm_sign(m);
    double val = (s * m).trace().real();
    Mat h = e.apply_adjoint(s) - f.apply_adjoint(s);
    auto es = eig_herm(h);
    int top;
    es.eigenvalues().maxCoeff(&top);
    psi = es.eigenvectors().col(top);
    if (val - prev < 1e-12) return val;
    prev = val;
  }
  Mat rho = psi * psi.adjoint();
  return trace_norm(e.apply(rho) - f.apply(rho));
}

}  // namespace

ChannelDistanceResult channel_trace_distance(const QuantumChannel& e, const QuantumChannel& f,
                                             int restarts, std::uint64_t seed) {
  if (e.in_dim != f.in_dim || e.out_dim != f.out_dim)
    throw DimensionError("channel_trace_distance: dim mismatch");
  SplitRng rng(seed, 0xd157);
  std::vector<double> vals;
  auto run = [&](Vec psi) {
    vals.push_back(ascend(e, f, psi, 80));
  };
  if (e.in_dim == 2) {
    // Bloch-grid seeding for qubit inputs.
    for (int it = 0; it < 6; ++it)
      for (int ip = 0; ip < 6; ++ip) {
        double th = M_PI * (it + 0.5) / 6, ph = 2 * M_PI * ip / 6;
        Vec psi(2);
        psi << std::cos(th / 2), std::exp(cd(0, ph)) * std::sin(th / 2);
        run(psi);
      }
  }
  for (int r = 0; r < restarts; ++r) run(random_pure(e.in_dim, rng));
  double best = 0, worst = 1e300;
  for (double v : vals) {
    best = std::max(best, v);
    worst = std::min(worst, v);
  }
  // Restart spread: distance between the best and the median-of-best half is a
  // crude convergence indicator; use best minus second-best cluster instead.
  std::sort(vals.begin(), vals.end(), std::greater<double>());
  double spread = vals.size() > 1 ? vals.front() - vals[vals.size() / 2] : 0.0;
  return {best, spread, spread <= 1e-6};
}

namespace {

struct ChoiMap {
  // Difference map given by Hermitian Choi matrix on in (x) out.
  Mat j;
  int din, dout;

  // Apply (Delta (x) I_ref)(|psi><psi|) for psi on in (x) ref, ref dim = din.
  // Delta(X) = Tr_in[ (X^T (x) I) J ] in vectorized form; do it directly.
  Mat apply_doubled(const Vec& psi) const {
    // X = psi psi^† on A (x) R, A index slow. Delta acts on A.
    // Delta(X)_{(b r),(b' r')} = sum_{a a'} X_{(a r),(a' r')} J_{(a b),(a' b')}
    int dr = din;
    Mat out = Mat::Zero(static_cast<long>(dout) * dr, static_cast<long>(dout) * dr);
    for (int a = 0; a < din; ++a)
      for (int a2 = 0; a2 < din; ++a2) {
        // block J(a,:,a2,:) is dout x dout
        for (int b = 0; b < dout; ++b)
          for (int b2 = 0; b2 < dout; ++b2) {
            cd jv = j(static_cast<long>(a) * dout + b, static_cast<long>(a2) * dout + b2);
            if (jv == cd(0)) continue;
            for (int r = 0; r < dr; ++r)
              for (int r2 = 0; r2 < dr; ++r2)
                out(static_cast<long>(b) * dr + r, static_cast<long>(b2) * dr + r2) +=
                    jv * psi[static_cast<long>(a) * dr + r] * std::conj(psi[static_cast<long>(a2) * dr + r2]);
          }
      }
    return out;
  }

  // Adjoint of Delta (x) I applied to Hermitian S on out (x) ref.
  Mat adjoint_doubled(const Mat& s) const {
    int dr = din;
    Mat out = Mat::Zero(static_cast<long>(din) * dr, static_cast<long>(din) * dr);
    for (int a = 0; a < din; ++a)
      for (int a2 = 0; a2 < din; ++a2)
        for (int b = 0; b < dout; ++b)
          for (int b2 = 0; b2 < dout; ++b2) {
            cd jv = std::conj(j(static_cast<long>(a) * dout + b, static_cast<long>(a2) * dout + b2));
            if (jv == cd(0)) continue;
            for (int r = 0; r < dr; ++r)
              for (int r2 = 0; r2 < dr; ++r2)
                out(static_cast<long>(a) * dr + r, static_cast<long>(a2) * dr + r2) +=
                    jv * s(static_cast<long>(b) * dr + r, static_cast<long>(b2) * dr + r2);
          }
    return out;
  }
};

}  // namespace

DiamondDistanceResult diamond_of_difference(const Mat& choi_diff, int in_dim, int out_dim) {
  ChoiMap dm{0.5 * (choi_diff + choi_diff.adjoint()), in_dim, out_dim};

  // Primal: maximize ||(Delta (x) I)(psi psi^†)||_1 over pure psi on A (x) R.
  SplitRng rng(0xd1a0, 7);
  Vec best_psi;
  double lower = 0.0;
  int restarts = in_dim <= 4 ? 24 : (in_dim <= 8 ? 12 : 6);
  int iters = in_dim <= 8 ? 120 : 60;
  for (int r = 0; r < restarts; ++r) {
    Vec psi = random_pure(in_dim * in_dim, rng);
    double prev = -1, val = 0;
    for (int it = 0; it < iters; ++it) {
      Mat m = dm.apply_doubled(psi);
      Mat s = herm_sign(m);
      val = (s * m).trace().real();
      Mat h = dm.adjoint_doubled(s);
      auto es = eig_herm(h);
      int top;
      es.eigenvalues().maxCoeff(&top);
      psi = es.eigenvectors().col(top);
      if (val - prev < 1e-13) break;
      prev = val;
    }
    if (val > lower) {
      lower = val;
      best_psi = psi;
    }
  }

  // Dual: Y = (rho^{-1/2} (x) I)|K|(rho^{-1/2} (x) I) with
  // K = (rho^{1/2} (x) I) J (rho^{1/2} (x) I) is feasible (Y >= ±J); its
  // objective lambda_max(Tr_out Y) upper-bounds the diamond norm.
  Mat rho_star = Mat::Identity(in_dim, in_dim) / in_dim;
  if (best_psi.size()) {
    Mat full = best_psi * best_psi.adjoint();
    rho_star = partial_trace(full, {in_dim, in_dim}, {0});
    rho_star = 0.5 * (rho_star + rho_star.adjoint());
  }
  double upper = 1e300;
  for (double mu : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9, 1e-11}) {
    Mat rho = (1 - mu) * rho_star + mu * Mat::Identity(in_dim, in_dim) / in_dim;
    Mat sq = matrix_function(rho, [](double x) { return std::sqrt(std::max(x, 0.0)); });
    Mat isq = matrix_function(rho, [](double x) { return 1.0 / std::sqrt(std::max(x, 1e-300)); });
    Mat sqI = tensor(sq, Mat::Identity(out_dim, out_dim));
    Mat isqI = tensor(isq, Mat::Identity(out_dim, out_dim));
    Mat k = sqI * dm.j * sqI;
    Mat absk = matrix_function(k, [](double x) { return std::fabs(x); });
    Mat y = isqI * absk * isqI;
    y = 0.5 * (y + y.adjoint());
    Mat try_ = partial_trace(y, {in_dim, out_dim}, {0});
    auto es = eig_herm(try_);
    double cand = es.eigenvalues().maxCoeff();
    if (std::isfinite(cand)) upper = std::min(upper, cand);
  }
  upper = std::max(upper, lower);
  double width = upper - lower;
  return {lower, upper, false, width <= 1e-6};
}

DiamondDistanceResult diamond_distance(const QuantumChannel& e, const QuantumChannel& f,
                                       int sdp_dim_budget) {
  if (e.in_dim != f.in_dim || e.out_dim != f.out_dim)
    throw DimensionError("diamond_distance: dim mismatch");
  if (e.in_dim > sdp_dim_budget) {
    // Coarse bracket from the norm sandwich; improved by the Choi bound
    // lambda_max(Tr_out |J|) when the Choi matrix is still materializable.
    auto td = channel_trace_distance(e, f);
    double up = e.in_dim * td.value + 1e-9;
    long choi_dim = static_cast<long>(e.in_dim) * e.out_dim;
    if (choi_dim <= 4096) {
      Mat j = e.choi() - f.choi();
      Mat absj = matrix_function(j, [](double x) { return std::fabs(x); });
      Mat t = partial_trace(absj, {e.in_dim, e.out_dim}, {0});
      up = std::min(up, eig_herm(t).eigenvalues().maxCoeff() + 1e-9);
    }
    up = std::max(up, td.value);
    return {td.value, up, true, false};
  }
  Mat j = e.choi() - f.choi();
  return diamond_of_difference(j, e.in_dim, e.out_dim);
}

UnitaryMatrix dilate_to_unitary(const Mat& a) {
  if (a.rows() != a.cols()) throw DimensionError("dilate_to_unitary: not square");
  double nrm = operator_norm(a);
  if (nrm > 1.0 + 1e-12) throw ParameterError("dilate_to_unitary: norm exceeds 1");
  Mat p00(2, 2), p01(2, 2), p10(2, 2), p11(2, 2);
  p00 << 1, 0, 0, 0;
  p01 << 0, 1, 0, 0;
  p10 << 0, 0, 1, 0;
  p11 << 0, 0, 0, 1;
  Mat top = a;
  if ((a - a.adjoint()).cwiseAbs().maxCoeff() < 1e-12) {
    // Hermitian path: C = sqrt(I - A^2) commutes with A.
    Mat c = matrix_function(a, [](double x) {
      double v = std::min(1.0, std::fabs(x));
      return std::sqrt(std::max(0.0, 1.0 - v * v));
    });
    Mat scaled = nrm > 1.0 ? Mat(a / nrm) : a;
    Mat w = tensor(scaled, p00) + tensor(c, p01 + p10) + tensor(Mat(-scaled), p11);
    return UnitaryMatrix(std::move(w));
  }
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::VectorXd s = svd.singularValues();
  Eigen::VectorXd c(s.size());
  for (int i = 0; i < s.size(); ++i) {
    s[i] = std::min(1.0, s[i]);
    c[i] = std::sqrt(std::max(0.0, 1.0 - s[i] * s[i]));
  }
  Mat u = svd.matrixU(), v = svd.matrixV();
  Mat a_cl = u * s.asDiagonal() * v.adjoint();
  Mat tr_ = u * c.asDiagonal() * u.adjoint();        // U sqrt(1-S^2) U^†
  Mat bl = v * c.asDiagonal() * v.adjoint();         // V sqrt(1-S^2) V^†
  Mat br = -(v * s.asDiagonal() * u.adjoint());      // -V S U^†
  Mat w = tensor(a_cl, p00) + tensor(tr_, p01) + tensor(bl, p10) + tensor(br, p11);
  return UnitaryMatrix(std::move(w));
}

// ---------- entropy oracles ----------

double von_neumann_entropy(const DensityMatrix& rho) {
  auto lam = rho.eigenvalues();
  double s = 0;
  for (int i = 0; i < lam.size(); ++i)
    if (lam[i] > 1e-14) s -= lam[i] * std::log(lam[i]);
  return s;
}

double p_alpha(const DensityMatrix& rho, double alpha) {
  auto lam = rho.eigenvalues();
  double s = 0;
  for (int i = 0; i < lam.size(); ++i)
    if (lam[i] > 1e-14) s += std::pow(lam[i], alpha);
  return s;
}

double renyi_entropy(const DensityMatrix& rho, double alpha) {
  if (std::fabs(alpha - 1.0) < 1e-12) return von_neumann_entropy(rho);
  return std::log(p_alpha(rho, alpha)) / (1.0 - alpha);
}

// ---------- random instances ----------

Vec random_pure(int dim, SplitRng& rng) {
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v[i] = cd(rng.normal(), rng.normal());
  v.normalize();
  return v;
}

Mat random_unitary(int dim, SplitRng& rng) {
  Mat g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = cd(rng.normal(), rng.normal());
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    cd d = r(i, i);
    q.col(i) *= (std::abs(d) > 0 ? d / std::abs(d) : cd(1));
  }
  return q;
}

DensityMatrix random_density(int dim, int rank, SplitRng& rng) {
  Mat g(dim, rank);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < rank; ++j) g(i, j) = cd(rng.normal(), rng.normal());
  Mat rho = g * g.adjoint();
  rho /= rho.trace();
  rho = 0.5 * (rho + rho.adjoint());
  return DensityMatrix(std::move(rho), rank);
}

}  // namespace qsl
