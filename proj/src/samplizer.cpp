#include "qsl/samplizer.hpp"

#include <cmath>

#include "qsl/config.hpp"
#include "qsl/errors.hpp"
#include "qsl/polyapprox.hpp"
#include "qsl/qet.hpp"
#include "qsl/rng.hpp"

namespace qsl {
namespace {

constexpr long long kStepBudget = 1000000;

Mat eye(int d) { return Mat::Identity(d, d); }

Mat mat_power(Mat base, long long e) {
  Mat acc = eye(static_cast<int>(base.rows()));
  while (e > 0) {
    if (e & 1) acc = (base * acc).eval();
    base = (base * base).eval();
    e >>= 1;
  }
  return acc;
}

struct Spectrum {
  Eigen::VectorXd vals;
  Mat vecs;
};

Spectrum eigh(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(((m + m.adjoint()) / 2.0).eval());
  return {es.eigenvalues(), es.eigenvectors()};
}

// Kraus set of one partial-swap step at angle `ang` against rho:
//   K_{j,l} = sqrt(lambda_l) (cos(ang) delta_jl I - i sin(ang) |l><j|).
std::vector<Mat> swap_step_kraus(const DensityMatrix& rho, double ang) {
  int d = rho.dim;
  Spectrum s = eigh(rho.data);
  double c = std::cos(ang), sn = std::sin(ang);
  std::vector<Mat> ks;
  for (int l = 0; l < d; ++l) {
    double lam = std::max(0.0, s.vals(l));
    if (lam < 1e-15) continue;
    for (int j = 0; j < d; ++j) {
      Mat k = Mat::Zero(d, d);
      if (j == l) k = c * eye(d);
      k -= cd(0, sn) * (s.vecs.col(l) * s.vecs.col(j).adjoint());
      ks.push_back(std::sqrt(lam) * k);
    }
  }
  return ks;
}

// One partial-swap step whose swap branch fires only on the subspace
// selected by projector `pi` (identity branch elsewhere). `embed_lj` maps
// |l><j| on the system into the full active space:
//   K_{j,l} = sqrt(lambda_l) [delta_jl (I - (1-cos) pi) - i sin embed(l,j) pi].
std::vector<Mat> projected_step_kraus(const DensityMatrix& rho, double ang, const Mat& pi,
                                      const std::function<Mat(const Mat&)>& embed) {
  int d = rho.dim;
  Spectrum s = eigh(rho.data);
  double c = std::cos(ang), sn = std::sin(ang);
  int full = static_cast<int>(pi.rows());
  std::vector<Mat> ks;
  for (int l = 0; l < d; ++l) {
    double lam = std::max(0.0, s.vals(l));
    if (lam < 1e-15) continue;
    for (int j = 0; j < d; ++j) {
      Mat k = Mat::Zero(full, full);
      if (j == l) k = eye(full) - (1.0 - c) * pi;
      k -= cd(0, sn) * (embed((s.vecs.col(l) * s.vecs.col(j).adjoint()).eval()) * pi);
      ks.push_back(std::sqrt(lam) * k);
    }
  }
  return ks;
}

// Control as the slow factor, swap branch on control = `control_value`.
std::vector<Mat> controlled_step_kraus_slow(const DensityMatrix& rho, double ang,
                                            int control_value) {
  int d = rho.dim;
  Mat pv = Mat::Zero(2, 2);
  pv(control_value, control_value) = 1;
  Mat pi = tensor(pv, eye(d));
  return projected_step_kraus(rho, ang, pi,
                              [](const Mat& m) { return tensor(Mat::Identity(2, 2), m); });
}

// LCU-stage step on (system (x) lcu qubit), optionally with an extra outer
// control qubit as the slowest factor; swap branch on lcu = `lcu_value`
// (and outer control = 1 when present).
std::vector<Mat> lcu_step_kraus(const DensityMatrix& rho, double ang, int lcu_value,
                                bool outer_control) {
  int d = rho.dim;
  Mat pv = Mat::Zero(2, 2);
  pv(lcu_value, lcu_value) = 1;
  Mat p1 = Mat::Zero(2, 2);
  p1(1, 1) = 1;
  Mat pi = tensor(eye(d), pv);
  std::function<Mat(const Mat&)> embed = [](const Mat& m) {
    return tensor(m, Mat::Identity(2, 2));
  };
  if (outer_control) {
    pi = tensor(p1, pi);
    embed = [](const Mat& m) {
      return tensor(Mat::Identity(2, 2), tensor(m, Mat::Identity(2, 2)));
    };
  }
  return projected_step_kraus(rho, ang, pi, embed);
}

Mat expm_i(const Mat& herm, double t) {  // e^{-i herm t}
  return matrix_function_c(herm, [t](double x) { return std::exp(cd(0, -x * t)); });
}

}  // namespace

Mat superop_from_kraus(const std::vector<Mat>& kraus) {
  if (kraus.empty()) throw ParameterError("superop_from_kraus: empty Kraus set");
  long out = kraus[0].rows(), in = kraus[0].cols();
  Mat s = Mat::Zero(out * out, in * in);
  for (const Mat& k : kraus) s += tensor(k.conjugate(), k);
  return s;
}

Mat choi_from_superop(const Mat& s, int in_dim, int out_dim) {
  Mat j = Mat::Zero(in_dim * out_dim, in_dim * out_dim);
  for (int i = 0; i < in_dim; ++i)
    for (int jj = 0; jj < in_dim; ++jj)
      for (int a = 0; a < out_dim; ++a)
        for (int b = 0; b < out_dim; ++b)
          j(i * out_dim + a, jj * out_dim + b) = s(b * out_dim + a, jj * in_dim + i);
  return j;
}

QuantumChannel channel_from_superop(const Mat& s, int in_dim, int out_dim) {
  return QuantumChannel::from_choi(choi_from_superop(s, in_dim, out_dim), in_dim, out_dim);
}

QuantumChannel lmr_channel(const DensityMatrix& rho, const LmrConfig& cfg) {
  if (cfg.steps < 1) throw ParameterError("lmr_channel: steps must be >= 1");
  if (rho.dim > 16) throw DimensionError("lmr_channel: rho.dim exceeds cap 16");
  if (cfg.t == 0.0) return QuantumChannel::from_unitary(eye(rho.dim));
  Mat s = superop_from_kraus(swap_step_kraus(rho, cfg.t / cfg.steps));
  return channel_from_superop(mat_power(std::move(s), cfg.steps), rho.dim, rho.dim);
}

QuantumChannel controlled_exponential(const DensityMatrix& rho, double t, int steps) {
  if (steps < 1) throw ParameterError("controlled_exponential: steps must be >= 1");
  if (rho.dim > 16) throw DimensionError("controlled_exponential: rho.dim exceeds cap 16");
  if (t == 0.0) return QuantumChannel::from_unitary(eye(2 * rho.dim));
  Mat s = superop_from_kraus(controlled_step_kraus_slow(rho, t / steps, 1));
  return channel_from_superop(mat_power(std::move(s), steps), 2 * rho.dim, 2 * rho.dim);
}

namespace {

struct FaithfulParts {
  Mat v;                 // nominal LCU unitary on system (x) 1 fast qubit
  Mat superop_fwd;       // faithful channel superoperator for (ctrl-)V
  Mat superop_inv;       // faithful channel superoperator for (ctrl-)V^dagger
  double lcu_error = 0;  // certified diamond bound of the faithful V vs V-conjugation
  long long steps = 0;   // per controlled exponential
};

// V = (I (x) H) [(-i e^{i rho}) (x) P0 + (i e^{-i rho}) (x) P1] (I (x) H)
// has corner sin(rho); the two controlled exponentials are realized by
// controlled LMR, everything else is a fixed unitary. With `outer_control`
// every stage is additionally controlled on an extra slowest qubit, giving a
// faithful realization of controlled-V.
FaithfulParts build_faithful_v(const DensityMatrix& rho, double budget, bool outer_control) {
  int d = rho.dim;
  Mat p0 = Mat::Zero(2, 2), p1 = Mat::Zero(2, 2);
  p0(0, 0) = 1;
  p1(1, 1) = 1;
  Mat h = Mat::Zero(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  Mat f = tensor(eye(d), h);
  Mat phase = tensor(eye(d), (Mat(2, 2) << cd(0, -1), 0, 0, cd(0, 1)).finished());
  Mat e_plus = expm_i(rho.data, -1.0);  // e^{+i rho}
  Mat e_minus = expm_i(rho.data, 1.0);  // e^{-i rho}
  Mat u0 = tensor(e_plus, p0) + tensor(eye(d), p1);
  Mat u1 = tensor(eye(d), p0) + tensor(e_minus, p1);

  FaithfulParts parts;
  parts.v = f * phase * u0 * u1 * f;

  auto ctl = [&](const Mat& u) {  // identity, or controlled on the slowest qubit
    if (!outer_control) return u;
    int k = static_cast<int>(u.rows());
    return (tensor(p0, eye(k)) + tensor(p1, u)).eval();
  };
  Mat sf = superop_from_kraus({ctl(f)});
  Mat sphase = superop_from_kraus({ctl(phase)});
  Mat sphase_inv = superop_from_kraus({ctl(phase.adjoint().eval())});
  int active = (outer_control ? 4 : 2) * d;

  long long n = std::max<long long>(4, static_cast<long long>(std::ceil(8.0 / budget)));
  for (;; n *= 2) {
    if (2 * n > kStepBudget)
      throw BudgetError("sample_block_encoding: LMR step budget exceeded (cap 1e6)");
    auto stage = [&](double t, int lcu_value) {
      return mat_power(superop_from_kraus(lcu_step_kraus(rho, t / n, lcu_value, outer_control)),
                       n);
    };
    Mat s0 = stage(-1.0, 0);
    Mat s1 = stage(1.0, 1);
    double err =
        diamond_distance(channel_from_superop(s0, active, active),
                         QuantumChannel::from_unitary(ctl(u0))).upper +
        diamond_distance(channel_from_superop(s1, active, active),
                         QuantumChannel::from_unitary(ctl(u1))).upper;
    if (err <= budget) {
      parts.lcu_error = err;
      parts.steps = n;
      parts.superop_fwd = sf * sphase * s0 * s1 * sf;
      // V^dagger = F (ctrl e^{+i rho}) (anti-ctrl e^{-i rho}) phase^dagger F
      parts.superop_inv = sf * stage(-1.0, 1) * stage(1.0, 0) * sphase_inv * sf;
      return parts;
    }
  }
}

// Arcsin repair: the transform unitary core W on (system (x) 1 qubit) with
// corner p_arcsin(sin rho) ~ rho/2, and its operator distance to the
// dilation of rho/2. eps_a shrinks until the distance fits delta/4.
struct RepairParts {
  Mat core;      // 2d x 2d
  double w_err;  // ||core - dilate(rho/2)||
};

RepairParts build_repair(const DensityMatrix& rho, const Mat& v, const Mat& d_half, double delta,
                         int n_qubits) {
  Mat sin_rho = matrix_function(rho.data, [](double x) { return std::sin(x); });
  BlockEncoding v_be(UnitaryMatrix(v), n_qubits, 1, 1.0, 0.0, sin_rho);
  double eps_a = std::min(delta / 8.0, 0.2);
  int twod = 2 * rho.dim;
  for (int it = 0;; ++it) {
    CertifiedPolynomial p = build_arcsin_half(eps_a);
    EigenTransformResult et = eigen_transform(v_be, p, 0.0);
    // et.encoding.unitary = core (x) I_4; slice the core back out.
    Mat core(twod, twod);
    for (int i = 0; i < twod; ++i)
      for (int j = 0; j < twod; ++j) core(i, j) = et.encoding.unitary.data(i * 4, j * 4);
    double w_err = operator_norm(core - d_half);
    if (2.0 * w_err <= delta / 2.0) return {core, w_err};
    if (it >= 40) throw CertificationError("sample_block_encoding: arcsin transform too loose", 0);
    eps_a /= 2.0;
  }
}

}  // namespace

ActiveSampleChannels active_sample_block_encoding(const DensityMatrix& rho, double delta,
                                                  bool outer_control) {
  if (!(delta > 0.0) || !(delta < 1.0))
    throw ParameterError("sample_block_encoding: delta outside (0,1)");
  if (rho.dim > 16) throw DimensionError("sample_block_encoding: rho.dim exceeds cap 16");
  int n = 0;
  while ((1 << n) < rho.dim) ++n;
  if ((1 << n) != rho.dim)
    throw DimensionError("sample_block_encoding: rho.dim must be a power of 2");

  Mat d_half = dilate_to_unitary((rho.data / 2.0).eval()).data;
  Mat p0 = Mat::Zero(2, 2), p1 = Mat::Zero(2, 2);
  p0(0, 0) = 1;
  p1(1, 1) = 1;
  auto ctl = [&](const Mat& u) {
    if (!outer_control) return u;
    return (tensor(p0, eye(static_cast<int>(u.rows()))) + tensor(p1, u)).eval();
  };

  FaithfulParts parts = build_faithful_v(rho, delta / 2.0, outer_control);
  RepairParts rep = build_repair(rho, parts.v, d_half, delta, n);
  int dim = (outer_control ? 4 : 2) * rho.dim;
  double cert = parts.lcu_error + 2.0 * rep.w_err;

  auto assemble = [&](const Mat& superop, const Mat& repair) {
    QuantumChannel act = channel_from_superop(superop, dim, dim);
    return QuantumChannel::from_unitary(repair).compose_after(act);
  };
  ActiveSampleChannels out{
      {assemble(parts.superop_fwd, ctl((rep.core * parts.v.adjoint()).eval())), 2 * parts.steps,
       SampleMode::Faithful, cert},
      {assemble(parts.superop_inv, ctl((rep.core.adjoint() * parts.v).eval())), 2 * parts.steps,
       SampleMode::Faithful, cert},
      ctl(d_half),
      dim};
  return out;
}

SampleBlockEncodingResult sample_block_encoding(const DensityMatrix& rho, double delta,
                                                SampleMode mode) {
  if (!(delta > 0.0) || !(delta < 1.0))
    throw ParameterError("sample_block_encoding: delta outside (0,1)");
  if (rho.dim > 16) throw DimensionError("sample_block_encoding: rho.dim exceeds cap 16");
  int n = 0;
  while ((1 << n) < rho.dim) ++n;
  if ((1 << n) != rho.dim)
    throw DimensionError("sample_block_encoding: rho.dim must be a power of 2");

  UnitaryMatrix d_half = dilate_to_unitary((rho.data / 2.0).eval());
  Mat u_pin = tensor(d_half.data, eye(8));
  BlockEncoding nominal(UnitaryMatrix(u_pin), n, 4, 2.0, 0.0, rho.data);

  SampleBlockEncodingResult res{
      {QuantumChannel::from_unitary(u_pin), 0, SampleMode::Ideal, 0.0},
      {QuantumChannel::from_unitary(u_pin.adjoint().eval()), 0, SampleMode::Ideal, 0.0},
      std::move(nominal),
      0};
  if (mode == SampleMode::Ideal) return res;

  ActiveSampleChannels act = active_sample_block_encoding(rho, delta, false);
  auto lift = [](const SampleChannel& c) {
    return SampleChannel{c.channel.tensor_identity(8), c.samples_consumed, c.mode,
                         c.per_query_error};
  };
  res.forward = lift(act.forward);
  res.inverse = lift(act.inverse);
  res.lmr_steps = act.forward.samples_consumed / 2;
  return res;
}

int QueryCircuit::query_count() const {
  int q = 0;
  for (const auto& g : gates)
    if (g.kind == CircuitGate::Kind::Oracle) ++q;
  return q;
}

void QueryCircuit::validate() const {
  if (oracle_ancillas < 4) throw ParameterError("QueryCircuit: oracle_ancillas must be >= 4");
  if (system_qubits < 1) throw ParameterError("QueryCircuit: system_qubits must be >= 1");
  long dim = 1L << total_qubits();
  for (const auto& g : gates) {
    if (g.kind == CircuitGate::Kind::Fixed) {
      if (g.fixed.rows() != dim || g.fixed.cols() != dim)
        throw DimensionError("QueryCircuit: fixed gate has wrong dimension");
      UnitaryMatrix check(g.fixed);  // throws if not unitary
    } else if (g.controlled && oracle_ancillas < 5) {
      throw ParameterError("QueryCircuit: controlled oracle slot needs m >= 5");
    }
  }
}

Mat QueryCircuit::instantiate(const Mat& u) const {
  long dim = 1L << total_qubits();
  int rest = 1 << (oracle_ancillas - 4);
  Mat c = eye(static_cast<int>(dim));
  for (const auto& g : gates) {
    Mat step;
    if (g.kind == CircuitGate::Kind::Fixed) {
      step = g.fixed;
    } else {
      Mat slot = g.dagger ? Mat(u.adjoint()) : u;
      if (!g.controlled) {
        step = tensor(slot, eye(rest));
      } else {
        // control qubit n+4: layout (system+4 ancillas) (x) control (x) rest/2
        int da = static_cast<int>(slot.rows());
        int tail = rest / 2;
        step = Mat::Zero(dim, dim);
        for (int a = 0; a < da; ++a)
          for (int b = 0; b < da; ++b)
            for (int t = 0; t < tail; ++t) {
              if (a == b) step(((a * 2 + 0) * tail) + t, ((b * 2 + 0) * tail) + t) = 1;
              step(((a * 2 + 1) * tail) + t, ((b * 2 + 1) * tail) + t) = slot(a, b);
            }
      }
    }
    c = (step * c).eval();
  }
  return c;
}

SampleChannel samplize(const QueryCircuit& circuit, const DensityMatrix& rho, double delta,
                       SampleMode mode) {
  circuit.validate();
  if (!(delta > 0.0)) throw ParameterError("samplize: delta must be positive");
  if ((1 << circuit.system_qubits) != rho.dim)
    throw DimensionError("samplize: circuit system size does not match rho");
  int q = circuit.query_count();
  long dim = 1L << circuit.total_qubits();
  int rest = 1 << (circuit.oracle_ancillas - 4);

  if (q == 0 || mode == SampleMode::Ideal) {
    double eps = q ? delta / q : delta;
    auto sbe = sample_block_encoding(rho, std::min(eps, 0.999), SampleMode::Ideal);
    Mat u = circuit.instantiate(sbe.nominal.unitary.data);
    return {QuantumChannel::from_unitary(u), 0, SampleMode::Ideal, 0.0};
  }

  double eps = delta / q;
  auto sbe = sample_block_encoding(rho, eps, SampleMode::Faithful);
  Mat s = superop_from_kraus({eye(static_cast<int>(dim))});
  for (const auto& g : circuit.gates) {
    Mat step;
    if (g.kind == CircuitGate::Kind::Fixed) {
      step = superop_from_kraus({g.fixed});
    } else {
      if (g.controlled)
        throw ParameterError("samplize: controlled oracle slots unsupported in faithful mode");
      const QuantumChannel& slot = g.dagger ? sbe.inverse.channel : sbe.forward.channel;
      QuantumChannel lifted = rest > 1 ? slot.tensor_identity(rest) : slot;
      step = superop_from_kraus(lifted.kraus);
    }
    s = (step * s).eval();
  }
  QuantumChannel ch = channel_from_superop(s, static_cast<int>(dim), static_cast<int>(dim));
  return {std::move(ch), static_cast<long long>(q) * sbe.forward.samples_consumed,
          SampleMode::Faithful, sbe.forward.per_query_error};
}

LowerBoundReport lower_bound_instance_check(const DensityMatrix& rho, double t, double eps,
                                            double delta, std::uint64_t seed) {
  int d = rho.dim;
  Mat target_u = expm_i(rho.data, t);
  Mat u_full = tensor(dilate_to_unitary(target_u).data, eye(2));  // a+2 = 2 ancilla qubits
  int full = 4 * d;

  // eps-perturbation of the encoding unitary: left-multiply by e^{i eps K}.
  SplitRng rng(seed, 7);
  Mat g(full, full);
  for (int i = 0; i < full; ++i)
    for (int j = 0; j < full; ++j) g(i, j) = cd(rng.normal(), rng.normal());
  Mat k = ((g + g.adjoint()) / 2.0).eval();
  double nk = operator_norm(k);
  if (nk > 0) k /= nk;
  Mat u_pert = matrix_function_c(k, [eps](double x) { return std::exp(cd(0, x * eps)); }) * u_full;

  // delta-perturbation: mix with the replace-by-maximally-mixed channel.
  std::vector<Mat> ks;
  double w = delta / 2.0;
  ks.push_back(std::sqrt(1.0 - w) * u_pert);
  for (int i = 0; i < full; ++i)
    for (int j = 0; j < full; ++j) {
      Mat r = Mat::Zero(full, full);
      r(i, j) = std::sqrt(w / full);
      ks.push_back(std::move(r));
    }
  QuantumChannel e(full, full, std::move(ks));

  // F[rho] = Tr_anc o E o (append |00>)
  std::vector<Mat> prep{[&] {
    Mat v = Mat::Zero(full, d);
    for (int i = 0; i < d; ++i) v(i * 4, i) = 1;
    return v;
  }()};
  std::vector<Mat> tr;
  for (int j = 0; j < 4; ++j) {
    Mat m = Mat::Zero(d, full);
    for (int i = 0; i < d; ++i) m(i, i * 4 + j) = 1;
    tr.push_back(std::move(m));
  }
  QuantumChannel f = QuantumChannel(full, d, tr)
                         .compose_after(e.compose_after(QuantumChannel(d, full, prep)));

  double measured = channel_trace_distance(f, QuantumChannel::from_unitary(target_u)).value;
  double bound = delta + 5.0 * eps;
  return {measured, bound, measured <= bound + 1e-9, eps, delta};
}

}  // namespace qsl
