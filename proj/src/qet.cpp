#include "qsl/qet.hpp"

#include <algorithm>
#include <cmath>

#include "qsl/chebyshev.hpp"
#include "qsl/errors.hpp"

namespace qsl {
namespace {

Mat identity_mat(int d) { return Mat::Identity(d, d); }

// Effective Hermitian input for the transform: the realized corner when the
// encoding is inexact, the nominal target otherwise.
Mat effective_operator(const BlockEncoding& u) {
  if (u.encoding_error > 0.0) {
    Mat m = u.corner();
    return ((m + m.adjoint()) / 2.0).eval();
  }
  if (u.target) {
    Mat a = *u.target / u.scale;
    return ((a + a.adjoint()) / 2.0).eval();
  }
  Mat m = u.corner();
  return ((m + m.adjoint()) / 2.0).eval();
}

}  // namespace

EigenTransformResult eigen_transform(const BlockEncoding& u, const CertifiedPolynomial& p,
                                     double delta) {
  if (!p.certified) throw ParameterError("eigen_transform: polynomial is not certified");
  if (p.global_bound > 0.5 + 1e-12)
    throw ParameterError("eigen_transform: polynomial bound exceeds 1/2");
  if (u.target) {
    Mat t = *u.target;
    if ((t - t.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
      throw ParameterError("eigen_transform: encoded target is not Hermitian");
  }
  if (delta < 0) throw ParameterError("eigen_transform: delta must be nonnegative");

  const auto& c = p.coeffs_chebyshev;
  auto f = [&c](double x) { return cheb::eval(c, std::clamp(x, -1.0, 1.0)); };

  Mat a_eff = effective_operator(u);
  Mat pa = matrix_function(a_eff, f);

  UnitaryMatrix d = dilate_to_unitary(pa);  // system (x) 1 fresh ancilla qubit
  int rest = 1 << (u.ancilla_qubits + 1);
  Mat full = tensor(d.data, identity_mat(rest));

  Mat nominal;
  if (u.target)
    nominal = matrix_function(((*u.target / u.scale + (*u.target / u.scale).adjoint()) / 2.0).eval(), f);
  else
    nominal = pa;

  BlockEncoding enc(UnitaryMatrix(full), u.system_qubits, u.ancilla_qubits + 2, 1.0,
                    operator_norm(pa - nominal) + 1e-12, nominal);

  EigenTransformResult r{std::move(enc), p.degree(), 2, operator_norm(pa - nominal),
                         4.0 * p.degree() * std::sqrt(std::max(0.0, u.encoding_error) / u.scale) +
                             delta + 1e-9};
  return r;
}

QuantumChannel HadamardTestResult::channel() const {
  // Kraus set K_{o,j} = |o> e_j^T sqrt(E_o); output is diagonal in {|0>,|1>}.
  Mat e1 = effect;
  Mat e0 = Mat::Identity(in_dim, in_dim) - e1;
  std::vector<Mat> ks;
  for (int o = 0; o < 2; ++o) {
    Mat m = matrix_function(o == 1 ? e1 : e0, [](double x) { return std::sqrt(std::max(0.0, x)); });
    for (int j = 0; j < in_dim; ++j) {
      Mat k = Mat::Zero(2, in_dim);
      k.row(o) = m.row(j);
      ks.push_back(std::move(k));
    }
  }
  return QuantumChannel(in_dim, 2, std::move(ks));
}

HadamardTestResult hadamard_test(const BlockEncoding& u, const DensityMatrix& rho,
                                 bool imaginary_part) {
  if (u.system_dim() != rho.dim)
    throw DimensionError("hadamard_test: encoding system dim does not match state dim");
  if (std::fabs(u.scale - 1.0) > 1e-9)
    throw ParameterError("hadamard_test: encoding scale must be 1");
  Mat a = u.corner();
  Mat herm;
  if (imaginary_part)
    herm = ((a - a.adjoint()) / cd(0, 2)).eval();
  else
    herm = ((a + a.adjoint()) / 2.0).eval();
  HadamardTestResult r;
  r.in_dim = rho.dim;
  r.effect = 0.5 * (Mat::Identity(rho.dim, rho.dim) + herm);
  r.p1 = std::clamp((r.effect * rho.data).trace().real(), 0.0, 1.0);
  return r;
}

HamiltonianSimulationResult hamiltonian_simulation(const BlockEncoding& u, double t, double eps) {
  if (std::fabs(t) > 50.0) throw ParameterError("hamiltonian_simulation: |t| exceeds cap 50");
  if (!(eps > 0.0)) throw ParameterError("hamiltonian_simulation: eps must be positive");
  Mat h = effective_operator(u) * u.scale;
  Mat ut = matrix_function_c(h, [t](double x) { return std::exp(cd(0, -x * t)); });

  UnitaryMatrix d = dilate_to_unitary(ut);
  int rest = 1 << (u.ancilla_qubits + 1);
  Mat full = tensor(d.data, identity_mat(rest));

  Mat nominal = ut;
  if (u.target) {
    Mat hn = ((*u.target + u.target->adjoint()) / 2.0).eval();
    nominal = matrix_function_c(hn, [t](double x) { return std::exp(cd(0, -x * t)); });
  }
  double realized = operator_norm(ut - nominal);
  BlockEncoding enc(UnitaryMatrix(full), u.system_qubits, u.ancilla_qubits + 2, 1.0,
                    std::max(eps, realized + 1e-12), nominal);
  int q = static_cast<int>(std::ceil(std::fabs(t) + std::log(1.0 / eps)));
  return {std::move(enc), std::max(q, 1)};
}

}  // namespace qsl
