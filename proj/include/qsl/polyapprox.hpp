#pragma once

#include <functional>
#include <string>
#include <vector>

namespace qsl {

// One inequality the polynomial must satisfy on an interval:
//   Band:   band_lo <= p(x) <= band_hi
//   AbsErr: |p(x) - target(x)| <= tol
struct PolyRegion {
  enum class Kind { Band, AbsErr };
  Kind kind;
  double lo, hi;  // interval, closed
  double band_lo = 0, band_hi = 0;
  std::function<double(double)> target;  // AbsErr only
  double tol = 0;
  std::string target_id;  // human-readable description of the bound
};

struct RegionReport {
  std::string target_id;
  double lo, hi;
  double margin;   // smallest slack over the grid (negative = violated)
  double worst_x;  // grid point achieving the margin
  bool pass;
};

struct CertificateReport {
  bool certified = false;
  std::vector<RegionReport> regions;
};

struct CertifiedPolynomial {
  std::vector<double> coeffs_chebyshev;
  std::vector<PolyRegion> regions;
  int certificate_grid_points = 20001;
  bool certified = false;
  int parity = 0;             // +1 even, -1 odd, 0 none
  double global_bound = 1.0;  // stated |p| bound on [-1,1]

  int degree() const { return static_cast<int>(coeffs_chebyshev.size()) - 1; }
  double eval(double x) const;
  std::vector<double> eval(const std::vector<double>& xs) const;
};

// Evaluate all region inequalities on the dense grid; updates p.certified.
CertificateReport certify(CertifiedPolynomial& p);

// Degree escalation cap. The spec-level pipelines need degrees up to ~1e5
// for their smallest transition parameters; beyond the cap construction
// raises CertificationError.
int poly_degree_cap();

// Lemma-style builders. All outputs are certified (construction escalates
// degree until the grid certificate passes).
CertifiedPolynomial build_rectangle(double t, double delta, double eps);
CertifiedPolynomial build_negative_power(double c, double delta, double eps);
CertifiedPolynomial build_positive_power(double c, double delta, double beta, double eps);
CertifiedPolynomial build_log(double delta, double eps, int normalization = 2);
CertifiedPolynomial build_arcsin_half(double eps);

// p -> s*p (Chebyshev coefficients scale linearly); regions are dropped.
CertifiedPolynomial scaled(const CertifiedPolynomial& p, double s);

}  // namespace qsl
