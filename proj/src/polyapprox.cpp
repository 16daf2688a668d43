#include "qsl/polyapprox.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "qsl/chebyshev.hpp"
#include "qsl/errors.hpp"
#include "qsl/kernels.hpp"

namespace qsl {
namespace {

void check_open_unit(double v, const char* name, double hi) {
  if (!(v > 0.0) || !(v < hi))
    throw ParameterError(std::string("polyapprox: ") + name + " outside (0, " +
                         std::to_string(hi) + ")");
}

// Extra per-region points beyond the shared global grids: a local uniform
// fill plus geometric refinement toward both endpoints (transition regions
// of the lemma polynomials can be much narrower than the global pitch).
std::vector<double> region_extra_points(const PolyRegion& r) {
  std::vector<double> xs;
  double span = r.hi - r.lo;
  for (int i = 0; i <= 512; ++i) xs.push_back(r.lo + span * i / 512.0);
  for (int k = 1; k <= 120; ++k) {
    double off = span * std::pow(10.0, -k / 12.0);
    xs.push_back(r.lo + off);
    xs.push_back(r.hi - off);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

}  // namespace

double CertifiedPolynomial::eval(double x) const { return cheb::eval(coeffs_chebyshev, x); }

std::vector<double> CertifiedPolynomial::eval(const std::vector<double>& xs) const {
  return kernels::chebyshev_eval(coeffs_chebyshev, xs);
}

int poly_degree_cap() {
  static int cached = [] {
    if (const char* s = std::getenv("SAMPLIZER_LAB_POLY_DEGREE_CAP")) {
      int v = std::atoi(s);
      if (v > 0) return v;
    }
    return 150000;
  }();
  return cached;
}

CertificateReport certify(CertifiedPolynomial& p) {
  // Shared grids, evaluated once: the uniform certificate grid (Clenshaw)
  // and the Lobatto nodes (exact values via inverse DCT).
  int g = p.certificate_grid_points;
  std::vector<double> ux(g);
  for (int i = 0; i < g; ++i) ux[i] = -1.0 + 2.0 * i / (g - 1);
  std::vector<double> uy = p.eval(ux);
  int d = std::max(1, p.degree());
  std::vector<double> ly = cheb::synthesize(p.coeffs_chebyshev, d);
  std::vector<double> lx(d + 1);
  for (int j = 0; j <= d; ++j) lx[j] = std::cos(M_PI * j / d);

  CertificateReport rep;
  rep.certified = true;
  for (const PolyRegion& r : p.regions) {
    RegionReport rr;
    rr.target_id = r.target_id;
    rr.lo = r.lo;
    rr.hi = r.hi;
    rr.margin = 1e300;
    rr.worst_x = r.lo;
    if (r.hi < r.lo) {  // empty region is vacuously satisfied
      rr.margin = 0;
      rr.pass = true;
      rep.regions.push_back(rr);
      continue;
    }
    auto consider = [&](double x, double y) {
      if (x < r.lo || x > r.hi) return;
      double m;
      if (r.kind == PolyRegion::Kind::Band)
        m = std::min(y - r.band_lo, r.band_hi - y);
      else
        m = r.tol - std::fabs(y - r.target(x));
      if (m < rr.margin) {
        rr.margin = m;
        rr.worst_x = x;
      }
    };
    for (int i = 0; i < g; ++i) consider(ux[i], uy[i]);
    for (int j = 0; j <= d; ++j) consider(lx[j], ly[j]);
    auto xs = region_extra_points(r);
    auto ys = p.eval(xs);
    for (std::size_t i = 0; i < xs.size(); ++i) consider(xs[i], ys[i]);
    rr.pass = rr.margin >= 0.0;
    if (!rr.pass) rep.certified = false;
    rep.regions.push_back(rr);
  }
  p.certified = rep.certified;
  return rep;
}

namespace {

// Interpolate `target`, enforce parity, certify; escalate degree until the
// certificate passes or the cap is exceeded.
CertifiedPolynomial escalate(const std::function<double(double)>& target, int parity, int d0,
                             std::vector<PolyRegion> regions, double global_bound,
                             const char* what) {
  double worst_x = 0;
  double worst_margin = 0;
  int cap = poly_degree_cap();
  for (int d = std::max(d0, 4);; d += d / 2) {
    int dd = std::min(d, cap);
    if (parity != 0 && dd % 2 && dd < cap) ++dd;
    CertifiedPolynomial p;
    p.coeffs_chebyshev = cheb::interpolate(target, dd);
    cheb::enforce_parity(p.coeffs_chebyshev, parity);
    p.parity = parity;
    p.global_bound = global_bound;
    p.regions = regions;
    auto rep = certify(p);
    if (rep.certified) return p;
    for (const auto& rr : rep.regions)
      if (!rr.pass && rr.margin < worst_margin) {
        worst_margin = rr.margin;
        worst_x = rr.worst_x;
      }
    if (dd >= cap) break;
  }
  throw CertificationError(std::string(what) + ": certification failed up to degree cap " +
                               std::to_string(poly_degree_cap()) + " (worst margin " +
                               std::to_string(worst_margin) + ")",
                           worst_x);
}

PolyRegion band(double lo, double hi, double blo, double bhi, std::string id) {
  PolyRegion r;
  r.kind = PolyRegion::Kind::Band;
  r.lo = lo;
  r.hi = hi;
  r.band_lo = blo;
  r.band_hi = bhi;
  r.target_id = std::move(id);
  return r;
}

PolyRegion abserr(double lo, double hi, std::function<double(double)> f, double tol,
                  std::string id) {
  PolyRegion r;
  r.kind = PolyRegion::Kind::AbsErr;
  r.lo = lo;
  r.hi = hi;
  r.target = std::move(f);
  r.tol = tol;
  r.target_id = std::move(id);
  return r;
}

// Smooth even floor: m(x) = (x^{2q} + b^{2q})^{1/(2q)} >= max(|x|, b).
double smooth_floor(double x, double b, int q) {
  double ax = std::fabs(x);
  double hi = std::max(ax, b), lo = std::min(ax, b);
  if (hi <= 0) return 0;
  double ratio = std::pow(lo / hi, 2 * q);
  return hi * std::pow(1.0 + ratio, 1.0 / (2 * q));
}

}  // namespace

CertifiedPolynomial build_rectangle(double t, double delta, double eps) {
  check_open_unit(delta, "delta", 0.5);
  check_open_unit(eps, "eps", 0.5);
  if (!(t > 0.0) || t > 1.0 || !(t - delta > 0.0))
    throw ParameterError("build_rectangle: need t in (0,1] with t - delta > 0");
  double z = std::sqrt(std::log(8.0 / eps));
  double k = z / delta;
  auto target = [=](double x) {
    double g = 0.5 * (std::erf(k * (x + t)) - std::erf(k * (x - t)));
    return (1.0 - eps / 2.0) * g + eps / 4.0;
  };
  std::vector<PolyRegion> regions;
  regions.push_back(band(-t + delta, t - delta, 1.0 - eps, 1.0, "plateau [1-eps,1]"));
  if (t + delta <= 1.0) {
    regions.push_back(band(t + delta, 1.0, 0.0, eps, "stopband [0,eps]"));
    regions.push_back(band(-1.0, -t - delta, 0.0, eps, "stopband [0,eps] (mirror)"));
  }
  regions.push_back(band(-1.0, 1.0, -1.0, 1.0, "global |p|<=1"));
  int d0 = static_cast<int>(6.0 * k) + 24;
  return escalate(target, +1, d0, std::move(regions), 1.0, "build_rectangle");
}

CertifiedPolynomial build_negative_power(double c, double delta, double eps) {
  if (!(c > 0.0)) throw ParameterError("build_negative_power: c must be positive");
  check_open_unit(delta, "delta", 0.5);
  check_open_unit(eps, "eps", 0.5);
  // Smoothing scale b: as large as the accuracy budget on [delta,1] allows
  // (larger b pushes the complex singularities away, cutting the degree),
  // floored so the value at 0 stays below 1.
  double floorb = delta * std::pow(1.9, -1.0 / c);
  int q = 0;
  double b = 0, h = -1;
  for (int qq = 1; qq <= 8; ++qq) {
    double bb = delta * std::min(0.95, std::pow(qq * eps / (2.0 * c), 1.0 / (2.0 * qq)));
    if (bb < floorb) continue;
    double hh = bb * std::sin(M_PI / (2.0 * qq));
    if (hh > h) {
      h = hh;
      b = bb;
      q = qq;
    }
  }
  if (q == 0) {
    b = floorb;
    q = 1;
    while (q < 400 && (c / (2.0 * q)) * std::pow(1.9, -2.0 * q / c) > eps / 4.0) ++q;
    h = b * std::sin(M_PI / (2.0 * q));
  }
  auto target = [=](double x) { return 0.5 * std::pow(smooth_floor(x, b, q) / delta, -c); };
  auto f = [=](double x) { return 0.5 * std::pow(std::fabs(x) / delta, -c); };
  std::vector<PolyRegion> regions;
  regions.push_back(abserr(delta, 1.0, f, eps, "|p - (1/2)(x/delta)^{-c}| <= eps"));
  regions.push_back(abserr(-1.0, -delta, f, eps, "mirror accuracy region"));
  regions.push_back(band(-1.0, 1.0, -1.0, 1.0, "global |p|<=1"));
  int d0 = static_cast<int>(1.6 * std::log(100.0 / eps) / (0.8 * h)) + 32;
  return escalate(target, +1, d0, std::move(regions), 1.0, "build_negative_power");
}

CertifiedPolynomial build_positive_power(double c, double delta, double beta, double eps) {
  if (!(c > 0.0)) throw ParameterError("build_positive_power: c must be positive");
  if (!(0.0 < delta && delta < beta && beta <= 0.5))
    throw ParameterError("build_positive_power: need 0 < delta < beta <= 1/2");
  check_open_unit(eps, "eps", 0.5);
  int cc = static_cast<int>(std::ceil(c - 1e-12));
  double cfrac = cc - c;  // exponent of the negative-power factor
  double eps_internal = eps * std::pow(2.0 * beta, c) * std::pow(delta, cc - c);
  auto f = [=](double x) { return 0.25 * std::pow(std::fabs(x) / (2.0 * beta), c); };
  double cap_low = 2.0 * f(delta);

  for (double ei = std::min(eps_internal, 0.4); ; ei *= 0.5) {
    std::vector<double> qc;
    if (cfrac > 1e-12)
      qc = build_negative_power(cfrac, delta, ei).coeffs_chebyshev;
    else
      qc = {0.5};
    std::vector<double> rc = build_rectangle(1.5 * beta, 0.5 * beta, ei).coeffs_chebyshev;
    std::vector<double> pc = cheb::multiply(qc, rc);
    pc = cheb::multiply(pc, cheb::monomial(cc));
    double scale = 0.5 * std::pow(2.0 * beta, -c) * std::pow(delta, c - cc);
    for (double& v : pc) v *= scale;

    CertifiedPolynomial p;
    p.coeffs_chebyshev = std::move(pc);
    p.parity = (cc % 2 == 0) ? +1 : -1;
    cheb::enforce_parity(p.coeffs_chebyshev, p.parity);
    p.global_bound = 0.5;
    p.regions.push_back(band(-delta, delta, -cap_low, cap_low, "|p| <= 2f(delta) near 0"));
    p.regions.push_back(abserr(delta, beta, f, eps, "|p - (1/4)(x/2beta)^c| <= eps"));
    p.regions.push_back(band(-1.0, 1.0, -0.5, 0.5, "global |p|<=1/2"));
    auto rep = certify(p);
    if (rep.certified) return p;
    if (ei < 1e-8) {
      double wx = 0;
      for (const auto& rr : rep.regions)
        if (!rr.pass) wx = rr.worst_x;
      throw CertificationError("build_positive_power: certification failed", wx);
    }
  }
}

CertifiedPolynomial build_log(double delta, double eps, int normalization) {
  if (!(delta > 0.0) || delta > 1.0) throw ParameterError("build_log: delta outside (0,1]");
  if (!(eps > 0.0) || eps > 0.5) throw ParameterError("build_log: eps outside (0,1/2]");
  if (normalization != 2 && normalization != 4)
    throw ParameterError("build_log: normalization must be 2 or 4");
  double L = std::log(2.0 / delta);
  double nl = normalization * L;
  // Value floor keeps T(0) = ln(1/b)/(nL) <= 1/2; accuracy budget on
  // [delta,1] bounds b from above. Pick the q maximizing the singularity
  // distance b sin(pi/2q).
  double floorb = std::pow(delta / 2.0, normalization / 2.0);
  int q = 0;
  double b = 0, h = -1;
  for (int qq = 1; qq <= 8; ++qq) {
    double bb = delta * std::min(0.9, std::pow(2.0 * qq * nl * eps / 4.0, 1.0 / (2.0 * qq)));
    if (bb < floorb) continue;
    double hh = bb * std::sin(M_PI / (2.0 * qq));
    if (hh > h) {
      h = hh;
      b = bb;
      q = qq;
    }
  }
  if (q == 0) {
    b = delta / 2.0;
    q = 2;
    while (q < 200 && std::pow(0.5, 2.0 * q) / (2.0 * q) / nl > eps / 4.0) ++q;
    h = b * std::sin(M_PI / (2.0 * q));
  }
  auto target = [=](double x) {
    return (1.0 - eps / 4.0) * std::log(1.0 / smooth_floor(x, b, q)) / nl;
  };
  auto f = [=](double x) { return std::log(1.0 / std::fabs(x)) / nl; };
  std::vector<PolyRegion> regions;
  regions.push_back(abserr(delta, 1.0, f, eps, "|p - ln(1/x)/(n ln(2/delta))| <= eps"));
  regions.push_back(abserr(-1.0, -delta, f, eps, "mirror accuracy region"));
  regions.push_back(band(-1.0, 1.0, -0.5, 0.5, "global |p|<=1/2"));
  int d0 = static_cast<int>(1.6 * std::log(100.0 / eps) / (0.8 * h)) + 32;
  return escalate(target, +1, d0, std::move(regions), 0.5, "build_log");
}

CertifiedPolynomial build_arcsin_half(double eps) {
  if (!(eps > 0.0) || !(eps < 0.25)) throw ParameterError("build_arcsin_half: eps outside (0,1/4)");
  double s = std::sin(1.0);
  double w = 0.4 * eps;
  auto g = [=](double u) { return 0.5 * (u + std::sqrt(u * u + w * w)); };
  auto target = [=](double x) {
    double v = 0.5 * std::asin(std::clamp(x, -1.0, 1.0));
    double m = v - g(v - 0.5) + g(-v - 0.5);  // odd smooth clamp to [-1/2, 1/2]
    return (1.0 - w) * m;
  };
  std::vector<PolyRegion> regions;
  regions.push_back(abserr(-s, s, [](double x) { return 0.5 * std::asin(x); }, eps,
                           "|p - arcsin(x)/2| <= eps"));
  regions.push_back(band(-1.0, 1.0, -0.5, 0.5, "global |p|<=1/2"));
  int d0 = static_cast<int>(1.2 * std::log(40.0 / eps) / w) + 64;
  return escalate(target, -1, d0, std::move(regions), 0.5, "build_arcsin_half");
}

CertifiedPolynomial scaled(const CertifiedPolynomial& p, double s) {
  CertifiedPolynomial out;
  out.coeffs_chebyshev = p.coeffs_chebyshev;
  for (double& v : out.coeffs_chebyshev) v *= s;
  out.parity = p.parity;
  out.global_bound = std::fabs(s) * p.global_bound;
  out.certificate_grid_points = p.certificate_grid_points;
  out.certified = false;  // regions were dropped; caller re-certifies if needed
  return out;
}

}  // namespace qsl
