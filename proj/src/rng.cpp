#include "qsl/rng.hpp"

#include <cmath>

#include "qsl/errors.hpp"

namespace qsl {
namespace {

inline std::uint64_t mix64(std::uint64_t z) {
  // splitmix64 finalizer
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

SplitRng::SplitRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(mix64(seed) ^ mix64(stream * 0xd1342543de82ef95ULL + 1))) {}

SplitRng SplitRng::split(std::uint64_t stream) const {
  SplitRng r(0);
  r.key_ = mix64(key_ ^ mix64(stream * 0x2545f4914f6cdd1dULL + 0x632be59bd9b4e019ULL));
  r.ctr_ = 0;
  return r;
}

std::uint64_t SplitRng::next_u64() { return mix64(key_ ^ mix64(ctr_++)); }

double SplitRng::uniform() {
  // 53 random bits -> [0,1)
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SplitRng::uniform(double a, double b) { return a + (b - a) * uniform(); }

double SplitRng::normal() {
  double u1 = uniform(), u2 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

std::uint64_t SplitRng::binomial(std::uint64_t k, double p) {
  if (p < 0.0 || p > 1.0) throw ParameterError("binomial: p outside [0,1]");
  if (k == 0 || p == 0.0) return 0;
  if (p == 1.0) return k;
  bool flipped = p > 0.5;
  double q = flipped ? 1.0 - p : p;
  double n = static_cast<double>(k);
  std::uint64_t draw;

  if (n * q < 10.0 || n < 64) {
    // Inversion by sequential search over the CDF.
    double s = q / (1.0 - q);
    double a = (n + 1.0) * s;
    double f = std::pow(1.0 - q, n);
    double u = uniform();
    std::uint64_t x = 0;
    while (u > f) {
      u -= f;
      ++x;
      if (x > k) { x = k; break; }
      f *= (a / static_cast<double>(x) - s);
    }
    draw = x;
  } else {
    // BTRS transformed rejection (Hormann 1993).
    const double spq = std::sqrt(n * q * (1.0 - q));
    const double b = 1.15 + 2.53 * spq;
    const double a = -0.0873 + 0.0248 * b + 0.01 * q;
    const double c = n * q + 0.5;
    const double v_r = 0.92 - 4.2 / b;
    const double alpha = (2.83 + 5.1 / b) * spq;
    const double m = std::floor((n + 1.0) * q);
    const double lpq = std::log(q / (1.0 - q));
    const double h = std::lgamma(m + 1.0) + std::lgamma(n - m + 1.0);
    for (;;) {
      double u = uniform() - 0.5;
      double v = uniform();
      double us = 0.5 - std::fabs(u);
      double kk = std::floor((2.0 * a / us + b) * u + c);
      if (kk < 0.0 || kk > n) continue;
      if (us >= 0.07 && v <= v_r) { draw = static_cast<std::uint64_t>(kk); break; }
      v = std::log(v * alpha / (a / (us * us) + b));
      double lhs = h - std::lgamma(kk + 1.0) - std::lgamma(n - kk + 1.0) + (kk - m) * lpq;
      if (v <= lhs) { draw = static_cast<std::uint64_t>(kk); break; }
    }
  }
  return flipped ? k - draw : draw;
}

}  // namespace qsl
