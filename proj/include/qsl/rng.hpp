#pragma once

#include <cstdint>

namespace qsl {

// Counter-based splittable generator. State is (key, counter); each draw
// hashes key^counter, so substreams derived via split() are independent and
// a fixed (seed, stream, counter) triple always yields the same value.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed, std::uint64_t stream = 0);

  // Derive the RNG for substream `stream` (batch j uses substream j).
  SplitRng split(std::uint64_t stream) const;

  std::uint64_t next_u64();
  double uniform();                 // [0, 1)
  double uniform(double a, double b);
  double normal();                  // standard normal, Box-Muller (no cache)
  // One draw distributed as Binomial(k, p): inversion for small means,
  // transformed rejection (BTRS) for large ones.
  std::uint64_t binomial(std::uint64_t k, double p);

  // Convenience for std-style usage.
  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ULL; }
  result_type operator()() { return next_u64(); }

 private:
  std::uint64_t key_;
  std::uint64_t ctr_ = 0;
};

}  // namespace qsl
