#pragma once

#include <cstdlib>

namespace qsl {

// Maximum total Hilbert-space dimension for any constructed object.
// Default 2^12; override with SAMPLIZER_LAB_MAX_DIM.
inline long max_total_dim() {
  static long cached = [] {
    if (const char* s = std::getenv("SAMPLIZER_LAB_MAX_DIM")) {
      long v = std::atol(s);
      if (v > 0) return v;
    }
    return 4096L;
  }();
  return cached;
}

}  // namespace qsl
