#pragma once

#include <cfmobius/cf_input.hpp>
#include <cfmobius/matrix.hpp>
#include <cfmobius/word.hpp>

#include <random>
#include <vector>

namespace cfm::test {

inline Int draw(std::mt19937_64& rng, long lo, long hi) {
  return Int(std::uniform_int_distribution<long>(lo, hi)(rng));
}

inline std::size_t draw_size(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Nonnegative matrix with entries in [0, hi] and nonzero determinant.
inline IntMatrix2 random_nonnegative(std::mt19937_64& rng, long hi) {
  for (;;) {
    Int a = draw(rng, 0, hi), b = draw(rng, 0, hi), c = draw(rng, 0, hi), d = draw(rng, 0, hi);
    if (a * d != b * c) return {a, b, c, d};
  }
}

inline IntMatrix2 random_matrix(std::mt19937_64& rng, long bound) {
  for (;;) {
    Int a = draw(rng, -bound, bound), b = draw(rng, -bound, bound), c = draw(rng, -bound, bound),
        d = draw(rng, -bound, bound);
    if (a * d != b * c) return {a, b, c, d};
  }
}

// E2 matrix with |det| <= max_det, by rejection from the box max{a+b, c+d} <= max_det.
inline IntMatrix2 random_e2(std::mt19937_64& rng, long max_det) {
  for (;;) {
    long a = std::uniform_int_distribution<long>(0, max_det)(rng);
    long b = std::uniform_int_distribution<long>(0, max_det - a)(rng);
    long c = std::uniform_int_distribution<long>(0, max_det)(rng);
    long d = std::uniform_int_distribution<long>(0, max_det - c)(rng);
    long det = a * d - b * c;
    if (det == 0 || std::abs(det) > max_det || (a - c) * (b - d) >= 0) continue;
    return {a, b, c, d};
  }
}

inline CFInput random_periodic(std::mt19937_64& rng, long head_lo, long head_hi, long lo, long hi,
                               std::size_t max_pre = 3, std::size_t max_period = 4) {
  Int head = draw(rng, head_lo, head_hi);
  std::vector<Int> pre(draw_size(rng, 0, max_pre)), period(draw_size(rng, 1, max_period));
  for (Int& v : pre) v = draw(rng, lo, hi);
  for (Int& v : period) v = draw(rng, lo, hi);
  return CFInput(head, pre, period);
}

inline CFInput random_finite(std::mt19937_64& rng, long head_lo, long head_hi, long lo, long hi,
                             std::size_t max_len = 8) {
  Int head = draw(rng, head_lo, head_hi);
  std::vector<Int> rest(draw_size(rng, 0, max_len));
  for (Int& v : rest) v = draw(rng, lo, hi);
  return CFInput(head, rest);
}

}  // namespace cfm::test
