#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace cfm {

// Arbitrary-precision integer used for every matrix entry, digit and bound.
using Int = mpz_class;

// Exact rational (always canonical: gcd-reduced, positive denominator).
using Rational = mpq_class;

inline Int floor_div(const Int& num, const Int& den) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

inline Int ceil_div(const Int& num, const Int& den) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

inline Int gcd(const Int& x, const Int& y) {
  Int g;
  mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  return g;
}

inline int sign(const Int& x) { return sgn(x); }

inline std::string to_string(const Int& x) { return x.get_str(10); }

// Parses an optionally signed decimal integer, surrounding blanks allowed.
// Throws ParseError.
Int parse_int(std::string_view text);

}  // namespace cfm
