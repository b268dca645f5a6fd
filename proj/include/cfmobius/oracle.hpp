#pragma once

#include <cfmobius/bounds.hpp>
#include <cfmobius/cf_input.hpp>
#include <cfmobius/integer.hpp>
#include <cfmobius/matrix.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace cfm {

// Quadratic irrational (P + sqrt(N)) / Q with N > 0 not a perfect square and
// Q != 0, kept in the normal form Q | N - P^2. A value that does not satisfy
// it is rescaled by |Q| on construction, so the representation of a given
// value is not unique; equality compares values.
class Surd {
 public:
  // Throws DomainError if N is not a positive non-square or Q == 0.
  Surd(Int P, Int N, Int Q);

  const Int& P() const { return P_; }
  const Int& N() const { return N_; }
  const Int& Q() const { return Q_; }

  Int floor() const;

  // "(P+sqrt(N))/Q"
  std::string literal() const;

  friend bool operator==(const Surd& lhs, const Surd& rhs);

 private:
  Int P_, N_, Q_;
};

// Sign of s - r.
int compare(const Surd& s, const Rational& r);

// Irrational QuadraticValue as a Surd. Throws DomainError if rational.
Surd to_surd(const QuadraticValue& v);

// Canonical finite expansion with a0 = floor(num / den).
// Throws DomainError if den == 0.
CFInput rational_cf(const Int& num, const Int& den);
CFInput rational_cf(const Rational& r);

// Eventually periodic expansion, period found at the first repeated (P, Q)
// state. Throws Error if no repetition shows up within 10^6 steps.
CFInput surd_cf(const Surd& s);

// (a s + b) / (c s + d).
Surd apply_moebius_surd(const IntMatrix2& m, const Surd& s);

// Exact value of a periodic expansion. Throws DomainError if x is finite.
Surd cf_to_surd(const CFInput& x);

// First `count` digits of M x by one-variable Gosper evaluation. Any M with
// det != 0, any head. For finite x the result stops at the last digit of
// M x even if that is fewer than `count`.
// Throws PoleError when x is rational and c x + d == 0.
std::vector<Int> gosper_emit(const IntMatrix2& m, const CFInput& x, std::size_t count);

struct PeriodicImage {
  Int max_quotient;  // largest digit over the period of M x
  CFInput image;     // the full expansion of M x
};

// Throws DomainError if x is finite.
PeriodicImage periodic_max_quotient(const IntMatrix2& m, const CFInput& x);

}  // namespace cfm
