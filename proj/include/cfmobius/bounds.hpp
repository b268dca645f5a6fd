#pragma once

#include <cfmobius/integer.hpp>

#include <string>

namespace cfm {

// floor(sqrt(n)). Throws DomainError for n < 0.
Int isqrt(const Int& n);

// Sign of A + B*sqrt(n) for n >= 0, decided with integer arithmetic only.
int sign_of_quadratic(const Int& A, const Int& B, const Int& n);

// (p + q*sqrt(n)) / r, the exact form of the bound constants.
//
// Canonical form: r > 0, gcd(p, q, r) == 1, and q == 0 <=> n == 0 (a perfect
// square radicand is folded into p). The radicand itself is not reduced, so
// y0(2, 2) stays (4 + sqrt(32)) / 4. q may be negative; the constants
// themselves always have q > 0, negative q shows up in reciprocals.
class QuadraticValue {
 public:
  QuadraticValue(Int p, Int q, Int n, Int r);
  static QuadraticValue integer(const Int& k) { return {k, 0, 0, 1}; }

  const Int& p() const { return p_; }
  const Int& q() const { return q_; }
  const Int& n() const { return n_; }
  const Int& r() const { return r_; }

  bool rational() const { return q_ == 0; }

  QuadraticValue operator+(const Int& k) const;
  QuadraticValue operator*(const Int& k) const;
  // Throws DomainError on zero.
  QuadraticValue reciprocal() const;

  // Value equality; both sides must share a radicand unless one is rational.
  friend bool operator==(const QuadraticValue& lhs, const QuadraticValue& rhs);

  // "(p+sqrt(n))/r", "(p+q*sqrt(n))/r", "(p-q*sqrt(n))/r" or "p/r".
  std::string literal() const;

 private:
  Int p_, q_, n_, r_;
};

// Exact floor: the returned m satisfies m*r <= p + q*sqrt(n) < (m+1)*r,
// which is re-checked with squared integer comparisons before returning.
Int floor_quadratic(const QuadraticValue& v);

// Window of eventual digit values and the determinant magnitude.
struct BoundParams {
  // Throws DomainError unless 1 <= B1 <= B2 and D >= 1.
  BoundParams(Int B1, Int B2, Int D);
  Int B1, B2, D;
};

// y0 = [B2; B1, B2, B1, ...] = (B1 B2 + sqrt(B1^2 B2^2 + 4 B1 B2)) / (2 B1)
QuadraticValue y0(const Int& B1, const Int& B2);
// x0 = [B1; B2, B1, B2, ...] = (B1 B2 + sqrt(B1^2 B2^2 + 4 B1 B2)) / (2 B2)
QuadraticValue x0(const Int& B1, const Int& B2);

// floor((D - 1) / B1) + floor(D * y0(B1, B2))
Int theorem1_bound(const BoundParams& params);

// D - 1 + floor(D (K + sqrt(K^2 + 4K)) / 2). Throws DomainError unless K, D >= 1.
Int stambul_bound(const Int& K, const Int& D);

// D (K + 2). Throws DomainError unless K, D >= 1.
Int lagarias_shallit_bound(const Int& K, const Int& D);

}  // namespace cfm
