#include <cfmobius/bounds.hpp>

#include <cfmobius/errors.hpp>

#include <stdexcept>
#include <utility>

namespace cfm {

Int isqrt(const Int& n) {
  if (n < 0) throw DomainError("isqrt of a negative number");
  Int root;
  mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
  return root;
}

int sign_of_quadratic(const Int& A, const Int& B, const Int& n) {
  if (n == 0 || B == 0) return sgn(A);
  const int sa = sgn(A);
  const int sb = sgn(B);
  if (sa >= 0 && sb > 0) return 1;
  if (sa <= 0 && sb < 0) return -1;
  // Opposite signs: compare magnitudes squared.
  const int cmp = sgn(Int(A * A - B * B * n));
  return sa > 0 ? cmp : -cmp;
}

QuadraticValue::QuadraticValue(Int p, Int q, Int n, Int r)
    : p_(std::move(p)), q_(std::move(q)), n_(std::move(n)), r_(std::move(r)) {
  if (r_ == 0) throw DomainError("QuadraticValue with zero denominator");
  if (n_ < 0) throw DomainError("QuadraticValue with negative radicand");
  if (q_ != 0 && n_ != 0) {
    const Int root = isqrt(n_);
    if (root * root == n_) {
      p_ += q_ * root;
      q_ = 0;
    }
  }
  if (q_ == 0 || n_ == 0) {
    q_ = 0;
    n_ = 0;
  }
  if (r_ < 0) {
    p_ = -p_;
    q_ = -q_;
    r_ = -r_;
  }
  const Int g = gcd(gcd(p_, q_), r_);
  if (g > 1) {
    p_ /= g;
    q_ /= g;
    r_ /= g;
  }
}

QuadraticValue QuadraticValue::operator+(const Int& k) const { return {p_ + k * r_, q_, n_, r_}; }

QuadraticValue QuadraticValue::operator*(const Int& k) const { return {p_ * k, q_ * k, n_, r_}; }

QuadraticValue QuadraticValue::reciprocal() const {
  const Int norm = p_ * p_ - q_ * q_ * n_;
  if (norm == 0) throw DomainError("reciprocal of zero");
  return {r_ * p_, -r_ * q_, n_, norm};
}

bool operator==(const QuadraticValue& lhs, const QuadraticValue& rhs) {
  if (lhs.p_ * rhs.r_ != rhs.p_ * lhs.r_) return false;
  if (lhs.rational() || rhs.rational()) return lhs.rational() == rhs.rational();
  return sgn(lhs.q_) == sgn(rhs.q_) &&
         lhs.q_ * lhs.q_ * lhs.n_ * rhs.r_ * rhs.r_ == rhs.q_ * rhs.q_ * rhs.n_ * lhs.r_ * lhs.r_;
}

std::string QuadraticValue::literal() const {
  if (rational()) return r_ == 1 ? to_string(p_) : to_string(p_) + "/" + to_string(r_);
  std::string out = "(" + to_string(p_) + (q_ > 0 ? "+" : "-");
  if (abs(q_) != 1) out += to_string(abs(q_)) + "*";
  out += "sqrt(" + to_string(n_) + "))/" + to_string(r_);
  return out;
}

Int floor_quadratic(const QuadraticValue& v) {
  Int m;
  if (v.q() >= 0) {
    m = floor_div(v.p() + isqrt(v.q() * v.q() * v.n()), v.r());
  } else {
    const Int square = v.q() * v.q() * v.n();
    Int root = isqrt(square);
    if (root * root != square) root += 1;
    m = floor_div(v.p() - root, v.r());
  }
  // m*r <= p + q sqrt(n) < (m+1)*r
  if (sign_of_quadratic(v.p() - m * v.r(), v.q(), v.n()) < 0 ||
      sign_of_quadratic(v.p() - (m + 1) * v.r(), v.q(), v.n()) >= 0) {
    throw std::logic_error("floor_quadratic bracketing failed for " + v.literal());
  }
  return m;
}

BoundParams::BoundParams(Int b1, Int b2, Int d) : B1(std::move(b1)), B2(std::move(b2)), D(std::move(d)) {
  if (B1 < 1) throw DomainError("B1 must be >= 1");
  if (B2 < B1) throw DomainError("B2 must be >= B1");
  if (D < 1) throw DomainError("D must be >= 1");
}

namespace {

Int window_radicand(const Int& B1, const Int& B2) {
  if (B1 < 1 || B2 < 1) throw DomainError("digit bounds must be >= 1");
  const Int product = B1 * B2;
  return product * product + 4 * product;
}

}  // namespace

QuadraticValue y0(const Int& B1, const Int& B2) { return {B1 * B2, 1, window_radicand(B1, B2), 2 * B1}; }

QuadraticValue x0(const Int& B1, const Int& B2) { return {B1 * B2, 1, window_radicand(B1, B2), 2 * B2}; }

Int theorem1_bound(const BoundParams& params) {
  return floor_div(params.D - 1, params.B1) + floor_quadratic(y0(params.B1, params.B2) * params.D);
}

Int stambul_bound(const Int& K, const Int& D) {
  if (K < 1 || D < 1) throw DomainError("stambul_bound needs K, D >= 1");
  const QuadraticValue golden_k(K, 1, K * K + 4 * K, 2);
  return D - 1 + floor_quadratic(golden_k * D);
}

Int lagarias_shallit_bound(const Int& K, const Int& D) {
  if (K < 1 || D < 1) throw DomainError("lagarias_shallit_bound needs K, D >= 1");
  return D * (K + 2);
}

}  // namespace cfm
