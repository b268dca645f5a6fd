#pragma once

#include <cfmobius/integer.hpp>

#include <string>
#include <string_view>

namespace cfm {

// 2x2 integer matrix [[a, b], [c, d]] with nonzero determinant. Acts on the
// extended reals as the Moebius map x -> (a x + b) / (c x + d).
class IntMatrix2 {
 public:
  // Identity.
  IntMatrix2();
  // Throws DomainError when a*d - b*c == 0.
  IntMatrix2(Int a, Int b, Int c, Int d);

  static IntMatrix2 identity() { return {}; }

  // Parses the row-major literal "a,b,c,d".
  static IntMatrix2 parse(std::string_view text);

  const Int& a() const { return a_; }
  const Int& b() const { return b_; }
  const Int& c() const { return c_; }
  const Int& d() const { return d_; }

  Int det() const { return a_ * d_ - b_ * c_; }
  // D = |det|, always >= 1.
  Int abs_det() const { return abs(det()); }

  bool nonnegative() const { return a_ >= 0 && b_ >= 0 && c_ >= 0 && d_ >= 0; }

  // The same map with all entries negated (projectively equal).
  IntMatrix2 negated() const;

  std::string literal() const;

  friend bool operator==(const IntMatrix2&, const IntMatrix2&) = default;

 private:
  struct Unchecked {};
  IntMatrix2(Unchecked, Int a, Int b, Int c, Int d);

  friend IntMatrix2 mat_mul(const IntMatrix2& lhs, const IntMatrix2& rhs);
  friend IntMatrix2 digit_matrix(const Int& digit);
  friend IntMatrix2 digit_matrix_inverse(const Int& digit);

  Int a_{1}, b_{0}, c_{0}, d_{1};
};

// Exact product; |det(AB)| = |det A| |det B| so the result is nondegenerate.
IntMatrix2 mat_mul(const IntMatrix2& lhs, const IntMatrix2& rhs);

inline IntMatrix2 operator*(const IntMatrix2& lhs, const IntMatrix2& rhs) {
  return mat_mul(lhs, rhs);
}

// [[digit, 1], [1, 0]]
IntMatrix2 digit_matrix(const Int& digit);

// [[0, 1], [1, -digit]], the inverse of digit_matrix(digit).
IntMatrix2 digit_matrix_inverse(const Int& digit);

// Partition of nonnegative nondegenerate matrices by the ordering of their
// rows: D2 when a >= c and b >= d, D2prime when a <= c and b <= d, E2 when
// (a - c)(b - d) < 0.
enum class MatrixClass { D2, D2prime, E2 };

// Throws DomainError on a negative entry.
MatrixClass classify(const IntMatrix2& m);

std::string_view to_string(MatrixClass cls);

// max{a + b, c + d} <= D, the entry bound every E2 matrix satisfies.
bool within_e2_entry_bound(const IntMatrix2& m);

}  // namespace cfm
