#pragma once

#include <cfmobius/integer.hpp>
#include <cfmobius/matrix.hpp>

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cfm {

// A continued fraction [a0; a1, a2, ...]: an integer head followed by a finite
// preperiod and an optional repeating period, all digits after the head >= 1.
//
// Values are kept canonical so that equal values compare equal:
//  - finite: the last digit is >= 2 whenever there is more than one digit
//    ([3; 7, 1] becomes [3; 8]);
//  - periodic: least period, and the preperiod is shortened as far as
//    rotating the period allows ([1; 2, (3, 2)] becomes [1; (2, 3)]).
//
// Text form: "[a0]", "[a0; d1, d2]", "[a0; d1, (p1, p2)]", "[a0; (p1)]".
class CFInput {
 public:
  // Throws DomainError if a digit after the head is < 1.
  explicit CFInput(Int head, std::vector<Int> preperiod = {}, std::vector<Int> period = {});

  // Throws ParseError.
  static CFInput parse(std::string_view text);

  const Int& head() const { return head_; }
  const std::vector<Int>& preperiod() const { return preperiod_; }
  const std::vector<Int>& period() const { return period_; }

  bool periodic() const { return !period_.empty(); }

  // Number of digits of a finite expansion, head included.
  std::size_t finite_length() const { return 1 + preperiod_.size(); }

  bool has_digit(std::size_t index) const { return periodic() || index < finite_length(); }

  // a_index. Throws DomainError past the end of a finite expansion.
  const Int& digit(std::size_t index) const;

  // [a_j; a_{j+1}, ...]. Throws DomainError if a_j does not exist.
  CFInput tail(std::size_t j) const;

  // Largest digit over the period (the eventual maximum). Periodic only.
  Int period_max() const;

  std::string literal() const;

  friend bool operator==(const CFInput&, const CFInput&) = default;

 private:
  void canonicalize();

  Int head_;
  std::vector<Int> preperiod_;
  std::vector<Int> period_;
};

// Exact value of a finite continued fraction. Throws DomainError if periodic.
Rational evaluate(const CFInput& x);

// The consecutive convergents (p_n/q_n, p_{n-1}/q_{n-1}), read off the
// columns of the digit product over a0..an. The value of x lies between them.
// Throws DomainError when n == 0 or x has no digit a_n.
std::pair<Rational, Rational> cf_value_bounds(const CFInput& x, std::size_t n);

}  // namespace cfm
