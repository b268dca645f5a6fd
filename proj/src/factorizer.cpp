#include <cfmobius/factorizer.hpp>

#include <cfmobius/errors.hpp>

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>

namespace cfm {

namespace {

// floor(num/den), or nullopt for +infinity.
std::optional<Int> column_quotient(const Int& num, const Int& den) {
  if (den == 0) return std::nullopt;
  return floor_div(num, den);
}

// Euclidean digits of num/den; empty when den == 0 (+infinity).
FactorWord ratio_digits(Int num, Int den) {
  FactorWord out;
  while (den != 0) {
    Int q = floor_div(num, den);
    Int rem = num - q * den;
    out.push_back(std::move(q));
    num = std::move(den);
    den = std::move(rem);
  }
  return out;
}

// The expansion ends in +infinity, which has every continuation.
bool prefix_of(const FactorWord& expansion, const FactorWord& word, std::size_t prefix_len) {
  for (std::size_t i = 0; i < prefix_len && i < expansion.size(); ++i) {
    if (expansion[i] != word[i]) return false;
  }
  return true;
}

// A rational has two expansions, [.., k] and [.., k - 1, 1]; either will do.
bool prefix_of_ratio(const Int& num, const Int& den, const FactorWord& word, std::size_t prefix_len) {
  FactorWord expansion = ratio_digits(num, den);
  if (prefix_of(expansion, word, prefix_len)) return true;
  if (expansion.empty()) return false;
  expansion.back() -= 1;
  expansion.emplace_back(1);
  return prefix_of(expansion, word, prefix_len);
}

}  // namespace

Factorization factorize(const IntMatrix2& m) {
  if (classify(m) == MatrixClass::E2) {
    throw DomainError("factorize: " + m.literal() + " is already in E2");
  }
  Factorization out{{}, m};
  IntMatrix2& rest = out.residual;
  while (classify(rest) != MatrixClass::E2) {
    const auto left = column_quotient(rest.a(), rest.c());
    const auto right = column_quotient(rest.b(), rest.d());
    // Both infinite would mean c == d == 0, impossible with det != 0.
    const Int q = !left ? *right : !right ? *left : std::min(*left, *right);
    if (!out.word.empty() && q < 1) {
      throw std::logic_error("factorize: non-positive interior digit for " + m.literal());
    }
    out.word.push_back(q);
    rest = digit_matrix_inverse(q) * rest;
  }
  return out;
}

bool common_prefix_check(const IntMatrix2& m, const FactorWord& word) {
  if (word.empty()) return false;
  const std::size_t prefix_len = word.size() - 1;
  return prefix_of_ratio(m.a(), m.c(), word, prefix_len) &&
         prefix_of_ratio(m.b(), m.d(), word, prefix_len);
}

}  // namespace cfm
