#include <cfmobius/word.hpp>

#include <cfmobius/errors.hpp>

namespace cfm {

IntMatrix2 pi(const FactorWord& word) {
  if (word.empty()) throw DomainError("pi of an empty word");
  IntMatrix2 product = digit_matrix(word.front());
  for (std::size_t i = 1; i < word.size(); ++i) product = product * digit_matrix(word[i]);
  return product;
}

FactorWord mu(const FactorWord& word) {
  FactorWord out = word;
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t i = 1; i + 1 < out.size(); ++i) {
      if (out[i] == 0) {
        out[i - 1] += out[i + 1];
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(i), out.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        merged = true;
        break;
      }
    }
  }
  return out;
}

void MuAccumulator::push(const Int& digit) {
  digits_.push_back(digit);
  // A zero at index >= 1 that now has a right neighbour is merged away.
  while (digits_.size() >= 3 && digits_[digits_.size() - 2] == 0) {
    Int right = std::move(digits_.back());
    digits_.pop_back();
    digits_.pop_back();
    digits_.back() += right;
  }
}

}  // namespace cfm
