#pragma once

#include <cfmobius/matrix.hpp>
#include <cfmobius/word.hpp>

namespace cfm {

// M = pi(word) * residual with residual in E2, word[0] >= 0, word[i] >= 1.
struct Factorization {
  FactorWord word;
  IntMatrix2 residual;
};

// Unique factorization of a matrix in D2 or D2prime. Digits are peeled off
// greedily: q = min(floor(a/c), floor(b/d)) (a zero denominator counts as
// +infinity), then M <- [[0,1],[1,-q]] * M, until the remainder lands in E2.
// The last digit produced this way is the one the terminal cases prescribe:
// it comes from whichever column ratio still has a quotient left, or the
// smaller of the two.
//
// Throws DomainError for negative entries or an input already in E2.
Factorization factorize(const IntMatrix2& m);

// True iff word without its last digit is a continued-fraction prefix of both
// a/c and b/d. Both expansions of a rational ratio count ([1] and [0; 1]), and
// a ratio whose denominator reaches zero is +infinity, which has every finite
// prefix.
bool common_prefix_check(const IntMatrix2& m, const FactorWord& word);

}  // namespace cfm
