#pragma once

#include <cfmobius/integer.hpp>
#include <cfmobius/matrix.hpp>

#include <cstddef>
#include <vector>

namespace cfm {

// A sequence of digits c0 c1 ... cn. Inside a factorization c0 >= 0 and the
// rest are >= 1; raw transducer output may carry interior zeros.
using FactorWord = std::vector<Int>;

// Left-to-right product of digit matrices [[ci, 1], [1, 0]].
// Throws DomainError on an empty word.
IntMatrix2 pi(const FactorWord& word);

// Contraction map: scanning left to right, replaces the first subword
// (a, 0, b) by (a + b) and rescans until none is left. pi(mu(w)) == pi(w).
FactorWord mu(const FactorWord& word);

// Streaming form of mu. Pushing digits one at a time yields the same word as
// mu() over the concatenation; only the trailing two entries can change on
// any push.
class MuAccumulator {
 public:
  void push(const Int& digit);

  const FactorWord& digits() const { return digits_; }
  std::size_t size() const { return digits_.size(); }
  bool empty() const { return digits_.empty(); }

 private:
  FactorWord digits_;
};

}  // namespace cfm
