#pragma once

#include <cfmobius/factorizer.hpp>
#include <cfmobius/integer.hpp>
#include <cfmobius/matrix.hpp>
#include <cfmobius/word.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace cfm {

// One emission: the running product left E2 after absorbing input digit
// number `input_end` (1-based count) and factorized as pi(word) * residual.
struct Block {
  std::size_t input_end = 0;
  std::size_t raw_begin = 0;  // position of word[0] in the raw output
  FactorWord word;
  IntMatrix2 residual;  // the E2 matrix the next step starts from
};

// Streaming continued-fraction transducer for x -> M x with M in E2 and
// x = [a0; a1, ...] > 1 supplied digit by digit (a0 >= 1 first).
//
// Each fed digit multiplies the running matrix by [[a, 1], [1, 0]]. While the
// product stays in E2 nothing happens; once it lands in D2 or D2prime it is
// factorized, the word is emitted and the residual becomes the running matrix.
// Emitted words are contracted with mu on the fly. All contracted digits but
// the last are final; the last may still grow through a later "0 k" merge and
// is held back as provisional.
//
// Single owner; not safe for concurrent mutation.
class Transducer {
 public:
  // Throws DomainError unless classify(m) == E2. A zero budget selects the
  // default of 64 (D + 1) input digits per block.
  explicit Transducer(IntMatrix2 m, std::size_t liveness_budget = 0);

  // Absorbs one digit >= 1 and returns the digits it finalized.
  // Throws DomainError on digit < 1, LivenessError when the budget is spent.
  std::vector<Int> feed(const Int& digit);

  // Ends the input. With no tail the fed digits are the whole expansion
  // (the remaining tail is +infinity); otherwise `tail` is the exact value of
  // the unfed remainder. Returns the digits that complete the expansion of
  // M x. Throws PoleError when M x is infinite.
  std::vector<Int> flush(const std::optional<Rational>& tail = std::nullopt);

  const IntMatrix2& initial() const { return initial_; }
  const IntMatrix2& current() const { return current_; }
  const Int& det_magnitude() const { return det_; }
  std::size_t consumed() const { return consumed_; }
  bool terminal() const { return terminal_; }

  const FactorWord& raw_emitted() const { return raw_; }
  // Finalized output so far (everything once flushed).
  std::span<const Int> finalized() const { return output_; }
  // Lower bound for the next output digit; empty before any emission and
  // after flush.
  std::optional<Int> provisional() const;
  const std::vector<Block>& blocks() const { return blocks_; }

  const std::optional<Int>& min_digit_fed() const { return min_fed_; }
  const std::optional<Int>& max_digit_fed() const { return max_fed_; }

 private:
  std::vector<Int> release();

  IntMatrix2 initial_;
  IntMatrix2 current_;
  Int det_;
  std::size_t budget_;
  std::size_t consumed_ = 0;
  std::size_t since_emission_ = 0;
  bool terminal_ = false;
  FactorWord raw_;
  MuAccumulator mu_;
  std::size_t released_ = 0;
  std::vector<Int> output_;
  std::vector<Block> blocks_;
  std::optional<Int> min_fed_, max_fed_;
};

// Tallies of the block-level digit claims. Violation counters must stay zero;
// anything else is a bug in the transducer.
struct LemmaCheckLog {
  // (i) every block digit but the last is <= D - 1
  std::size_t interior_checked = 0, interior_violations = 0;
  // (ii) every block-final digit is <= D K
  std::size_t final_checked = 0, final_violations = 0;
  // (iii) a block-final digit >= D leaves a residual with upper-right entry 0
  std::size_t corner_checked = 0, corner_violations = 0;
  // After a block-final digit >= D, the digits merged in through following
  // "0 k" blocks sum to at most floor(D / x0).
  std::size_t x0_checked = 0, x0_violations = 0;
  // Initial matrix, D >= 2, output starting with 0: c1 <= floor(D y0).
  std::size_t y0_checked = 0, y0_violations = 0;
  // Same, M != [[0,1],[D,0]]: c1 <= max{floor(D y0 / 4 + 1), D - 1}.
  std::size_t y0_secondary_checked = 0, y0_secondary_violations = 0;

  std::size_t violations() const;
  bool clean() const { return violations() == 0; }
  LemmaCheckLog& operator+=(const LemmaCheckLog& other);
};

struct DigitWindow {
  Int B1, B2;
};

struct AuditParams {
  Int K;  // every fed digit is <= K
  // When every fed digit lies in [B1, B2] the x0 / y0 checks are run too.
  std::optional<DigitWindow> window;
};

// Replays the recorded blocks against the claims above. Violations are
// counted, never thrown. Throws DomainError if the fed digits break the
// stated K or window.
LemmaCheckLog lemma1_audit(const Transducer& state, const AuditParams& params);

}  // namespace cfm
