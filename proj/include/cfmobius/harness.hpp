#pragma once

#include <cfmobius/bounds.hpp>
#include <cfmobius/cf_input.hpp>
#include <cfmobius/integer.hpp>
#include <cfmobius/matrix.hpp>
#include <cfmobius/transducer.hpp>

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace cfm {

// First `count` digits of x, or all of them when x is finite and shorter.
std::vector<Int> expand(const CFInput& x, std::size_t count);

// "[d0;d1,d2" for an open prefix, "[d0;d1,d2]" when closed.
std::string format_digits(const std::vector<Int>& digits, bool closed);

struct TransduceResult {
  std::vector<Int> digits;          // final digits of M x
  bool complete = false;            // digits is the whole (finite) expansion
  std::optional<Int> provisional;   // lower bound for the next digit
  bool direct = false;              // M in E2 and x >= 1: transducer alone
};

// Digits of M x for any M with det != 0 and any x. When M is in E2 and
// a0 >= 1 the transducer runs on x directly. Otherwise the head of x is
// absorbed, the product is split into S-generators and an E2 core, the core
// runs through the transducer, and the generators are applied to the
// transducer's output by interval evaluation.
// count == 0 asks for the complete expansion (finite x only).
// Throws PoleError when M x is infinite, DomainError when count == 0 for a
// periodic x.
TransduceResult transduce(const IntMatrix2& m, const CFInput& x, std::size_t count);

// "[1;4,1,4 | provisional >= 1" or "[3;7,16]".
std::string format_transduce(const TransduceResult& result);

struct VerifyReport {
  std::size_t compared = 0;
  std::optional<std::size_t> first_mismatch;
  std::vector<Int> transducer, surd_oracle, gosper;
  bool agree() const { return !first_mismatch; }
};

// Transducer pipeline against the surd (or exact rational) oracle and the
// Gosper oracle on the first `count` digits. `inject_fault` bumps one
// transducer digit before comparing, as a self-test of the comparison.
VerifyReport verify(const IntMatrix2& m, const CFInput& x, std::size_t count, bool inject_fault = false);

struct SweepConfig {
  Int D_min = 1, D_max = 30;
  Int B_min = 1, B_max = 5;
  std::size_t trials = 10;        // per (D, B1, B2) cell
  std::size_t max_preperiod = 3;
  std::size_t max_period = 4;
  std::uint64_t seed = 42;
  std::size_t transducer_digits = 64;
  std::size_t jobs = 1;
  bool timing = false;

  // Throws DomainError on empty or out-of-range ranges.
  void validate() const;
};

struct TrialReport {
  std::size_t cell = 0, trial = 0;
  IntMatrix2 matrix;
  CFInput x{1};
  Int B1, B2, D;
  Int theorem1, stambul, lagarias_shallit;
  CFInput image{1};
  Int observed;
  std::size_t agreement = 0;      // leading transducer digits matching the oracle
  bool oracle_mismatch = false;
  LemmaCheckLog audit;
  std::vector<std::string> violations;
  std::optional<double> wall_ms;
  bool designated = false;        // the [[0,1],[D,0]], [B2;(B1,B2)] candidate

  double ratio() const;
};

struct SweepSummary {
  std::size_t trials = 0;
  std::size_t theorem1_violations = 0;
  std::size_t oracle_mismatches = 0;
  std::size_t lemma_violations = 0;
  LemmaCheckLog audit;
  std::optional<std::size_t> max_ratio_index;
  bool clean() const { return theorem1_violations == 0 && oracle_mismatches == 0 && lemma_violations == 0; }
};

struct SweepResult {
  std::vector<TrialReport> trials;
  SweepSummary summary;
};

// Uniform over the E2 matrices with nonnegative entries, |det| == D and
// max{a+b, c+d} <= D, which is what rejection sampling from that box yields.
// The pool is enumerated up front. Throws DomainError unless 1 <= D <= 256.
class E2Sampler {
 public:
  explicit E2Sampler(const Int& D);
  const std::vector<IntMatrix2>& candidates() const { return pool_; }
  const IntMatrix2& pick(std::mt19937_64& engine) const;

 private:
  std::vector<IntMatrix2> pool_;
};

// Evaluates one (M, x) pair against the bounds of its cell.
TrialReport evaluate_trial(const IntMatrix2& m, const CFInput& x, const Int& B1, const Int& B2,
                           std::size_t transducer_digits);

SweepResult run_sweep(const SweepConfig& config);

// Sweep trials plus M = [[0,1],[D,0]], x = [B2;(B1,B2)] in every cell,
// ordered by observed / bound, highest first (ties keep sweep order).
SweepResult run_search(const SweepConfig& config, bool include_designated, std::size_t top);

void write_json(std::ostream& out, const SweepResult& result);
void write_csv(std::ostream& out, const SweepResult& result);
std::string summary_line(const SweepSummary& summary);

}  // namespace cfm
