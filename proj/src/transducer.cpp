#include <cfmobius/transducer.hpp>

#include <cfmobius/bounds.hpp>
#include <cfmobius/errors.hpp>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace cfm {

Transducer::Transducer(IntMatrix2 m, std::size_t liveness_budget)
    : initial_(m), current_(std::move(m)), det_(current_.abs_det()), budget_(liveness_budget) {
  if (classify(current_) != MatrixClass::E2) {
    throw DomainError("transducer needs an E2 matrix, got " + current_.literal() + " (" +
                      std::string(to_string(classify(current_))) + ")");
  }
  if (budget_ == 0) budget_ = det_.fits_uint_p() ? 64 * (det_.get_ui() + 1) : SIZE_MAX;
}

std::optional<Int> Transducer::provisional() const {
  if (terminal_ || mu_.empty()) return std::nullopt;
  return mu_.digits().back();
}

std::vector<Int> Transducer::release() {
  std::vector<Int> fresh;
  const std::size_t target = mu_.size() - 1;
  for (; released_ < target; ++released_) {
    fresh.push_back(mu_.digits()[released_]);
    output_.push_back(mu_.digits()[released_]);
  }
  return fresh;
}

std::vector<Int> Transducer::feed(const Int& digit) {
  if (terminal_) throw DomainError("feed after flush");
  if (digit < 1) throw DomainError("transducer digits must be >= 1, got " + to_string(digit));
  if (!min_fed_ || digit < *min_fed_) min_fed_ = digit;
  if (!max_fed_ || digit > *max_fed_) max_fed_ = digit;

  current_ = current_ * digit_matrix(digit);
  ++consumed_;
  if (classify(current_) == MatrixClass::E2) {
    if (++since_emission_ > budget_) {
      throw LivenessError("no block completed within " + std::to_string(budget_) + " input digits");
    }
    return {};
  }
  Factorization f = factorize(current_);
  for (const Int& c : f.word) {
    raw_.push_back(c);
    mu_.push(c);
  }
  blocks_.push_back(Block{consumed_, raw_.size() - f.word.size(), std::move(f.word), f.residual});
  current_ = std::move(f.residual);
  since_emission_ = 0;
  return release();
}

std::vector<Int> Transducer::flush(const std::optional<Rational>& tail) {
  if (terminal_) throw DomainError("flush called twice");
  // (num : den) = current * tail, projectively; no tail means tail = infinity.
  Int num, den;
  if (tail) {
    num = current_.a() * tail->get_num() + current_.b() * tail->get_den();
    den = current_.c() * tail->get_num() + current_.d() * tail->get_den();
  } else {
    num = current_.a();
    den = current_.c();
  }
  // Apply the whole contracted word, provisional digit included.
  const FactorWord& word = mu_.digits();
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    Int next = *it * num + den;
    den = std::move(num);
    num = std::move(next);
  }
  if (den == 0) throw PoleError("M x is infinite for " + initial_.literal());

  // Peel the already released digits off again; what is left is the tail value.
  for (std::size_t i = 0; i < released_; ++i) {
    if (den == 0) throw std::logic_error("flush: released digits overshoot the exact value");
    Int rest = num - word[i] * den;
    num = std::move(den);
    den = std::move(rest);
  }
  std::vector<Int> fresh;
  if (den != 0) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    if (released_ > 0 && num < den) throw std::logic_error("flush: tail below 1 after a released digit");
    while (den != 0) {
      Int q = floor_div(num, den);
      Int rest = num - q * den;
      num = std::move(den);
      den = std::move(rest);
      fresh.push_back(std::move(q));
    }
  }
  output_.insert(output_.end(), fresh.begin(), fresh.end());
  terminal_ = true;
  return fresh;
}

std::size_t LemmaCheckLog::violations() const {
  return interior_violations + final_violations + corner_violations + x0_violations + y0_violations +
         y0_secondary_violations;
}

LemmaCheckLog& LemmaCheckLog::operator+=(const LemmaCheckLog& o) {
  interior_checked += o.interior_checked;
  interior_violations += o.interior_violations;
  final_checked += o.final_checked;
  final_violations += o.final_violations;
  corner_checked += o.corner_checked;
  corner_violations += o.corner_violations;
  x0_checked += o.x0_checked;
  x0_violations += o.x0_violations;
  y0_checked += o.y0_checked;
  y0_violations += o.y0_violations;
  y0_secondary_checked += o.y0_secondary_checked;
  y0_secondary_violations += o.y0_secondary_violations;
  return *this;
}

LemmaCheckLog lemma1_audit(const Transducer& state, const AuditParams& params) {
  const Int& D = state.det_magnitude();
  if (state.max_digit_fed() && *state.max_digit_fed() > params.K) {
    throw DomainError("lemma1_audit: a fed digit exceeds K = " + to_string(params.K));
  }
  const bool window = params.window && state.min_digit_fed() &&
                      *state.min_digit_fed() >= params.window->B1 && *state.max_digit_fed() <= params.window->B2;
  if (params.window && !window && state.min_digit_fed()) {
    throw DomainError("lemma1_audit: fed digits leave the window [B1, B2]");
  }

  LemmaCheckLog log;
  const auto& blocks = state.blocks();
  const Int interior_cap = D - 1;
  const Int final_cap = D * params.K;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const FactorWord& word = blocks[k].word;
    for (std::size_t i = 0; i + 1 < word.size(); ++i) {
      ++log.interior_checked;
      if (word[i] > interior_cap) ++log.interior_violations;
    }
    const Int& last = word.back();
    ++log.final_checked;
    if (last > final_cap) ++log.final_violations;
    if (last >= D) {
      ++log.corner_checked;
      if (blocks[k].residual.b() != 0) ++log.corner_violations;
    }
  }

  if (!window) return log;
  const Int& B1 = params.window->B1;
  const Int& B2 = params.window->B2;

  const Int x0_cap = floor_quadratic(x0(B1, B2).reciprocal() * D);
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (blocks[k].word.back() < D) continue;
    Int merged = 0;
    bool closed = false;
    for (std::size_t next = k + 1; next < blocks.size(); ++next) {
      const FactorWord& word = blocks[next].word;
      if (word.front() != 0) {
        closed = true;
        break;
      }
      merged += word[1];
      if (word.size() > 2) {
        closed = true;
        break;
      }
    }
    if (!closed) continue;
    ++log.x0_checked;
    if (merged > x0_cap) ++log.x0_violations;
  }

  const auto out = state.finalized();
  if (D >= 2 && out.size() >= 2 && out[0] == 0) {
    const QuadraticValue scaled = y0(B1, B2) * D;
    ++log.y0_checked;
    if (out[1] > floor_quadratic(scaled)) ++log.y0_violations;
    const IntMatrix2& m = state.initial();
    const bool extremal = m.a() == 0 && m.b() == 1 && m.c() == D && m.d() == 0;
    if (!extremal) {
      const QuadraticValue quarter(scaled.p() + 4 * scaled.r(), scaled.q(), scaled.n(), 4 * scaled.r());
      const Int cap = std::max(floor_quadratic(quarter), Int(D - 1));
      ++log.y0_secondary_checked;
      if (out[1] > cap) ++log.y0_secondary_violations;
    }
  }
  return log;
}

}  // namespace cfm
