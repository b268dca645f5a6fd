#include <cfmobius/cf_input.hpp>

#include <cfmobius/errors.hpp>
#include <cfmobius/word.hpp>

#include <algorithm>
#include <cctype>

namespace cfm {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<Int> parse_digit_list(std::string_view text) {
  std::vector<Int> out;
  text = trim(text);
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(parse_int(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

void append_list(std::string& out, const std::vector<Int>& digits) {
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i) out += ',';
    out += to_string(digits[i]);
  }
}

}  // namespace

CFInput::CFInput(Int head, std::vector<Int> preperiod, std::vector<Int> period)
    : head_(std::move(head)), preperiod_(std::move(preperiod)), period_(std::move(period)) {
  for (const auto* list : {&preperiod_, &period_}) {
    for (const Int& digit : *list) {
      if (digit < 1) throw DomainError("continued-fraction digits after the head must be >= 1");
    }
  }
  canonicalize();
}

void CFInput::canonicalize() {
  if (period_.empty()) {
    if (!preperiod_.empty() && preperiod_.back() == 1) {
      preperiod_.pop_back();
      (preperiod_.empty() ? head_ : preperiod_.back()) += 1;
    }
    return;
  }
  const std::size_t len = period_.size();
  for (std::size_t p = 1; p < len; ++p) {
    if (len % p != 0) continue;
    bool repeats = true;
    for (std::size_t i = p; i < len && repeats; ++i) repeats = period_[i] == period_[i - p];
    if (repeats) {
      period_.resize(p);
      break;
    }
  }
  while (!preperiod_.empty() && preperiod_.back() == period_.back()) {
    preperiod_.pop_back();
    std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
  }
}

CFInput CFInput::parse(std::string_view text) {
  const std::string original(text);
  text = trim(text);
  if (text.size() < 3 || text.front() != '[' || text.back() != ']') {
    throw ParseError("continued fraction must look like [a0;d1,...,(p1,...)]: '" + original + "'");
  }
  text = text.substr(1, text.size() - 2);
  const auto semi = text.find(';');
  try {
    if (semi == std::string_view::npos) return CFInput(parse_int(text));
    Int head = parse_int(text.substr(0, semi));
    std::string_view rest = trim(text.substr(semi + 1));
    std::vector<Int> period;
    if (const auto open = rest.find('('); open != std::string_view::npos) {
      if (rest.back() != ')' || rest.find('(', open + 1) != std::string_view::npos) {
        throw ParseError("the period must be the last group: '" + original + "'");
      }
      period = parse_digit_list(rest.substr(open + 1, rest.size() - open - 2));
      if (period.empty()) throw ParseError("empty period in '" + original + "'");
      rest = trim(rest.substr(0, open));
      if (!rest.empty()) {
        if (rest.back() != ',') throw ParseError("missing ',' before the period in '" + original + "'");
        rest.remove_suffix(1);
        if (trim(rest).empty()) throw ParseError("dangling ',' in '" + original + "'");
      }
    } else if (rest.empty()) {
      throw ParseError("no digits after ';' in '" + original + "'");
    }
    return CFInput(std::move(head), parse_digit_list(rest), std::move(period));
  } catch (const DomainError& e) {
    throw ParseError(std::string(e.what()) + ": '" + original + "'");
  }
}

const Int& CFInput::digit(std::size_t index) const {
  if (index == 0) return head_;
  if (index <= preperiod_.size()) return preperiod_[index - 1];
  if (period_.empty()) throw DomainError("finite continued fraction has no digit " + std::to_string(index));
  return period_[(index - 1 - preperiod_.size()) % period_.size()];
}

CFInput CFInput::tail(std::size_t j) const {
  if (!has_digit(j)) throw DomainError("continued fraction has no digit " + std::to_string(j));
  Int new_head = digit(j);
  if (!periodic()) {
    return CFInput(std::move(new_head),
                   std::vector<Int>(preperiod_.begin() + static_cast<std::ptrdiff_t>(std::min(j, preperiod_.size())),
                                    preperiod_.end()));
  }
  std::vector<Int> pre;
  for (std::size_t i = j + 1; i <= preperiod_.size(); ++i) pre.push_back(preperiod_[i - 1]);
  std::vector<Int> per;
  const std::size_t first = std::max(j + 1, preperiod_.size() + 1);
  for (std::size_t i = 0; i < period_.size(); ++i) per.push_back(digit(first + i));
  return CFInput(std::move(new_head), std::move(pre), std::move(per));
}

Int CFInput::period_max() const {
  if (period_.empty()) throw DomainError("period_max of a finite continued fraction");
  return *std::max_element(period_.begin(), period_.end());
}

std::string CFInput::literal() const {
  std::string out = "[" + to_string(head_);
  if (!preperiod_.empty() || !period_.empty()) {
    out += ';';
    append_list(out, preperiod_);
    if (!period_.empty()) {
      if (!preperiod_.empty()) out += ',';
      out += '(';
      append_list(out, period_);
      out += ')';
    }
  }
  out += ']';
  return out;
}

Rational evaluate(const CFInput& x) {
  if (x.periodic()) throw DomainError("evaluate needs a finite continued fraction");
  FactorWord word{x.head()};
  word.insert(word.end(), x.preperiod().begin(), x.preperiod().end());
  const IntMatrix2 product = pi(word);
  Rational value(product.a(), product.c());
  value.canonicalize();
  return value;
}

std::pair<Rational, Rational> cf_value_bounds(const CFInput& x, std::size_t n) {
  if (n == 0) throw DomainError("cf_value_bounds needs n >= 1");
  if (!x.has_digit(n)) throw DomainError("continued fraction has fewer than " + std::to_string(n + 1) + " digits");
  FactorWord word;
  for (std::size_t i = 0; i <= n; ++i) word.push_back(x.digit(i));
  // pi(a0..an) = [[p_n, p_{n-1}], [q_n, q_{n-1}]]
  const IntMatrix2 product = pi(word);
  Rational current(product.a(), product.c());
  Rational previous(product.b(), product.d());
  current.canonicalize();
  previous.canonicalize();
  return {current, previous};
}

}  // namespace cfm
