#include <cfmobius/matrix.hpp>

#include <cfmobius/errors.hpp>

#include <algorithm>
#include <cctype>
#include <string>
#include <utility>
#include <vector>

namespace cfm {

Int parse_int(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  std::string s(text);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  const bool body_ok =
      !s.empty() && std::all_of(s.begin() + (s.front() == '-' ? 1 : 0), s.end(),
                                [](unsigned char ch) { return std::isdigit(ch) != 0; });
  if (!body_ok || s == "-") throw ParseError("not an integer: '" + std::string(text) + "'");
  Int value;
  if (value.set_str(s, 10) != 0) throw ParseError("not an integer: '" + std::string(text) + "'");
  return value;
}

IntMatrix2::IntMatrix2() = default;

IntMatrix2::IntMatrix2(Int a, Int b, Int c, Int d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (det() == 0) throw DomainError("degenerate matrix " + literal() + " (determinant 0)");
}

IntMatrix2::IntMatrix2(Unchecked, Int a, Int b, Int c, Int d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {}

IntMatrix2 IntMatrix2::parse(std::string_view text) {
  std::vector<Int> entries;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    entries.push_back(parse_int(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (entries.size() != 4) {
    throw ParseError("matrix literal needs four entries a,b,c,d: '" + std::string(text) + "'");
  }
  try {
    return {entries[0], entries[1], entries[2], entries[3]};
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

IntMatrix2 IntMatrix2::negated() const { return {Unchecked{}, -a_, -b_, -c_, -d_}; }

std::string IntMatrix2::literal() const {
  return to_string(a_) + "," + to_string(b_) + "," + to_string(c_) + "," + to_string(d_);
}

IntMatrix2 mat_mul(const IntMatrix2& l, const IntMatrix2& r) {
  return {IntMatrix2::Unchecked{}, l.a_ * r.a_ + l.b_ * r.c_, l.a_ * r.b_ + l.b_ * r.d_,
          l.c_ * r.a_ + l.d_ * r.c_, l.c_ * r.b_ + l.d_ * r.d_};
}

IntMatrix2 digit_matrix(const Int& digit) { return {IntMatrix2::Unchecked{}, digit, 1, 1, 0}; }

IntMatrix2 digit_matrix_inverse(const Int& digit) {
  return {IntMatrix2::Unchecked{}, 0, 1, 1, -digit};
}

MatrixClass classify(const IntMatrix2& m) {
  if (!m.nonnegative()) throw DomainError("classify needs nonnegative entries, got " + m.literal());
  const int top = sgn(m.a() - m.c());
  const int bottom = sgn(m.b() - m.d());
  if (top * bottom < 0) return MatrixClass::E2;
  // a == c and b == d would force det == 0, so exactly one branch applies.
  if (top >= 0 && bottom >= 0) return MatrixClass::D2;
  return MatrixClass::D2prime;
}

std::string_view to_string(MatrixClass cls) {
  switch (cls) {
    case MatrixClass::D2:
      return "D2";
    case MatrixClass::D2prime:
      return "D2prime";
    case MatrixClass::E2:
      return "E2";
  }
  return "?";
}

bool within_e2_entry_bound(const IntMatrix2& m) {
  const Int D = m.abs_det();
  return abs(m.a()) + abs(m.b()) <= D && abs(m.c()) + abs(m.d()) <= D;
}

}  // namespace cfm
