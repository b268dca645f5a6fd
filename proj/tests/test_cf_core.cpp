#include "support.hpp"

#include <cfmobius/cf_input.hpp>
#include <cfmobius/errors.hpp>
#include <cfmobius/matrix.hpp>
#include <cfmobius/word.hpp>

#include <doctest.h>

using namespace cfm;

namespace {

FactorWord W(std::initializer_list<long> xs) {
  FactorWord w;
  for (long v : xs) w.emplace_back(v);
  return w;
}

}  // namespace

TEST_CASE("matrix construction and parsing") {
  IntMatrix2 m(7, 2, 3, 1);
  CHECK(m.det() == 1);
  CHECK(IntMatrix2() == IntMatrix2(1, 0, 0, 1));
  CHECK(IntMatrix2::parse("7,2,3,1") == m);
  CHECK(IntMatrix2::parse(" -1 , 0, 0 ,+1") == IntMatrix2(-1, 0, 0, 1));
  CHECK(m.literal() == "7,2,3,1");
  CHECK_THROWS_AS(IntMatrix2(1, 1, 1, 1), DomainError);
  CHECK_THROWS_AS(IntMatrix2::parse("1,1,1,1"), ParseError);
  CHECK_THROWS_AS(IntMatrix2::parse("1,2,3"), ParseError);
  CHECK_THROWS_AS(IntMatrix2::parse("1,2,x,4"), ParseError);
  CHECK(IntMatrix2::parse("123456789012345678901234567890,0,0,1").a() ==
        Int("123456789012345678901234567890"));
}

TEST_CASE("classify") {
  CHECK(classify({7, 2, 3, 1}) == MatrixClass::D2);
  CHECK(classify({1, 0, 0, 1}) == MatrixClass::E2);
  CHECK(classify({0, 1, 3, 0}) == MatrixClass::E2);
  CHECK(classify({1, 2, 3, 7}) == MatrixClass::D2prime);
  CHECK_THROWS_AS(classify({-1, 0, 0, 1}), DomainError);
  CHECK(to_string(MatrixClass::D2prime) == "D2prime");
}

TEST_CASE("classify is a partition and E2 respects the entry bound") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 10000; ++i) {
    IntMatrix2 m = test::random_nonnegative(rng, i % 2 ? 9 : 1000);
    const bool d2 = m.a() >= m.c() && m.b() >= m.d();
    const bool d2p = m.a() <= m.c() && m.b() <= m.d();
    const bool e2 = (m.a() - m.c()) * (m.b() - m.d()) < 0;
    REQUIRE(int(d2) + int(d2p) + int(e2) == 1);
    MatrixClass cls = classify(m);
    CHECK(cls == (d2 ? MatrixClass::D2 : d2p ? MatrixClass::D2prime : MatrixClass::E2));
    if (e2) CHECK(within_e2_entry_bound(m));
  }
}

TEST_CASE("products") {
  IntMatrix2 m(3, -4, 5, 6);
  CHECK(IntMatrix2() * m == m);
  CHECK(IntMatrix2(2, 1, 1, 0) * IntMatrix2(3, 1, 1, 0) == IntMatrix2(7, 2, 3, 1));
  CHECK(abs((IntMatrix2(2, 1, 1, 0) * IntMatrix2(1, 0, 0, 2)).det()) == 2);
  CHECK(digit_matrix(5) * digit_matrix_inverse(5) == IntMatrix2());
  CHECK(digit_matrix_inverse(5) * digit_matrix(5) == IntMatrix2());
}

TEST_CASE("pi") {
  CHECK(pi(W({3})) == IntMatrix2(3, 1, 1, 0));
  CHECK(pi(W({2, 3})) == IntMatrix2(7, 2, 3, 1));
  CHECK(pi(W({3, 0, 2})) == IntMatrix2(5, 1, 1, 0));
  CHECK_THROWS_AS(pi(FactorWord{}), DomainError);
}

TEST_CASE("mu examples") {
  CHECK(mu(W({3, 0, 2})) == W({5}));
  CHECK(mu(W({2, 1, 3})) == W({2, 1, 3}));
  CHECK(mu(W({1, 0, 2, 0, 3})) == W({6}));
  CHECK(mu(W({0, 4, 1})) == W({0, 4, 1}));
  CHECK(mu(W({0, 0, 2})) == W({2}));
  CHECK(mu(FactorWord{}).empty());
}

TEST_CASE("mu preserves pi, is idempotent and leaves no interior zero") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 10000; ++i) {
    FactorWord w(test::draw_size(rng, 1, 20));
    for (Int& v : w) v = test::draw(rng, 0, 9);
    // A zero in the last position has no right neighbour to merge with.
    if (w.back() == 0) w.back() = test::draw(rng, 1, 9);
    FactorWord m = mu(w);
    REQUIRE(pi(m) == pi(w));
    CHECK(mu(m) == m);
    for (std::size_t j = 1; j < m.size(); ++j) CHECK(m[j] != 0);

    MuAccumulator acc;
    for (const Int& v : w) acc.push(v);
    CHECK(acc.digits() == m);
  }
}

TEST_CASE("pi(mu(w)) == pi(w) also with a trailing zero") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 2000; ++i) {
    FactorWord w(test::draw_size(rng, 1, 12));
    for (Int& v : w) v = test::draw(rng, 0, 3);
    CHECK(pi(mu(w)) == pi(w));
  }
}

TEST_CASE("continued fraction literals") {
  CFInput x = CFInput::parse("[2;(2)]");
  CHECK(x.head() == 2);
  CHECK(x.preperiod().empty());
  CHECK(x.period() == W({2}));
  CHECK(x.literal() == "[2;(2)]");
  CHECK(CFInput::parse("[3;7,16]").literal() == "[3;7,16]");
  CHECK(CFInput::parse(" [ -4 ; 2 ] ").literal() == "[-4;2]");
  CHECK(CFInput::parse("[5]").literal() == "[5]");
  CHECK(CFInput::parse("[0;4,(1,5)]").literal() == "[0;4,(1,5)]");
  for (const char* bad : {"", "[", "3;7", "[3;7", "[3;0]", "[3;(1,]", "[3;()]", "[3;(1),2]", "[a]", "[1;-2]"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(CFInput::parse(bad), ParseError);
  }
}

TEST_CASE("continued fractions are canonical") {
  CHECK(CFInput(3, W({7, 1})) == CFInput(3, W({8})));
  CHECK(CFInput(0, W({1})) == CFInput(1));
  CHECK(CFInput(1, W({2, 3, 2}), W({3, 2})) == CFInput(1, W({}), W({2, 3})));
  CHECK(CFInput(1, W({}), W({4, 1, 4, 1})) == CFInput(1, W({}), W({4, 1})));
  CHECK(CFInput(1, W({}), W({4, 1, 4, 1})).literal() == "[1;(4,1)]");
  CHECK_THROWS_AS(CFInput(1, W({0})), DomainError);
  CHECK_THROWS_AS(CFInput(1, W({}), W({2, 0})), DomainError);
}

TEST_CASE("digit access and tails") {
  CFInput x(1, W({2}), W({3, 4}));
  CHECK(x.digit(0) == 1);
  CHECK(x.digit(1) == 2);
  CHECK(x.digit(2) == 3);
  CHECK(x.digit(5) == 4);
  CHECK(x.tail(2) == CFInput(3, W({}), W({4, 3})));
  CHECK(x.period_max() == 4);
  CFInput f(3, W({7, 16}));
  CHECK(f.finite_length() == 3);
  CHECK_FALSE(f.has_digit(3));
  CHECK_THROWS_AS(f.digit(3), DomainError);
  CHECK_THROWS_AS(f.tail(3), DomainError);
}

TEST_CASE("evaluation and convergent bounds") {
  CHECK(evaluate(CFInput(3, W({7, 16}))) == Rational(355, 113));
  CHECK(evaluate(CFInput(-4, W({2}))) == Rational(-7, 2));
  CHECK_THROWS_AS(evaluate(CFInput(1, W({}), W({1}))), DomainError);

  auto [p, q] = cf_value_bounds(CFInput(1, W({}), W({1})), 3);
  CHECK(p == Rational(5, 3));
  CHECK(q == Rational(3, 2));
  auto [p2, q2] = cf_value_bounds(CFInput(3, W({7, 16})), 2);
  CHECK(p2 == Rational(355, 113));
  CHECK(q2 == Rational(22, 7));
  auto [p3, q3] = cf_value_bounds(CFInput(0, W({2})), 1);
  CHECK(p3 == Rational(1, 2));
  CHECK(q3 == Rational(0));
  CHECK_THROWS_AS(cf_value_bounds(CFInput(0, W({2})), 2), DomainError);
  CHECK_THROWS_AS(cf_value_bounds(CFInput(0, W({2})), 0), DomainError);
}

TEST_CASE("convergents bracket the value of finite expansions") {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 2000; ++i) {
    CFInput x = test::random_finite(rng, -20, 20, 1, 30, 10);
    if (x.finite_length() < 2) continue;
    Rational v = evaluate(x);
    for (std::size_t n = 1; n < x.finite_length(); ++n) {
      auto [hi, lo] = cf_value_bounds(x, n);
      if (lo > hi) std::swap(lo, hi);
      CHECK(lo <= v);
      CHECK(v <= hi);
      Int cross = hi.get_num() * lo.get_den() - lo.get_num() * hi.get_den();
      CHECK(abs(cross) == 1);
    }
  }
}
