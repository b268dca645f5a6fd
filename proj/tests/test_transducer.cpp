#include "support.hpp"

#include <cfmobius/errors.hpp>
#include <cfmobius/oracle.hpp>
#include <cfmobius/transducer.hpp>

#include <doctest.h>

using namespace cfm;

namespace {

std::vector<Int> V(std::initializer_list<long> xs) {
  std::vector<Int> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

std::vector<Int> finalized(const Transducer& t) { return {t.finalized().begin(), t.finalized().end()}; }

// Feeds digits of x until at least `count` digits are final.
void run(Transducer& t, const CFInput& x, std::size_t count) {
  for (std::size_t i = 0; t.finalized().size() < count; ++i) t.feed(x.digit(i));
}

std::vector<Int> oracle_digits(const IntMatrix2& m, const CFInput& x, std::size_t count) {
  CFInput image = surd_cf(apply_moebius_surd(m, cf_to_surd(x)));
  std::vector<Int> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(image.digit(i));
  return out;
}

}  // namespace

TEST_CASE("construction") {
  CHECK(Transducer(IntMatrix2()).current() == IntMatrix2());
  CHECK(Transducer(IntMatrix2(1, 0, 0, 2)).det_magnitude() == 2);
  CHECK_THROWS_AS(Transducer(IntMatrix2(7, 2, 3, 1)), DomainError);
  CHECK_THROWS_AS(Transducer(IntMatrix2(-1, 0, 0, 1)), DomainError);
}

TEST_CASE("identity passes digits through with one held back") {
  Transducer t(IntMatrix2{});
  CHECK(t.feed(2).empty());
  CHECK(t.feed(2) == V({2}));
  CHECK(t.feed(2) == V({2}));
  CHECK(finalized(t) == V({2, 2}));
  REQUIRE(t.provisional());
  CHECK(*t.provisional() == 2);
  CHECK_THROWS_AS(t.feed(0), DomainError);
}

TEST_CASE("worked streams") {
  Transducer half(IntMatrix2(1, 0, 0, 2));
  run(half, CFInput::parse("[2;(2)]"), 9);
  CHECK(std::vector<Int>(half.finalized().begin(), half.finalized().begin() + 9) == V({1, 4, 1, 4, 1, 4, 1, 4, 1}));

  Transducer third(IntMatrix2(0, 1, 3, 0));
  run(third, CFInput::parse("[1;(1)]"), 8);
  CHECK(std::vector<Int>(third.finalized().begin(), third.finalized().begin() + 8) == V({0, 4, 1, 5, 1, 5, 1, 5}));
}

TEST_CASE("flush") {
  Transducer id(IntMatrix2{});
  id.feed(3);
  id.feed(7);
  id.flush();
  CHECK(finalized(id) == V({3, 7}));
  CHECK(id.terminal());
  CHECK_FALSE(id.provisional());

  Transducer half(IntMatrix2(1, 0, 0, 2));
  half.flush(Rational(7, 2));
  CHECK(finalized(half) == V({1, 1, 3}));

  Transducer pole(IntMatrix2(0, 1, 1, 0));
  CHECK_THROWS_AS(pole.flush(Rational(0)), PoleError);
}

TEST_CASE("flush of finite inputs matches exact rational arithmetic") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 2000; ++i) {
    IntMatrix2 m = test::random_e2(rng, 12);
    CFInput x = test::random_finite(rng, 1, 9, 1, 9, 8);
    Transducer t(m);
    for (std::size_t j = 0; j < x.finite_length(); ++j) t.feed(x.digit(j));
    t.flush();
    std::vector<Int> got = finalized(t);
    Rational v = evaluate(x);
    Rational image = Rational(m.a() * v + m.b()) / Rational(m.c() * v + m.d());
    // The completion may end in a 1; compare values and canonical forms.
    CFInput canon(got.front(), std::vector<Int>(got.begin() + 1, got.end()));
    CHECK(evaluate(canon) == image);
    CHECK(canon == rational_cf(image));
  }
}

TEST_CASE("random streams agree with the surd oracle and keep the E2 invariants") {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 300; ++i) {
    IntMatrix2 m = test::random_e2(rng, 12);
    CFInput x = test::random_periodic(rng, 1, 6, 1, 6);
    Transducer t(m);
    std::vector<Int> seen;
    for (std::size_t j = 0; t.finalized().size() < 60; ++j) {
      t.feed(x.digit(j));
      CHECK(classify(t.current()) == MatrixClass::E2);
      CHECK(within_e2_entry_bound(t.current()));
      CHECK(t.current().abs_det() == m.abs_det());
      // Earlier digits never change.
      for (std::size_t k = 0; k < seen.size(); ++k) REQUIRE(t.finalized()[k] == seen[k]);
      seen.assign(t.finalized().begin(), t.finalized().end());
      if (t.provisional() && t.finalized().size() < 60) {
        std::vector<Int> ref = oracle_digits(m, x, t.finalized().size() + 1);
        CHECK(*t.provisional() <= ref.back());
      }
    }
    CHECK(seen == oracle_digits(m, x, seen.size()));
  }
}

TEST_CASE("lemma audit on worked streams") {
  Transducer half(IntMatrix2(1, 0, 0, 2));
  run(half, CFInput::parse("[2;(2)]"), 500);
  LemmaCheckLog log = lemma1_audit(half, {2, DigitWindow{2, 2}});
  CHECK(log.clean());
  CHECK(log.interior_checked + log.final_checked > 0);

  Transducer third(IntMatrix2(0, 1, 3, 0));
  run(third, CFInput::parse("[1;(1)]"), 500);
  log = lemma1_audit(third, {1, DigitWindow{1, 1}});
  CHECK(log.clean());
  CHECK(log.y0_checked == 1);

  Transducer id(IntMatrix2{});
  run(id, CFInput::parse("[1;(2,3)]"), 200);
  log = lemma1_audit(id, {3, std::nullopt});
  CHECK(log.clean());
  CHECK(log.interior_checked == 0);

  CHECK_THROWS_AS(lemma1_audit(id, {2, std::nullopt}), DomainError);
}

TEST_CASE("lemma audit over random streams") {
  std::mt19937_64 rng(33);
  LemmaCheckLog total;
  for (int i = 0; i < 500; ++i) {
    IntMatrix2 m = test::random_e2(rng, 20);
    long lo = test::draw(rng, 1, 5).get_si();
    long hi = test::draw(rng, lo, 5).get_si();
    CFInput x = test::random_periodic(rng, lo, hi, lo, hi);
    Transducer t(m);
    run(t, x, 80);
    total += lemma1_audit(t, {hi, DigitWindow{lo, hi}});
  }
  CHECK(total.violations() == 0);
  CHECK(total.corner_checked > 0);
  CHECK(total.x0_checked > 0);
}

TEST_CASE("liveness budget") {
  // x / 12.5 with x = [12; 1, ...]: the convergents 12 and 13 straddle 12.5,
  // so two digits go in without an emission.
  Transducer t(IntMatrix2(2, 0, 0, 25), 1);
  CHECK(t.feed(12).empty());
  CHECK_THROWS_AS(t.feed(1), LivenessError);
  Transducer roomy(IntMatrix2(2, 0, 0, 25));
  roomy.feed(12);
  CHECK_NOTHROW(roomy.feed(1));
}
