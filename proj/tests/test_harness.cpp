#include "support.hpp"

#include <cfmobius/errors.hpp>
#include <cfmobius/harness.hpp>
#include <cfmobius/oracle.hpp>

#include <doctest.h>

#include <sstream>

using namespace cfm;

namespace {

std::vector<Int> V(std::initializer_list<long> xs) {
  std::vector<Int> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

std::string json_of(const SweepResult& r) {
  std::ostringstream os;
  write_json(os, r);
  return os.str();
}

}  // namespace

TEST_CASE("formatting") {
  CHECK(format_digits(V({1, 4, 1}), false) == "[1;4,1");
  CHECK(format_digits(V({3, 7, 16}), true) == "[3;7,16]");
  CHECK(format_digits(V({5}), true) == "[5]");
  CHECK(expand(CFInput::parse("[1;(4,1)]"), 5) == V({1, 4, 1, 4, 1}));
  CHECK(expand(CFInput::parse("[3;7,16]"), 0) == V({3, 7, 16}));
}

TEST_CASE("transduce examples") {
  TransduceResult a = transduce(IntMatrix2(1, 0, 0, 2), CFInput::parse("[2;(2)]"), 6);
  CHECK(a.direct);
  CHECK(format_transduce(a).rfind("[1;4,1,4,1,4 | provisional >= ", 0) == 0);

  TransduceResult b = transduce(IntMatrix2(), CFInput::parse("[3;7,16]"), 0);
  CHECK(format_transduce(b) == "[3;7,16]");

  TransduceResult c = transduce(IntMatrix2(0, 1, 3, 0), CFInput::parse("[1;(1)]"), 6);
  CHECK(c.digits == V({0, 4, 1, 5, 1, 5}));

  TransduceResult d = transduce(IntMatrix2(-1, 0, 0, 1), CFInput::parse("[1;(1)]"), 5);
  CHECK_FALSE(d.direct);
  CHECK(d.digits == V({-2, 2, 1, 1, 1}));

  CHECK(transduce(IntMatrix2(1, 0, 0, 2), CFInput::parse("[7]"), 0).digits == V({3, 2}));
  CHECK(transduce(IntMatrix2(3, 1, 1, 1), CFInput::parse("[-4]"), 0).digits == V({3, 1, 2}));
  CHECK_THROWS_AS(transduce(IntMatrix2(1, 0, -2, 1), CFInput::parse("[0;2]"), 0), PoleError);
  CHECK_THROWS_AS(transduce(IntMatrix2(1, 0, -1, 4), CFInput::parse("[4]"), 0), PoleError);
  CHECK_THROWS_AS(transduce(IntMatrix2(), CFInput::parse("[1;(2)]"), 0), DomainError);
}

TEST_CASE("the pipeline matches both oracles for general matrices") {
  std::mt19937_64 rng(71);
  for (int i = 0; i < 400; ++i) {
    IntMatrix2 m = test::random_matrix(rng, i % 2 ? 12 : 300);
    CFInput x = test::random_periodic(rng, -9, 9, 1, 9);
    VerifyReport r = verify(m, x, 60);
    CAPTURE(m.literal());
    CAPTURE(x.literal());
    CHECK(r.agree());
    CHECK(r.compared == 60);
  }
  for (int i = 0; i < 1000; ++i) {
    IntMatrix2 m = test::random_matrix(rng, 20);
    CFInput x = test::random_finite(rng, -9, 9, 1, 9, 6);
    Rational v = evaluate(x);
    if (m.c() * v + m.d() == 0) {
      CHECK_THROWS_AS(verify(m, x, 100), PoleError);
      continue;
    }
    CAPTURE(m.literal());
    CAPTURE(x.literal());
    CHECK(verify(m, x, 100).agree());
  }
}

TEST_CASE("verify reports a planted fault") {
  CHECK(verify(IntMatrix2(1, 0, 0, 2), CFInput::parse("[2;(2)]"), 100).agree());
  VerifyReport bad = verify(IntMatrix2(1, 0, 0, 2), CFInput::parse("[2;(2)]"), 100, true);
  CHECK_FALSE(bad.agree());
  CHECK(*bad.first_mismatch == 50);
  CHECK(verify(IntMatrix2(), CFInput::parse("[3;7,16]"), 100).agree());
}

TEST_CASE("the E2 sampler enumerates the whole box") {
  for (long D = 1; D <= 7; ++D) {
    std::size_t brute = 0;
    for (long a = 0; a <= D; ++a)
      for (long b = 0; a + b <= D; ++b)
        for (long c = 0; c <= D; ++c)
          for (long d = 0; c + d <= D; ++d)
            if (std::abs(a * d - b * c) == D && (a - c) * (b - d) < 0) ++brute;
    E2Sampler sampler(D);
    CHECK(sampler.candidates().size() == brute);
    for (const IntMatrix2& m : sampler.candidates()) {
      CHECK(classify(m) == MatrixClass::E2);
      CHECK(m.abs_det() == D);
    }
  }
  CHECK_THROWS_AS(E2Sampler(0), DomainError);
}

TEST_CASE("tight instance") {
  TrialReport r = evaluate_trial(IntMatrix2(1, 0, 0, 2), CFInput::parse("[2;(2)]"), 2, 2, 64);
  CHECK(r.observed == 4);
  CHECK(r.theorem1 == 4);
  CHECK(r.ratio() == doctest::Approx(1.0));
  CHECK(r.violations.empty());
  CHECK(r.agreement == 64);
}

TEST_CASE("sweeps are deterministic and clean") {
  SweepConfig config;
  config.D_max = 6;
  config.B_max = 3;
  config.trials = 4;
  SweepResult one = run_sweep(config);
  CHECK(one.trials.size() == 6 * 6 * 4);
  CHECK(one.summary.clean());
  config.jobs = 3;
  CHECK(json_of(run_sweep(config)) == json_of(one));
  config.seed = 7;
  CHECK(json_of(run_sweep(config)) != json_of(one));

  std::ostringstream csv;
  write_csv(csv, one);
  CHECK(csv.str().rfind("cell,trial,matrix,", 0) == 0);

  config.trials = 0;
  SweepResult empty = run_sweep(config);
  CHECK(empty.trials.empty());
  CHECK(empty.summary.clean());

  config.D_min = 0;
  CHECK_THROWS_AS(run_sweep(config), DomainError);
}

TEST_CASE("search") {
  SweepConfig config;
  config.D_min = 2;
  config.D_max = 6;
  config.B_min = 2;
  config.B_max = 2;
  config.trials = 5;
  SweepResult r = run_search(config, true, 5);
  REQUIRE_FALSE(r.trials.empty());
  CHECK(r.summary.clean());
  for (long D = 2; D <= 6; ++D) {
    TrialReport designated =
        evaluate_trial(IntMatrix2(0, 1, D, 0), CFInput::parse("[2;(2,2)]"), 2, 2, config.transducer_digits);
    CHECK(r.trials.front().observed * designated.theorem1 >= designated.observed * r.trials.front().theorem1);
  }

  config.trials = 0;
  CHECK(run_search(config, false, 10).trials.empty());

  config.D_min = 1;
  config.D_max = 1;
  config.B_min = 1;
  config.B_max = 4;
  config.trials = 10;
  for (const TrialReport& t : run_search(config, true, 1000).trials) CHECK(t.observed <= t.B2);
}
