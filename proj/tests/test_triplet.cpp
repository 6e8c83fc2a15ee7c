#include <doctest.h>

#include <random>

#include "neutro/error.hpp"
#include "neutro/triplet.hpp"
#include "support.hpp"

using namespace neutro;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidArgument;
}

Rational q(const char* s) { return Rational::parse(s); }

}  // namespace

TEST_CASE("rational normalises and compares exactly") {
  CHECK(Rational(6, 20) == Rational(3, 10));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(q("6/20").str() == "3/10");
  CHECK(q("1") == Rational(1));
  CHECK(q("+2/4") == Rational(1, 2));
  CHECK(Rational(1, 3) < Rational(34, 100));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 3) - Rational(1, 2) == Rational(-1, 6));
  CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
  CHECK(kind_of([] { q("1/0"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { q("a/3"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { q(" 1/3"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { q(""); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { Rational(1, 0); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] {
          Rational big(INT64_MAX, 1);
          (void)(big + big);
        }) == ErrorKind::Overflow);
}

TEST_CASE("make_triplet validates") {
  auto t = make_triplet(q("6/10"), q("3/10"), q("1/10"));
  CHECK(t.choose() == Rational(3, 5));
  CHECK(t.reject() == Rational(3, 10));
  CHECK(t.indeterminate() == Rational(1, 10));

  CHECK(kind_of([] { make_triplet(q("1/3"), q("1/3"), q("1/3")); }) == ErrorKind::TieViolation);
  CHECK(kind_of([] { make_triplet(q("1/2"), q("1/4"), q("1/8")); }) == ErrorKind::SumNotOne);
  CHECK(kind_of([] { make_triplet(q("3/2"), q("-1/4"), q("-1/4")); }) == ErrorKind::OutOfRange);
  // i != k is enforced too, not only adjacent components.
  CHECK(kind_of([] { make_triplet(q("2/5"), q("1/5"), q("2/5")); }) == ErrorKind::TieViolation);
  CHECK_NOTHROW(make_triplet(q("0"), q("1/3"), q("2/3")));
}

TEST_CASE("classify picks the strict maximum") {
  CHECK(classify(make_triplet(q("6/10"), q("3/10"), q("1/10"))) == Verdict::Chosen);
  CHECK(classify(make_triplet(q("1/10"), q("7/10"), q("2/10"))) == Verdict::NotChosen);
  CHECK(classify(make_triplet(q("2/10"), q("3/10"), q("5/10"))) == Verdict::Indeterminate);
  // Representation does not matter.
  CHECK(classify(make_triplet(q("6/20"), q("12/20"), q("2/20"))) ==
        classify(make_triplet(q("3/10"), q("6/10"), q("1/10"))));
}

TEST_CASE("exactly one criterion holds for every triplet") {
  for (const auto& raw : testing::triplet_pool(12)) {
    const auto& [i, j, k] = raw;
    int holds = (i > j && i > k) + (j > i && j > k) + (k > i && k > j);
    CHECK(holds == 1);
    auto v = classify(make_triplet(raw));
    if (i > j && i > k) CHECK(v == Verdict::Chosen);
    if (j > i && j > k) CHECK(v == Verdict::NotChosen);
    if (k > i && k > j) CHECK(v == Verdict::Indeterminate);
  }
}

TEST_CASE("threshold classification uses >=") {
  auto a = make_triplet(q("6/10"), q("3/10"), q("1/10"));
  auto b = make_triplet(q("1/10"), q("7/10"), q("2/10"));
  CHECK(classify_threshold(a, q("1/2")) == ThresholdVerdict::ChosenAtThreshold);
  CHECK(classify_threshold(a, q("6/10")) == ThresholdVerdict::ChosenAtThreshold);
  CHECK(classify_threshold(b, q("1/2")) == ThresholdVerdict::NotChosenAtThreshold);
  CHECK(kind_of([&] { classify_threshold(a, q("11/10")); }) == ErrorKind::ThresholdOutOfRange);
  CHECK(kind_of([&] { classify_threshold(a, q("-1/10")); }) == ErrorKind::ThresholdOutOfRange);

  for (const auto& raw : testing::triplet_pool(10)) {
    auto t = make_triplet(raw);
    CHECK(classify_threshold(t, Rational(0)) == ThresholdVerdict::ChosenAtThreshold);
    CHECK(classify_threshold(t, Rational(1)) == ThresholdVerdict::NotChosenAtThreshold);
  }
}

TEST_CASE("random_triplet is deterministic and valid") {
  auto first = random_triplet(RngState{42}, 10);
  auto again = random_triplet(RngState{42}, 10);
  CHECK(first.triplet == again.triplet);
  CHECK(first.next == again.next);
  CHECK(kind_of([] { random_triplet(RngState{42}, 3); }) == ErrorKind::BoundTooSmall);
  CHECK(kind_of([] { random_triplet(RngState{42}, 0); }) == ErrorKind::BoundTooSmall);

  RngState state{2024};
  std::set<std::array<std::string, 3>> distinct;
  for (int n = 0; n < 10000; ++n) {
    const std::int64_t bound = 4 + n % 9;
    auto s = random_triplet(state, bound);
    state = s.next;
    const auto& c = s.triplet.components();
    CHECK_NOTHROW(make_triplet(c[0], c[1], c[2]));
    for (const auto& r : c) CHECK(bound % r.den() == 0);
    if (bound == 10) distinct.insert({c[0].str(), c[1].str(), c[2].str()});
  }
  // Every tie-free composition of 10 shows up: C(12,2)=66 compositions, of
  // which 18 repeat a part (6 per equal pair, no triple), leaving 48.
  CHECK(distinct.size() == 48);
}

TEST_CASE("sequences from equal seeds are identical") {
  RngState a{7}, b{7};
  for (int n = 0; n < 100; ++n) {
    auto x = random_triplet(a, 6);
    auto y = random_triplet(b, 6);
    CHECK(x.triplet == y.triplet);
    a = x.next;
    b = y.next;
  }
}
