#include "neutro/triplet.hpp"

#include <string>

#include "neutro/error.hpp"

namespace neutro {

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Chosen: return "chosen";
    case Verdict::NotChosen: return "not_chosen";
    case Verdict::Indeterminate: return "indeterminate";
  }
  return "?";
}

std::string_view to_string(ThresholdVerdict v) noexcept {
  return v == ThresholdVerdict::ChosenAtThreshold ? "chosen_at_threshold"
                                                  : "not_chosen_at_threshold";
}

Triplet make_triplet(const Rational& i, const Rational& j, const Rational& k) {
  const Rational zero(0), one(1);
  for (const Rational* r : {&i, &j, &k}) {
    if (*r < zero || *r > one) {
      throw Error(ErrorKind::OutOfRange,
                  "component " + r->str() + " outside [0,1]");
    }
  }
  Rational sum = i + j + k;
  if (sum != one) {
    throw Error(ErrorKind::SumNotOne, "components sum to " + sum.str());
  }
  if (i == j || j == k || i == k) {
    throw Error(ErrorKind::TieViolation, "components must be pairwise distinct");
  }
  return Triplet(i, j, k);
}

Triplet make_triplet(const RawTriplet& raw) {
  return make_triplet(raw[0], raw[1], raw[2]);
}

Verdict classify(const Triplet& t) noexcept {
  const auto& [i, j, k] = t.components();
  if (i > j && i > k) return Verdict::Chosen;
  if (j > i && j > k) return Verdict::NotChosen;
  return Verdict::Indeterminate;
}

ThresholdVerdict classify_threshold(const Triplet& t, const Rational& p) {
  if (p < Rational(0) || p > Rational(1)) {
    throw Error(ErrorKind::ThresholdOutOfRange,
                "threshold " + p.str() + " outside [0,1]");
  }
  return t.choose() >= p ? ThresholdVerdict::ChosenAtThreshold
                         : ThresholdVerdict::NotChosenAtThreshold;
}

RngDraw rng_next(RngState state) noexcept {
  std::uint64_t s = state.s + 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return {z, RngState{s}};
}

RngBounded rng_below(RngState state, std::uint64_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "empty range");
  // Rejection on the top partial bucket keeps the draw unbiased.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  for (;;) {
    auto draw = rng_next(state);
    state = draw.next;
    if (draw.value < limit) return {draw.value % n, state};
  }
}

TripletSample random_triplet(RngState state, std::int64_t denominator_bound) {
  if (denominator_bound < 4) {
    throw Error(ErrorKind::BoundTooSmall,
                "denominator bound " + std::to_string(denominator_bound) +
                    " is below 4");
  }
  const auto n = static_cast<std::uint64_t>(denominator_bound);
  const std::uint64_t compositions = (n + 1) * (n + 2) / 2;
  for (int attempt = 0; attempt < kRandomTripletRetryCap; ++attempt) {
    auto pick = rng_below(state, compositions);
    state = pick.next;
    std::uint64_t r = pick.value;
    std::uint64_t a = 0;
    while (r >= n - a + 1) {
      r -= n - a + 1;
      ++a;
    }
    std::uint64_t b = r;
    std::uint64_t c = n - a - b;
    if (a == b || b == c || a == c) continue;
    const auto d = static_cast<std::int64_t>(n);
    return {make_triplet(Rational(static_cast<std::int64_t>(a), d),
                         Rational(static_cast<std::int64_t>(b), d),
                         Rational(static_cast<std::int64_t>(c), d)),
            state};
  }
  throw Error(ErrorKind::RetryLimitExceeded,
              "no tie-free composition after " +
                  std::to_string(kRandomTripletRetryCap) + " draws");
}

}  // namespace neutro
