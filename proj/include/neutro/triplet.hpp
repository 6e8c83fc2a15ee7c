#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "neutro/rational.hpp"

namespace neutro {

/// Probability triple <choose, not-choose, indeterminate>. Instances only
/// come out of `make_triplet`, so every Triplet sums to exactly one, has all
/// components in [0, 1], and has pairwise-distinct components.
class Triplet {
 public:
  const Rational& choose() const noexcept { return c_[0]; }
  const Rational& reject() const noexcept { return c_[1]; }
  const Rational& indeterminate() const noexcept { return c_[2]; }
  const std::array<Rational, 3>& components() const noexcept { return c_; }

  friend bool operator==(const Triplet&, const Triplet&) = default;

 private:
  friend Triplet make_triplet(const Rational&, const Rational&,
                              const Rational&);
  Triplet(const Rational& i, const Rational& j, const Rational& k)
      : c_{i, j, k} {}

  std::array<Rational, 3> c_;
};

/// Unvalidated component triple, as read from documents or user input.
using RawTriplet = std::array<Rational, 3>;

enum class Verdict { Chosen, NotChosen, Indeterminate };
enum class ThresholdVerdict { ChosenAtThreshold, NotChosenAtThreshold };

std::string_view to_string(Verdict v) noexcept;
std::string_view to_string(ThresholdVerdict v) noexcept;

// Throws SumNotOne, OutOfRange or TieViolation. Range is checked before the
// sum so that e.g. (3/2, -1/4, -1/4) reports OutOfRange.
Triplet make_triplet(const Rational& i, const Rational& j, const Rational& k);
Triplet make_triplet(const RawTriplet& raw);

/// The unique strict argmax of the triplet.
Verdict classify(const Triplet& t) noexcept;

/// Chosen iff the choice component is >= p. Throws ThresholdOutOfRange unless
/// 0 <= p <= 1.
ThresholdVerdict classify_threshold(const Triplet& t, const Rational& p);

// ---------------------------------------------------------------------------
// Deterministic generation

/// SplitMix64 state. Passed and returned by value; there is no hidden state.
struct RngState {
  std::uint64_t s = 0;
  friend bool operator==(const RngState&, const RngState&) = default;
};

struct RngDraw {
  std::uint64_t value;
  RngState next;
};

RngDraw rng_next(RngState state) noexcept;

/// Uniform integer in [0, n). n must be positive.
struct RngBounded {
  std::uint64_t value;
  RngState next;
};
RngBounded rng_below(RngState state, std::uint64_t n);

struct TripletSample {
  Triplet triplet;
  RngState next;
};

inline constexpr int kRandomTripletRetryCap = 1000;

/// Samples (a, b, c) uniformly among non-negative integer compositions of
/// `denominator_bound`, rejecting ties, and returns (a/n, b/n, c/n).
/// Throws BoundTooSmall when the bound is below 4 and RetryLimitExceeded
/// after kRandomTripletRetryCap rejected draws.
TripletSample random_triplet(RngState state, std::int64_t denominator_bound);

}  // namespace neutro
