#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace neutro {

/// Exact rational number over 64-bit integers, always in lowest terms with a
/// positive denominator. Arithmetic that would overflow throws
/// `Error(ErrorKind::Overflow)`.
class Rational {
 public:
  constexpr Rational() noexcept = default;
  Rational(std::int64_t numerator, std::int64_t denominator = 1);

  /// Parses "num/den" or a bare integer. Whitespace is not accepted.
  static Rational parse(std::string_view text);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);

  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) noexcept;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace neutro
