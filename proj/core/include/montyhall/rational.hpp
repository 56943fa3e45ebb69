#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace montyhall {

/// Exact signed fraction, always kept in lowest terms with a positive
/// denominator. Intermediate products use 128-bit integers; a result that
/// does not fit back into 64 bits throws std::overflow_error.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t integer) : num_(integer) {}  // NOLINT(implicit)
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// "a/b", or just "a" when the denominator is 1.
  std::string str() const;
  /// Fixed-point decimal with the given number of places.
  std::string decimal(int places = 6) const;

  /// Accepts "a/b", integers and finite decimals ("0.25" is exactly 1/4).
  static Rational parse(std::string_view text);

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(-num_, den_); }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  int sign() const { return (num_ > 0) - (num_ < 0); }

 private:
  static Rational from_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// A Rational constrained to [0, 1]. Construction from an out-of-range
/// value throws InvalidParameter.
class Probability {
 public:
  constexpr Probability() = default;
  Probability(const Rational& value);  // NOLINT(implicit)
  Probability(std::int64_t num, std::int64_t den) : Probability(Rational(num, den)) {}

  static Probability parse(std::string_view text) { return Probability(Rational::parse(text)); }

  const Rational& value() const { return value_; }
  operator const Rational&() const { return value_; }  // NOLINT(implicit)

  /// 1 - p
  Probability complement() const { return Probability(Rational(1) - value_); }

  double to_double() const { return value_.to_double(); }
  std::string str() const { return value_.str(); }
  std::string decimal(int places = 6) const { return value_.decimal(places); }

  friend bool operator==(const Probability& a, const Probability& b) = default;
  friend auto operator<=>(const Probability& a, const Probability& b) { return a.value_ <=> b.value_; }

 private:
  Rational value_;
};

std::ostream& operator<<(std::ostream& os, const Probability& p);

}  // namespace montyhall
