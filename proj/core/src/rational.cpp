#include "montyhall/rational.hpp"

#include <charconv>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "montyhall/errors.hpp"

namespace montyhall {
namespace {

using wide = __int128;

wide wide_abs(wide v) { return v < 0 ? -v : v; }

wide wide_gcd(wide a, wide b) {
  a = wide_abs(a);
  b = wide_abs(b);
  while (b != 0) {
    wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(wide v) {
  return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw InvalidParameter("not a rational number: '" + std::string(whole) + "'");
  return out;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  *this = from_wide(num, den);
}

Rational Rational::from_wide(wide num, wide den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  wide g = wide_gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (!fits(num) || !fits(den)) throw std::overflow_error("rational overflow");
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational::from_wide(wide(a.num_) * b.den_ + wide(b.num_) * a.den_, wide(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return Rational::from_wide(wide(a.num_) * b.den_ - wide(b.num_) * a.den_, wide(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational::from_wide(wide(a.num_) * b.num_, wide(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("rational division by zero");
  return Rational::from_wide(wide(a.num_) * b.den_, wide(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return wide(a.num_) * b.den_ <=> wide(b.num_) * a.den_;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rational::decimal(int places) const {
  // Round half away from zero on the exact value.
  wide scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  wide scaled = wide_abs(wide(num_)) * scale;
  wide q = scaled / den_;
  if ((scaled % den_) * 2 >= den_) ++q;
  wide int_part = q / scale;
  wide frac_part = q % scale;
  std::string out = num_ < 0 && q != 0 ? "-" : "";
  out += std::to_string(static_cast<long long>(int_part));
  if (places > 0) {
    std::string frac = std::to_string(static_cast<long long>(frac_part));
    out += "." + std::string(places - frac.size(), '0') + frac;
  }
  return out;
}

Rational Rational::parse(std::string_view text) {
  std::string_view whole = text;
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::int64_t n = parse_int(text.substr(0, slash), whole);
    std::int64_t d = parse_int(text.substr(slash + 1), whole);
    if (d == 0) throw InvalidParameter("zero denominator in '" + std::string(whole) + "'");
    return Rational(n, d);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_text = text.substr(0, dot);
    std::string_view frac_text = text.substr(dot + 1);
    bool negative = !int_text.empty() && int_text.front() == '-';
    if (negative) int_text.remove_prefix(1);
    if (frac_text.size() > 18 || (int_text.empty() && frac_text.empty()))
      throw InvalidParameter("not a rational number: '" + std::string(whole) + "'");
    std::int64_t ip = int_text.empty() ? 0 : parse_int(int_text, whole);
    std::int64_t fp = frac_text.empty() ? 0 : parse_int(frac_text, whole);
    if (ip < 0 || fp < 0) throw InvalidParameter("not a rational number: '" + std::string(whole) + "'");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac_text.size(); ++i) scale *= 10;
    Rational r = Rational(ip) + Rational(fp, scale);
    return negative ? -r : r;
  }
  return Rational(parse_int(text, whole));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Probability::Probability(const Rational& value) : value_(value) {
  if (value < Rational(0) || value > Rational(1))
    throw InvalidParameter("probability out of [0,1]: " + value.str());
}

std::ostream& operator<<(std::ostream& os, const Probability& p) { return os << p.str(); }

}  // namespace montyhall
