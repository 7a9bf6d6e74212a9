#pragma once

// Exact arithmetic primitives shared by every hnvol module.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hnvol {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Raised when caller-supplied data violates a documented precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an internal consistency check fails (a bug, not bad input).
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw ValidationError("zero denominator");
  return Rational(num, den);
}

inline Integer numer(const Rational& x) { return boost::multiprecision::numerator(x); }
inline Integer denom(const Rational& x) { return boost::multiprecision::denominator(x); }

inline bool is_integer(const Rational& x) { return denom(x) == 1; }

inline Rational rabs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

inline Rational positive_part(const Rational& x) { return x > 0 ? x : Rational(0); }

inline Rational rpow(const Rational& base, unsigned exp) {
  Rational out = 1;
  for (unsigned i = 0; i < exp; ++i) out *= base;
  return out;
}

inline Integer ipow(const Integer& base, unsigned exp) {
  Integer out = 1;
  for (unsigned i = 0; i < exp; ++i) out *= base;
  return out;
}

inline Integer factorial(unsigned n) {
  Integer out = 1;
  for (unsigned i = 2; i <= n; ++i) out *= i;
  return out;
}

/// binom(n, k) for 0 <= k <= n; zero outside that range.
inline Integer binomial(const Integer& n, Integer k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  Integer out = 1;
  for (Integer i = 1; i <= k; ++i) {
    out *= n - k + i;
    out /= i;
  }
  return out;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::abs(a / boost::multiprecision::gcd(a, b) * b);
}

/// Canonical "p/q" rendering; integers keep the "/1" suffix.
inline std::string to_string(const Rational& x) {
  return numer(x).str() + "/" + denom(x).str();
}

/// Accepts "p/q", "p", with optional sign; anything else is rejected.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] { return ValidationError("not a rational literal: \"" + std::string(text) + "\""); };
  auto parse_int = [&](std::string_view s) -> Integer {
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
    if (i == s.size()) throw fail();
    Integer v = 0;
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw fail();
      v = v * 10 + (s[i] - '0');
    }
    return neg ? Integer(-v) : v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const Integer num = parse_int(text.substr(0, slash));
  const std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '+' || den_text[0] == '-')) throw fail();
  const Integer den = parse_int(den_text);
  if (den == 0) throw ValidationError("zero denominator in \"" + std::string(text) + "\"");
  return Rational(num, den);
}

inline double to_double(const Rational& x) { return x.convert_to<double>(); }

/// Decimal rendering rounded (half away from zero) to `digits` significant
/// digits. Trailing zeros are trimmed; scientific notation outside 1e-6..1e21.
inline std::string to_decimal(const Rational& x, unsigned digits = 20) {
  if (x == 0) return "0";
  const bool neg = x < 0;
  const Rational ax = neg ? Rational(-x) : x;
  const Integer p = numer(ax);
  const Integer q = denom(ax);
  long e = static_cast<long>(p.str().size()) - static_cast<long>(q.str().size());
  auto pow10 = [](long k) {
    return k >= 0 ? Rational(ipow(10, static_cast<unsigned>(k)))
                  : Rational(Integer(1), ipow(10, static_cast<unsigned>(-k)));
  };
  while (ax < pow10(e)) --e;
  while (ax >= pow10(e + 1)) ++e;
  const long shift = static_cast<long>(digits) - 1 - e;
  Integer num = p, den = q;
  if (shift >= 0)
    num *= ipow(10, static_cast<unsigned>(shift));
  else
    den *= ipow(10, static_cast<unsigned>(-shift));
  Integer scaled = (2 * num + den) / (2 * den);
  if (scaled == ipow(10, digits)) {
    scaled /= 10;
    ++e;
  }
  std::string ds = scaled.str();  // exactly `digits` characters
  std::string out;
  if (e >= -6 && e < 21) {
    if (e >= 0) {
      const auto int_len = static_cast<std::size_t>(e + 1);
      if (ds.size() < int_len) ds.append(int_len - ds.size(), '0');
      out = ds.substr(0, int_len);
      std::string frac = ds.substr(int_len);
      while (!frac.empty() && frac.back() == '0') frac.pop_back();
      if (!frac.empty()) out += "." + frac;
    } else {
      std::string frac = std::string(static_cast<std::size_t>(-e - 1), '0') + ds;
      while (!frac.empty() && frac.back() == '0') frac.pop_back();
      out = "0." + frac;
    }
  } else {
    std::string frac = ds.substr(1);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    out = ds.substr(0, 1) + (frac.empty() ? "" : "." + frac) + "e" + std::to_string(e);
  }
  return neg ? "-" + out : out;
}

}  // namespace hnvol
