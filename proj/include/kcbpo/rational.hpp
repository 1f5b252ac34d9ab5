#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace kcbpo {

using Rational = mpq_class;
using BigInt = mpz_class;

// Parses "7", "-3/4" or "2.5" into an exact canonical rational.
// Throws std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

// num/den in canonical form; den must be nonzero.
inline Rational ratio(const BigInt& num, const BigInt& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// "p/q" or "p" when the denominator is one.
std::string format_rational(const Rational& value);

// Exact decimal rendering, or nullopt when the denominator has a prime
// factor other than 2 and 5.
std::optional<std::string> format_decimal(const Rational& value);

// nullopt if the value is not an integer or does not fit in int64.
std::optional<std::int64_t> to_int64(const Rational& value);
std::optional<std::int64_t> to_int64(const BigInt& value);

// Least common multiple of the denominators of the given rationals.
template <class Range>
BigInt common_denominator(const Range& values) {
  BigInt lcm = 1;
  for (const Rational& v : values) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
  }
  return lcm;
}

}  // namespace kcbpo
