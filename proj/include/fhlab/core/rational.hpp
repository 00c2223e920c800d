#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace fhlab {

/// Exact rational number. Expression templates are off so the type behaves
/// like a plain value in `auto` contexts.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

/// Parses "3", "-3/4" or "0.25" into an exact rational.
Rational parse_rational(std::string_view text);

/// "num/den" in lowest terms ("3" when the denominator is 1).
std::string to_string(const Rational& value);

BigInt binomial(std::uint64_t n, std::uint64_t k);

/// Largest rational <= value with the given denominator (directed rounding).
Rational round_down(const Rational& value, const BigInt& denominator);
Rational round_up(const Rational& value, const BigInt& denominator);

/// Simplest rational (smallest denominator, then smallest numerator) inside
/// the closed interval [lo, hi], found by Stern-Brocot descent. Both bounds
/// must be non-negative with lo <= hi. Returns false when no rational with
/// denominator <= max_den lies in the interval.
bool simplest_in_interval(const Rational& lo, const Rational& hi, std::uint64_t max_den,
                          Rational& out);

inline double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace fhlab
