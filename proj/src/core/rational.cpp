#include "fhlab/core/rational.hpp"

#include <stdexcept>

namespace fhlab {

namespace {

BigInt parse_integer(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') i = 1;
  if (i == text.size()) throw std::invalid_argument("bad integer literal: " + std::string(text));
  for (std::size_t j = i; j < text.size(); ++j) {
    if (text[j] < '0' || text[j] > '9')
      throw std::invalid_argument("bad integer literal: " + std::string(text));
  }
  // strip leading zeros, which the gmp string constructor would read as octal
  std::size_t first = i;
  while (first + 1 < text.size() && text[first] == '0') ++first;
  BigInt value(std::string(text.substr(first)));
  return text[0] == '-' ? BigInt(-value) : value;
}

BigInt floor_of(const Rational& value) {
  BigInt num = boost::multiprecision::numerator(value);
  BigInt den = boost::multiprecision::denominator(value);
  BigInt q = num / den;
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

bool simplest_rec(const Rational& lo, const Rational& hi, Rational& out, int depth) {
  if (depth > 4096) return false;
  BigInt fl = floor_of(lo);
  if (Rational(fl) == lo) {
    out = Rational(fl);
    return true;
  }
  if (Rational(fl + 1) <= hi) {
    out = Rational(fl + 1);
    return true;
  }
  Rational inner;
  if (!simplest_rec(1 / (hi - Rational(fl)), 1 / (lo - Rational(fl)), inner, depth + 1))
    return false;
  out = Rational(fl) + 1 / inner;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in " + std::string(text));
    return Rational(parse_integer(text.substr(0, slash)), den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string digits(text.substr(0, dot));
    std::string_view frac = text.substr(dot + 1);
    digits += frac;
    if (digits.empty() || digits == "-" || digits == "+")
      throw std::invalid_argument("bad decimal literal: " + std::string(text));
    BigInt den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    return Rational(parse_integer(digits), den);
  }
  return Rational(parse_integer(text));
}

std::string to_string(const Rational& value) {
  const BigInt den = boost::multiprecision::denominator(value);
  if (den == 1) return boost::multiprecision::numerator(value).str();
  return boost::multiprecision::numerator(value).str() + "/" + den.str();
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result *= (n - k + i);
    result /= i;
  }
  return result;
}

Rational round_down(const Rational& value, const BigInt& denominator) {
  return Rational(floor_of(value * denominator), denominator);
}

Rational round_up(const Rational& value, const BigInt& denominator) {
  return Rational(-floor_of(-value * denominator), denominator);
}

bool simplest_in_interval(const Rational& lo, const Rational& hi, std::uint64_t max_den,
                          Rational& out) {
  if (lo < 0 || hi < lo) return false;
  Rational candidate;
  if (!simplest_rec(lo, hi, candidate, 0)) return false;
  if (boost::multiprecision::denominator(candidate) > max_den) return false;
  out = candidate;
  return true;
}

}  // namespace fhlab
