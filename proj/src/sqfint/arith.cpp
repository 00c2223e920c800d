#include "fhlab/sqfint/arith.hpp"

#include <stdexcept>
#include <string>

namespace fhlab::sqfint {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % n);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t n) {
  std::uint64_t result = 1 % n;
  base %= n;
  while (exp > 0) {
    if (exp & 1U) result = mulmod(result, base, n);
    base = mulmod(base, base, n);
    exp >>= 1U;
  }
  return result;
}

std::uint64_t magnitude(std::int64_t a) {
  return a < 0 ? static_cast<std::uint64_t>(-(a + 1)) + 1 : static_cast<std::uint64_t>(a);
}

unsigned valuation(std::uint64_t a, std::uint64_t p) {
  if (a == 0) return kInfiniteValuation;
  unsigned v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned r = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++r;
  }
  // These witnesses are deterministic below 3.3e24.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < r; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  std::vector<std::uint64_t> primes;
  if (bound < 2) return primes;
  std::vector<bool> composite(bound + 1, false);
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return primes;
}

unsigned vp(std::int64_t a, std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  return valuation(magnitude(a), p);
}

bool in_Pm(std::int64_t a, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("P_m needs m >= 1");
  std::uint64_t rest = magnitude(a);
  if (rest == 0) return false;
  auto check = [&](std::uint64_t p) {
    const unsigned v = valuation(rest, p);
    for (unsigned i = 0; i < v; ++i) rest /= p;
    return v < 2 + valuation(m, p);
  };
  if (!check(2)) return false;
  for (std::uint64_t p = 3; p <= rest / p; p += 2)
    if (!check(p)) return false;
  // Whatever remains is 1 or a prime to the first power.
  return true;
}

bool in_Upl(std::int64_t a, std::uint64_t p, std::int64_t l) {
  const unsigned v = vp(a, p);
  if (l <= 0) return true;
  return v == kInfiniteValuation || static_cast<std::int64_t>(v) >= l;
}

std::uint64_t checked_pow(std::uint64_t p, unsigned e) {
  std::uint64_t out = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (out > (std::uint64_t{1} << 63) / p)
      throw std::overflow_error(std::to_string(p) + "^" + std::to_string(e) + " exceeds 2^63");
    out *= p;
  }
  return out;
}

}  // namespace fhlab::sqfint
