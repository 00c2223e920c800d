#pragma once

// Valuations and the square-free predicates P_m, U_{p,l} on 64-bit integers.

#include <cstdint>
#include <limits>
#include <vector>

namespace fhlab::sqfint {

/// v_p(0).
inline constexpr unsigned kInfiniteValuation = std::numeric_limits<unsigned>::max();

/// Deterministic for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Primes <= bound, ascending.
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

/// p-adic valuation, kInfiniteValuation for a = 0. Throws if p is not prime.
unsigned vp(std::int64_t a, std::uint64_t p);

/// v_p(a) < 2 + v_p(m) for every prime p. Zero is never in P_m.
bool in_Pm(std::int64_t a, std::uint64_t m);

/// v_p(a) >= l.
bool in_Upl(std::int64_t a, std::uint64_t p, std::int64_t l);

/// p^e, throwing std::overflow_error past 2^63.
std::uint64_t checked_pow(std::uint64_t p, unsigned e);

}  // namespace fhlab::sqfint
