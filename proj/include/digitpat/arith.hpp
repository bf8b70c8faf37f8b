#pragma once

// Exact integer kernels: modular arithmetic up to 64-bit moduli, primality,
// factorization, multiplicative order, prime enumeration.
//
// All functions are pure and safe to call concurrently.

#include <cassert>
#include <cstdint>
#include <vector>

#include "digitpat/errors.hpp"

namespace digitpat {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// (a * b) mod n, exact for any 64-bit modulus n >= 2.
inline u64 mul_mod(u64 a, u64 b, u64 n) {
  assert(n >= 2 && a < n && b < n);
  return static_cast<u64>((static_cast<u128>(a) * b) % n);
}

inline u64 add_mod(u64 a, u64 b, u64 n) {
  assert(n >= 2 && a < n && b < n);
  u64 s = a + b;
  if (s < a || s >= n) s -= n;
  return s;
}

// a^e mod n by square-and-multiply; pow_mod(a, 0, n) == 1 mod n.
u64 pow_mod(u64 a, u64 e, u64 n);

// Inverse of a modulo prime p (Fermat). Throws validation_error on a == 0.
u64 inv_mod(u64 a, u64 p);

// Deterministic for all 64-bit inputs: Miller-Rabin with the witness set
// {2,3,...,37}, which is known to have no composite pseudoprime below
// 3.3 * 10^24 and is therefore exact over the full u64 range.
bool is_prime(u64 n);

struct Factor {
  u64 prime;
  unsigned exponent;
};

struct FactoredInteger {
  u64 value = 1;
  std::vector<Factor> factors;  // primes strictly increasing
};

// Complete prime factorization of n >= 1. Trial division below 10^5, then
// Brent's cycle-finding method with parameters derived from n, so the result
// is reproducible run to run. Throws validation_error for n == 0.
FactoredInteger factorize(u64 n);

// Carmichael function: the exponent of the unit group mod n.
u64 carmichael_lambda(u64 n);

// Smallest t >= 1 with g^t == 1 (mod n); requires gcd(g, n) == 1, n >= 2.
// Starts from the unit-group exponent (n-1 for prime n) and divides out
// prime factors while the power stays 1.
u64 multiplicative_order(u64 g, u64 n);

// Exactly the primes in [lo, hi], increasing, via a segmented sieve.
// Throws validation_error if hi < lo, budget_error if hi - lo > max_span
// or hi is beyond the supported sieve range (10^14).
std::vector<u64> primes_in_range(u64 lo, u64 hi, u64 max_span = 100'000'000);

// True iff t*t > p, exact in integers.
inline bool exceeds_sqrt(u64 t, u64 p) {
  return static_cast<u128>(t) * t > p;
}

}  // namespace digitpat
