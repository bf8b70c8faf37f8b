#include "digitpat/arith.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <string>

namespace digitpat {

u64 pow_mod(u64 a, u64 e, u64 n) {
  assert(n >= 2 && a < n);
  u64 r = 1 % n;
  while (e) {
    if (e & 1) r = mul_mod(r, a, n);
    a = mul_mod(a, a, n);
    e >>= 1;
  }
  return r;
}

u64 inv_mod(u64 a, u64 p) {
  if (a % p == 0) throw validation_error("inv_mod: zero residue");
  return pow_mod(a % p, p - 2, p);
}

namespace {

// One Miller-Rabin round; n odd, n > 2, d odd with n - 1 = d * 2^r.
bool mr_witness(u64 n, u64 a, u64 d, int r) {
  a %= n;
  if (a == 0) return true;
  u64 x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < r; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  u64 d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    if (!mr_witness(n, a, d, r)) return false;
  }
  return true;
}

namespace {

constexpr u64 kTrialBound = 100'000;

// Brent's variant of the rho cycle finder. Parameters are derived from n
// (and the retry counter), so repeated runs factor identically.
u64 brent_rho(u64 n) {
  if ((n & 1) == 0) return 2;
  for (u64 attempt = 1;; ++attempt) {
    u64 c = 1 + (n ^ (attempt * 0x9e3779b97f4a7c15ull)) % (n - 1);
    u64 y = attempt % n, m = 128, g = 1, r = 1, q = 1;
    u64 x = 0, ys = 0;
    auto f = [&](u64 v) { return add_mod(mul_mod(v, v, n), c % n, n); };
    while (g == 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      for (u64 k = 0; k < r && g == 1; k += m) {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
      r *= 2;
    }
    if (g == n) {
      // Backtrack one step at a time.
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_rec(u64 n, std::map<u64, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  u64 d = brent_rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

FactoredInteger factorize(u64 n) {
  if (n == 0) throw validation_error("factorize: n must be >= 1");
  FactoredInteger result;
  result.value = n;
  std::map<u64, unsigned> acc;
  for (u64 p = 2; p <= kTrialBound && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      ++acc[p];
      n /= p;
    }
  }
  factor_rec(n, acc);
  for (auto [p, e] : acc) result.factors.push_back({p, e});
  return result;
}

u64 carmichael_lambda(u64 n) {
  if (n < 2) return 1;
  u64 lam = 1;
  for (const Factor& f : factorize(n).factors) {
    u64 pk = 1;
    for (unsigned i = 0; i < f.exponent; ++i) pk *= f.prime;
    u64 l;
    if (f.prime == 2 && f.exponent >= 3) {
      l = pk / 4;
    } else {
      l = pk / f.prime * (f.prime - 1);
    }
    lam = std::lcm(lam, l);
  }
  return lam;
}

u64 multiplicative_order(u64 g, u64 n) {
  if (n < 2) throw validation_error("multiplicative_order: modulus must be >= 2");
  g %= n;
  if (std::gcd(g, n) != 1) {
    throw validation_error("multiplicative_order: residue not coprime to modulus");
  }
  u64 t = is_prime(n) ? n - 1 : carmichael_lambda(n);
  for (const Factor& f : factorize(t).factors) {
    for (unsigned i = 0; i < f.exponent; ++i) {
      if (pow_mod(g, t / f.prime, n) == 1) {
        t /= f.prime;
      } else {
        break;
      }
    }
  }
  return t;
}

std::vector<u64> primes_in_range(u64 lo, u64 hi, u64 max_span) {
  if (hi < lo) throw validation_error("primes_in_range: hi < lo");
  if (hi - lo > max_span) {
    throw budget_error("primes_in_range: span " + std::to_string(hi - lo) +
                       " exceeds budget " + std::to_string(max_span));
  }
  if (hi > 100'000'000'000'000ull) {
    throw budget_error("primes_in_range: hi beyond supported sieve range");
  }
  std::vector<u64> out;
  if (hi < 2) return out;
  lo = std::max<u64>(lo, 2);

  // Base primes up to sqrt(hi).
  u64 root = 2;
  while (root * root < hi) ++root;
  std::vector<bool> base(root + 1, true);
  base[0] = base[1] = false;
  for (u64 i = 2; i * i <= root; ++i) {
    if (base[i]) {
      for (u64 j = i * i; j <= root; j += i) base[j] = false;
    }
  }
  std::vector<u64> base_primes;
  for (u64 i = 2; i <= root; ++i) {
    if (base[i]) base_primes.push_back(i);
  }

  constexpr u64 kBlock = 1u << 20;
  std::vector<bool> seg;
  for (u64 start = lo; start <= hi; start += kBlock) {
    u64 end = std::min(hi, start + kBlock - 1);
    seg.assign(end - start + 1, true);
    for (u64 p : base_primes) {
      if (p * p > end) break;
      u64 first = std::max(p * p, (start + p - 1) / p * p);
      for (u64 j = first; j <= end; j += p) seg[j - start] = false;
    }
    for (u64 i = start; i <= end; ++i) {
      if (seg[i - start] && i >= 2) {
        // Base primes smaller than root also appear here; seg marking only
        // strikes proper multiples, so primes survive.
        out.push_back(i);
      }
    }
    if (end == hi) break;  // avoid overflow on start += kBlock near 2^64
  }
  return out;
}

}  // namespace digitpat
