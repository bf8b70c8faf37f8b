#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "digitpat/arith.hpp"
#include "oracles.hpp"

using namespace digitpat;

TEST_CASE("mul_mod basics") {
  CHECK(mul_mod(0, 5, 7) == 0);
  CHECK(mul_mod(3, 5, 7) == 1);
  // 2^32 * 2^32 mod (2^64 - 59): frozen from the shift-add oracle.
  const u64 n = 18446744073709551557ull;  // 2^64 - 59
  const u64 a = 1ull << 32;
  CHECK(oracles::slow_mul_mod(a, a, n) == 59);
  CHECK(mul_mod(a % n, a % n, n) == 59);
}

TEST_CASE("mul_mod matches shift-add oracle on random triples") {
  std::mt19937_64 rng(0x5eed0001);
  for (int i = 0; i < 100000; ++i) {
    u64 n;
    switch (i % 4) {
      case 0: n = 2 + rng() % 1000; break;
      case 1: n = 2 + rng() % (1ull << 32); break;
      case 2: n = (1ull << 62) + rng() % (1ull << 62); break;
      default: n = ~0ull - rng() % 1024; break;  // near 2^64
    }
    u64 a = rng() % n, b = rng() % n;
    CHECK(mul_mod(a, b, n) == oracles::slow_mul_mod(a, b, n));
  }
}

TEST_CASE("pow_mod") {
  CHECK(pow_mod(3, 6, 7) == 1);
  CHECK(pow_mod(3, 0, 7) == 1);
  CHECK(pow_mod(10 % 7, 6, 7) == 1);
  CHECK(pow_mod(5, 1, 11) == 5);
  // iterated-multiplication cross-check
  std::mt19937_64 rng(0x5eed0002);
  for (int i = 0; i < 200; ++i) {
    u64 n = 2 + rng() % 100000;
    u64 a = rng() % n;
    u64 e = rng() % 50;
    u64 ref = 1 % n;
    for (u64 j = 0; j < e; ++j) ref = oracles::slow_mul_mod(ref, a, n);
    CHECK(pow_mod(a, e, n) == ref);
  }
}

TEST_CASE("is_prime small and boundary values") {
  CHECK_FALSE(is_prime(0));
  CHECK_FALSE(is_prime(1));
  CHECK(is_prime(2));
  CHECK(is_prime(3));
  CHECK_FALSE(is_prime(4));
  CHECK(is_prime(1000003));
  CHECK(oracles::trial_division_is_prime(1000003));
  // Mersenne prime 2^61 - 1, confirmed by an independent Lucas-Lehmer run.
  CHECK(oracles::lucas_lehmer(61));
  CHECK(is_prime((1ull << 61) - 1));
  CHECK_FALSE(is_prime((1ull << 59) - 1));  // composite Mersenne
  CHECK_FALSE(oracles::lucas_lehmer(59));
}

TEST_CASE("is_prime agrees with trial division up to 20000") {
  for (u64 n = 0; n < 20000; ++n) {
    CAPTURE(n);
    CHECK(is_prime(n) == oracles::trial_division_is_prime(n));
  }
}

TEST_CASE("is_prime on strong-pseudoprime bait") {
  // Carmichael numbers and 2-pseudoprimes.
  for (u64 n : {561ull, 1105ull, 1729ull, 2047ull, 3215031751ull,
                3825123056546413051ull}) {
    CHECK_FALSE(is_prime(n));
  }
  CHECK(is_prime(18446744073709551557ull));  // largest prime below 2^64
}

TEST_CASE("factorize goldens") {
  auto f = factorize(12);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0].prime == 2);
  CHECK(f.factors[0].exponent == 2);
  CHECK(f.factors[1].prime == 3);
  CHECK(f.factors[1].exponent == 1);

  auto g = factorize(1000002);
  REQUIRE(g.factors.size() == 3);
  CHECK(g.factors[0].prime == 2);
  CHECK(g.factors[1].prime == 3);
  CHECK(g.factors[2].prime == 166667);
  CHECK(oracles::trial_division_is_prime(166667));

  CHECK(factorize(1).factors.empty());
  CHECK_THROWS_AS(factorize(0), validation_error);
}

TEST_CASE("factorize invariants on random and adversarial inputs") {
  std::mt19937_64 rng(0x5eed0003);
  auto check_one = [](u64 n) {
    auto f = factorize(n);
    u64 prod = 1;
    u64 prev = 0;
    for (const auto& [p, e] : f.factors) {
      CHECK(p > prev);
      prev = p;
      CHECK(is_prime(p));
      for (unsigned i = 0; i < e; ++i) prod *= p;
    }
    CHECK(prod == n);
  };
  for (int i = 0; i < 300; ++i) check_one(1 + rng() % 1000000);
  // products of two large primes exercise the rho path
  check_one(1000003ull * 999983ull);
  check_one(4294967291ull * 4294967279ull);
  check_one((1ull << 61) - 1);
  check_one(600851475143ull);
}

TEST_CASE("factorize is deterministic") {
  u64 n = 4294967291ull * 4294967279ull;
  auto a = factorize(n), b = factorize(n);
  REQUIRE(a.factors.size() == b.factors.size());
  for (size_t i = 0; i < a.factors.size(); ++i) {
    CHECK(a.factors[i].prime == b.factors[i].prime);
  }
}

TEST_CASE("multiplicative_order goldens") {
  CHECK(multiplicative_order(10, 7) == 6);  // 10 = 3 mod 7, orbit 3,2,6,4,5,1
  CHECK(oracles::brute_order(10, 7) == 6);
  CHECK(multiplicative_order(3, 13) == 3);
  CHECK(oracles::brute_order(3, 13) == 3);
  CHECK(multiplicative_order(1, 97) == 1);
  CHECK_THROWS_AS(multiplicative_order(0, 7), validation_error);
  CHECK_THROWS_AS(multiplicative_order(14, 7), validation_error);
  // composite modulus
  CHECK(multiplicative_order(10, 21) == 6);
  CHECK(oracles::brute_order(10, 21) == 6);
}

TEST_CASE("multiplicative_order properties") {
  std::mt19937_64 rng(0x5eed0004);
  auto primes = primes_in_range(3, 2000);
  for (int i = 0; i < 200; ++i) {
    u64 p = primes[rng() % primes.size()];
    u64 g = 1 + rng() % (p - 1);
    u64 t = multiplicative_order(g, p);
    CAPTURE(p);
    CAPTURE(g);
    CHECK((p - 1) % t == 0);
    CHECK(pow_mod(g, t, p) == 1);
    for (const auto& f : factorize(t).factors) {
      CHECK(pow_mod(g, t / f.prime, p) != 1);
    }
    CHECK(t == oracles::brute_order(g, p));
  }
}

TEST_CASE("primes_in_range goldens") {
  CHECK(primes_in_range(2, 10) == std::vector<u64>{2, 3, 5, 7});
  CHECK(primes_in_range(100, 120) == std::vector<u64>{101, 103, 107, 109, 113});
  CHECK_THROWS_AS(primes_in_range(10, 5), validation_error);
  CHECK_THROWS_AS(primes_in_range(0, 1u << 30, /*max_span=*/1000), budget_error);
}

TEST_CASE("primes_in_range agrees with is_prime pointwise") {
  for (auto [lo, hi] : std::vector<std::pair<u64, u64>>{
           {0, 300}, {1000000, 1000100}, {999999937 - 50, 999999937 + 50}}) {
    auto primes = primes_in_range(lo, hi);
    size_t idx = 0;
    for (u64 n = lo; n <= hi; ++n) {
      bool listed = idx < primes.size() && primes[idx] == n;
      CAPTURE(n);
      CHECK(listed == is_prime(n));  // both emitted and skipped integers
      if (listed) ++idx;
    }
    CHECK(idx == primes.size());
  }
}

TEST_CASE("carmichael_lambda spot values") {
  CHECK(carmichael_lambda(8) == 2);
  CHECK(carmichael_lambda(21) == 6);
  CHECK(carmichael_lambda(97) == 96);
}
