#include "digitpat/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace digitpat {

void FractionSpec::validate() const {
  if (n < 2) throw validation_error("fraction: n must be >= 2");
  if (m == 0 || m >= n) throw validation_error("fraction: need 0 < m < n");
  if (g < 2) throw validation_error("fraction: base must be >= 2");
  if (g > (1ull << 32)) {
    throw validation_error("fraction: base above 2^32 unsupported");
  }
  if (std::gcd(n, g) != 1 || std::gcd(n, m) != 1) {
    throw validation_error("fraction: gcd(n, g*m) != 1, expansion not purely periodic");
  }
}

ExpansionPeriod expand(const FractionSpec& spec, u64 max_digits) {
  spec.validate();
  ExpansionPeriod out;
  out.spec = spec;
  u64 a = spec.m;
  do {
    u128 q = static_cast<u128>(spec.g) * a;
    out.digits.push_back(static_cast<std::uint32_t>(q / spec.n));
    a = static_cast<u64>(q % spec.n);
    if (out.digits.size() > max_digits) {
      throw budget_error("expand: period exceeds digit budget " +
                         std::to_string(max_digits));
    }
  } while (a != spec.m);
  out.t = out.digits.size();
  return out;
}

std::vector<u64> CoverageReport::missing_codes(u64 limit) const {
  std::vector<u64> out;
  for (u64 code = 0; code < gk && out.size() < limit; ++code) {
    if (!seen.test(code)) out.push_back(code);
  }
  return out;
}

std::optional<u64> checked_pow(u64 g, unsigned k) {
  u64 r = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (r > ~0ull / g) return std::nullopt;
    r *= g;
  }
  return r;
}

namespace {

u64 window_space(u64 g, unsigned k, u64 max_codes) {
  auto gk = checked_pow(g, k);
  if (!gk || *gk > max_codes) {
    throw budget_error("coverage: g^k exceeds code budget " +
                       std::to_string(max_codes));
  }
  return *gk;
}

}  // namespace

CoverageReport coverage_sliding(const ExpansionPeriod& period, unsigned k,
                                u64 max_codes) {
  const FractionSpec& spec = period.spec;
  CoverageReport rep;
  rep.spec = spec;
  rep.k = k;
  rep.gk = window_space(spec.g, k, max_codes);
  rep.t = period.t;
  rep.seen = CodeSet(rep.gk);
  if (k == 0) {
    rep.seen.set(0);  // the empty window
    rep.T = 1;
    return rep;
  }
  const u64 t = period.t;
  const u64 g = spec.g;
  const u64 gk1 = rep.gk / g;  // g^(k-1)
  u64 code = 0;
  for (unsigned i = 0; i < k; ++i) code = code * g + period.digits[i % t];
  for (u64 r = 0; r < t; ++r) {
    rep.seen.set(code);
    code = (code - period.digits[r % t] * gk1) * g + period.digits[(r + k) % t];
  }
  rep.T = rep.seen.popcount();
  return rep;
}

CoverageReport coverage_sliding(const FractionSpec& spec, unsigned k,
                                u64 max_codes) {
  return coverage_sliding(expand(spec), k, max_codes);
}

CoverageReport coverage_orbit(const FractionSpec& spec, unsigned k,
                              u64 max_codes) {
  spec.validate();
  if (!is_prime(spec.n)) {
    throw validation_error("coverage_orbit: denominator must be prime");
  }
  CoverageReport rep;
  rep.spec = spec;
  rep.k = k;
  rep.gk = window_space(spec.g, k, max_codes);
  rep.seen = CodeSet(rep.gk);
  const u64 p = spec.n;
  const u64 g = spec.g % p;
  u64 a = spec.m;
  u64 steps = 0;
  do {
    // Window starting at orbit position a is floor(g^k * a / p); the ratio
    // is never an exact code boundary because p divides neither g nor a.
    rep.seen.set(static_cast<u64>(static_cast<u128>(rep.gk) * a / p));
    a = mul_mod(a, g, p);
    ++steps;
  } while (a != spec.m);
  rep.t = steps;
  rep.T = rep.seen.popcount();
  return rep;
}

std::vector<u64> coset_representatives(u64 p, u64 g, u64 max_p) {
  if (!is_prime(p)) throw validation_error("coset_representatives: p must be prime");
  if (g % p == 0) throw validation_error("coset_representatives: p divides g");
  if (p > max_p) {
    throw budget_error("coset_representatives: p exceeds bitmap budget");
  }
  g %= p;
  const u64 t = multiplicative_order(g, p);
  const u64 n_cosets = (p - 1) / t;
  std::vector<bool> marked(p, false);
  std::vector<u64> reps;
  reps.reserve(n_cosets);
  for (u64 m = 1; m < p && reps.size() < n_cosets; ++m) {
    if (marked[m]) continue;
    // Ascending scan: an unmarked m is the minimum of a fresh coset.
    reps.push_back(m);
    u64 x = m;
    do {
      marked[x] = true;
      x = mul_mod(x, g, p);
    } while (x != m);
  }
  return reps;
}

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw validation_error("rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t d = std::gcd(num < 0 ? -num : num, den);
  if (d > 1) {
    num /= d;
    den /= d;
  }
  return Rational{num, den};
}

Rational Rational::minus(const Rational& other) const {
  return Rational::make(num * other.den - other.num * den, den * other.den);
}

namespace {

// Little-endian base-2^64 integer, just large enough for exact comparison
// of medium-size powers.
struct BigUint {
  std::vector<u64> w{1};

  void mul_word(u64 m) {
    u128 carry = 0;
    for (u64& wi : w) {
      u128 cur = static_cast<u128>(wi) * m + carry;
      wi = static_cast<u64>(cur);
      carry = cur >> 64;
    }
    if (carry) w.push_back(static_cast<u64>(carry));
  }
};

BigUint pow_big(u64 base, u64 exp) {
  BigUint r;
  for (u64 i = 0; i < exp; ++i) r.mul_word(base);
  return r;
}

int cmp_big(const BigUint& a, const BigUint& b) {
  if (a.w.size() != b.w.size()) return a.w.size() < b.w.size() ? -1 : 1;
  for (size_t i = a.w.size(); i-- > 0;) {
    if (a.w[i] != b.w[i]) return a.w[i] < b.w[i] ? -1 : 1;
  }
  return 0;
}

// Is g^e1 <= p^e2? Exact when the two sides are anywhere near each other;
// decided in long double when they are bits apart.
bool pow_le(u64 g, u64 e1, u64 p, u64 e2) {
  const long double bits1 = e1 * std::log2(static_cast<long double>(g));
  const long double bits2 = e2 * std::log2(static_cast<long double>(p));
  if (bits1 < bits2 - 2) return true;
  if (bits1 > bits2 + 2) return false;
  if (std::max(bits1, bits2) > 2e6L) {
    return bits1 <= bits2;  // powers astronomically large; floats decide
  }
  return cmp_big(pow_big(g, e1), pow_big(p, e2)) <= 0;
}

}  // namespace

unsigned threshold_k(u64 p, u64 g, Rational c, Rational eps) {
  if (p < 2 || g < 2) throw validation_error("threshold_k: need p, g >= 2");
  if (c.num <= 0 || c.num > c.den) {
    throw validation_error("threshold_k: coefficient must satisfy 0 < c <= 1");
  }
  if (eps.num < 0) throw validation_error("threshold_k: eps must be >= 0");
  Rational q = c.minus(eps);
  if (q.num < 0) throw validation_error("threshold_k: eps exceeds coefficient");
  if (q.num == 0) return 0;
  const u64 a = static_cast<u64>(q.num);
  const u64 b = static_cast<u64>(q.den);

  const long double x = (static_cast<long double>(a) / b) *
                        std::log(static_cast<long double>(p)) /
                        std::log(static_cast<long double>(g));
  u64 k = x > 0 ? static_cast<u64>(std::floor(x)) : 0;
  // k <= (a/b) log_g p  <=>  g^(b k) <= p^a; settle the boundary exactly.
  while (pow_le(g, b * (k + 1), p, a)) ++k;
  while (k > 0 && !pow_le(g, b * k, p, a)) --k;
  return static_cast<unsigned>(k);
}

}  // namespace digitpat
