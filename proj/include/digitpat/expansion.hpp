#pragma once

// Purely periodic base-g expansions of m/n and the distinct-window count
// computed by two independent algorithms:
//
//   * coverage_sliding walks the digit period with a rolling window code;
//   * coverage_orbit walks the orbit of m under multiplication by g mod p
//     and reads each window code directly as floor(g^k * a / p).
//
// The two must agree bit-for-bit for prime n; tests and the acceptance
// suite enforce that.

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "digitpat/arith.hpp"

namespace digitpat {

struct FractionSpec {
  u64 m = 1;
  u64 n = 7;
  u64 g = 10;

  // Enforces 0 < m < n, g >= 2 and gcd(n, g*m) == 1 (pure periodicity).
  void validate() const;
};

struct ExpansionPeriod {
  FractionSpec spec;
  u64 t = 0;                        // period length == ord of g in (Z/n)^*
  std::vector<std::uint32_t> digits;  // delta_1 .. delta_t, each in [0, g)
};

// Long-division recurrence a_0 = m, digit = floor(g*a/n), a <- g*a mod n,
// run until the remainder returns to m. Throws budget_error if the period
// exceeds max_digits.
ExpansionPeriod expand(const FractionSpec& spec, u64 max_digits = 1ull << 28);

// Fixed-size bit set over window codes [0, g^k).
class CodeSet {
 public:
  CodeSet() = default;
  explicit CodeSet(u64 size) : size_(size), words_((size + 63) / 64, 0) {}

  void set(u64 code) { words_[code >> 6] |= 1ull << (code & 63); }
  bool test(u64 code) const { return (words_[code >> 6] >> (code & 63)) & 1; }
  u64 size() const { return size_; }
  u64 popcount() const {
    u64 n = 0;
    for (u64 w : words_) n += std::popcount(w);
    return n;
  }
  const std::vector<u64>& words() const { return words_; }
  bool operator==(const CodeSet&) const = default;

 private:
  u64 size_ = 0;
  std::vector<u64> words_;
};

struct CoverageReport {
  FractionSpec spec;
  unsigned k = 1;
  u64 gk = 0;    // g^k
  u64 t = 0;     // period length (number of windows scanned)
  u64 T = 0;     // distinct windows == seen.popcount()
  CodeSet seen;  // bit per code D in [0, g^k)

  bool full() const { return T == gk; }
  // First at most `limit` absent codes, ascending.
  std::vector<u64> missing_codes(u64 limit) const;
};

// Rolling-window count over the cyclic digit period. k == 0 yields the
// single empty window. Throws budget_error when g^k > max_codes.
CoverageReport coverage_sliding(const ExpansionPeriod& period, unsigned k,
                                u64 max_codes = 1ull << 28);
CoverageReport coverage_sliding(const FractionSpec& spec, unsigned k,
                                u64 max_codes = 1ull << 28);

// Orbit-based count; requires prime n. Produces the identical CodeSet.
CoverageReport coverage_orbit(const FractionSpec& spec, unsigned k,
                              u64 max_codes = 1ull << 28);

// One representative per coset of <g> in F_p^*, each the minimum of its
// coset, ascending. (p-1)/ord(g) entries.
std::vector<u64> coset_representatives(u64 p, u64 g, u64 max_p = 1ull << 30);

// Exact rational a/b used for window-length coefficients like 5/24.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den);
  Rational minus(const Rational& other) const;
  double value() const { return double(num) / double(den); }
};

// Largest k with g^k <= p^(c - eps), i.e. floor((c - eps) * log_g p).
// The floating-point estimate is confirmed (and corrected if needed) by an
// exact big-integer power comparison, so boundary cases cannot round the
// wrong way. Requires 0 < c <= 1, 0 <= eps <= c.
unsigned threshold_k(u64 p, u64 g, Rational c, Rational eps);

// g^k with overflow detection.
std::optional<u64> checked_pow(u64 g, unsigned k);

}  // namespace digitpat
