#pragma once

// Experiment orchestration: prime sweeps, order censuses, avoidance and
// spectrum diagnostics, emitted as versioned CSV/JSON reports. Everything
// here is a thin shell over the library modules -- reports re-derive no
// arithmetic of their own -- and all output is byte-reproducible across
// runs and thread counts.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "digitpat/expansion.hpp"
#include "digitpat/subgroup.hpp"

namespace digitpat::reports {

using json = nlohmann::json;

// Memory/work ceilings for the expensive operations, adjustable from one
// --budget-mb knob. Defaults correspond to roughly half a GiB peak.
struct Budget {
  u64 max_codes = 1ull << 28;           // coverage bit set entries
  u64 max_digits = 1ull << 28;          // expansion period length
  u64 max_spectrum_p = 4'000'000;       // transform length
  u64 max_scatter_pairs = 100'000'000;  // 2*h*t in product_rep_counts
  u64 max_fold_p = 1'000'000;           // modulus in reach_counts
  u64 max_naive_cells = 200'000'000;    // avoidance oracle scan
  u64 max_sieve_span = 100'000'000;     // primes_in_range width
  u64 max_bitmap_p = 1ull << 30;        // coset-representative bitmap

  static Budget from_mb(u64 mb);
};

// Parses "5/24", "41/504", "3", "0.01" into an exact rational.
Rational parse_rational(const std::string& text);

// ---- expand ----

struct ExpandOptions {
  u64 m = 1, n = 7, g = 10;
  std::optional<unsigned> k;
  bool dump_digits = false;  // emit the full period, not a truncated prefix
};

json expand_report(const ExpandOptions& opt, const Budget& budget = {});
std::string expand_text(const json& report);

// ---- sweep ----

struct SweepOptions {
  u64 lo = 3, hi = 100, g = 10;
  Rational c = Rational::make(5, 24);
  Rational eps = Rational::make(0, 1);
  bool all_cosets = false;
  unsigned coset_sample = 16;  // smallest representatives, deterministic
  unsigned threads = 1;
};

struct SweepRow {
  u64 p = 0, g = 0, t = 0;
  bool t_gt_sqrtp = false;
  u64 num_cosets = 0;
  unsigned k = 0;
  u64 gk = 0;
  u64 T_min = 0, T_max = 0;
  bool full = false;
  u64 missing_max = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // ascending p
  u64 primes = 0;
  double frac_t_gt_sqrtp = 0;
  double frac_full = 0;
  double mean_missing_fraction = 0;
};

SweepResult run_sweep(const SweepOptions& opt, const Budget& budget = {});
std::string sweep_csv(const SweepResult& result);
json sweep_json(const SweepOptions& opt, const SweepResult& result);

// ---- order-census ----

json order_census_report(u64 x, u64 g, const Budget& budget = {});

// ---- avoid ----

struct AvoidOptions {
  u64 p = 13, g = 3;
  std::optional<u64> H;             // explicit window length ...
  std::optional<double> corollary_eps;  // ... or H = ceil(p^(19/24 + eps))
  u64 coset = 1;
};

json avoid_report(const AvoidOptions& opt);

// ---- missing-vs-avoid ----

json missing_vs_avoid_report(u64 p, u64 g, unsigned k,
                             const Budget& budget = {});

// ---- expsum ----

json expsum_report(u64 p, u64 g, unsigned check_samples = 64,
                   const Budget& budget = {});

// ---- qs ----

json qs_report(u64 p, u64 g, u64 H, unsigned s, const Budget& budget = {});

// ---- emission ----

// Fixed 12-significant-digit float formatting used in CSV output.
std::string format_double(double x);

// Writes content to a temp file in the target directory, then renames, so
// a failed run never leaves a partial file behind.
void write_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace digitpat::reports
