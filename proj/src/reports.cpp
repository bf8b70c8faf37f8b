#include "digitpat/reports.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <random>
#include <thread>

#include "digitpat/expsums.hpp"

namespace digitpat::reports {

Budget Budget::from_mb(u64 mb) {
  if (mb == 0) throw validation_error("budget: need at least 1 MB");
  Budget b;
  const double scale = double(mb) / 512.0;
  auto scaled = [&](u64 v) { return std::max<u64>(1, u64(double(v) * scale)); };
  b.max_codes = scaled(b.max_codes);
  b.max_digits = scaled(b.max_digits);
  b.max_spectrum_p = scaled(b.max_spectrum_p);
  b.max_scatter_pairs = scaled(b.max_scatter_pairs);
  b.max_fold_p = scaled(b.max_fold_p);
  b.max_naive_cells = scaled(b.max_naive_cells);
  b.max_sieve_span = scaled(b.max_sieve_span);
  b.max_bitmap_p = scaled(b.max_bitmap_p);
  return b;
}

Rational parse_rational(const std::string& text) {
  auto parse_int = [](std::string_view s) -> std::int64_t {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw validation_error("rational: cannot parse '" + std::string(s) + "'");
    }
    return v;
  };
  if (auto slash = text.find('/'); slash != std::string::npos) {
    return Rational::make(parse_int(std::string_view(text).substr(0, slash)),
                          parse_int(std::string_view(text).substr(slash + 1)));
  }
  if (auto dot = text.find('.'); dot != std::string::npos) {
    std::string frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 15) {
      throw validation_error("rational: malformed decimal '" + text + "'");
    }
    std::int64_t den = 1;
    for (size_t i = 0; i < frac.size(); ++i) den *= 10;
    std::int64_t whole = dot == 0 ? 0 : parse_int(std::string_view(text).substr(0, dot));
    return Rational::make(whole * den + parse_int(frac), den);
  }
  return Rational::make(parse_int(text), 1);
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out.write(content.data(), std::streamsize(content.size()));
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

// ---- expand ----

json expand_report(const ExpandOptions& opt, const Budget& budget) {
  FractionSpec spec{opt.m, opt.n, opt.g};
  ExpansionPeriod period = expand(spec, budget.max_digits);

  json results;
  results["t"] = period.t;
  constexpr u64 kPreview = 64;
  const u64 shown = opt.dump_digits ? period.t : std::min(period.t, kPreview);
  if (opt.g <= 10) {
    std::string s;
    s.reserve(shown);
    for (u64 i = 0; i < shown; ++i) s.push_back(char('0' + period.digits[i]));
    results["digits"] = s;
  } else {
    json arr = json::array();
    for (u64 i = 0; i < shown; ++i) arr.push_back(period.digits[i]);
    results["digits"] = arr;
  }
  results["digits_truncated"] = shown < period.t;

  json summary;
  if (opt.k) {
    CoverageReport cov = coverage_sliding(period, *opt.k, budget.max_codes);
    json c;
    c["k"] = cov.k;
    c["gk"] = cov.gk;
    c["T"] = cov.T;
    c["full"] = cov.full();
    c["missing_count"] = cov.gk - cov.T;
    c["missing_sample"] = cov.missing_codes(32);
    results["coverage"] = c;
    summary["T"] = cov.T;
  }
  summary["t"] = period.t;

  return json{{"schema", "digitpat.expand.v1"},
              {"params", {{"m", opt.m}, {"n", opt.n}, {"g", opt.g},
                          {"k", opt.k ? json(*opt.k) : json()}}},
              {"results", results},
              {"summary", summary}};
}

std::string expand_text(const json& report) {
  const auto& r = report.at("results");
  std::string out = "t=" + std::to_string(r.at("t").get<u64>());
  out += " digits=";
  if (r.at("digits").is_string()) {
    out += r.at("digits").get<std::string>();
  } else {
    out += r.at("digits").dump();
  }
  if (r.at("digits_truncated").get<bool>()) out += "...";
  if (r.contains("coverage")) {
    const auto& c = r.at("coverage");
    out += " T(" + std::to_string(c.at("k").get<unsigned>()) + ")=" +
           std::to_string(c.at("T").get<u64>()) + "/" +
           std::to_string(c.at("gk").get<u64>());
  }
  out += "\n";
  return out;
}

// ---- sweep ----

namespace {

SweepRow sweep_one(u64 p, const SweepOptions& opt, const Budget& budget) {
  SweepRow row;
  row.p = p;
  row.g = opt.g;
  row.t = multiplicative_order(opt.g % p, p);
  row.t_gt_sqrtp = exceeds_sqrt(row.t, p);
  row.num_cosets = (p - 1) / row.t;
  row.k = threshold_k(p, opt.g, opt.c, opt.eps);
  auto gk = checked_pow(opt.g, row.k);
  if (!gk || *gk > budget.max_codes) {
    throw budget_error("sweep: g^k exceeds code budget at p=" + std::to_string(p));
  }
  row.gk = *gk;

  std::vector<u64> reps = coset_representatives(p, opt.g, budget.max_bitmap_p);
  if (!opt.all_cosets && reps.size() > opt.coset_sample) {
    reps.resize(opt.coset_sample);
  }
  row.T_min = ~0ull;
  for (u64 rep : reps) {
    CoverageReport cov =
        coverage_orbit(FractionSpec{rep, p, opt.g}, row.k, budget.max_codes);
    row.T_min = std::min(row.T_min, cov.T);
    row.T_max = std::max(row.T_max, cov.T);
  }
  row.full = row.T_min == row.gk;
  row.missing_max = row.gk - row.T_min;
  return row;
}

}  // namespace

SweepResult run_sweep(const SweepOptions& opt, const Budget& budget) {
  if (opt.lo < 2) throw validation_error("sweep: range must start at 2 or above");
  std::vector<u64> primes;
  for (u64 p : primes_in_range(opt.lo, opt.hi, budget.max_sieve_span)) {
    if (opt.g % p != 0) primes.push_back(p);
  }

  SweepResult result;
  result.rows.resize(primes.size());
  const unsigned threads =
      std::clamp(opt.threads, 1u, 64u);

  std::atomic<size_t> cursor{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mu;
  auto worker = [&] {
    for (;;) {
      const size_t i = cursor.fetch_add(1);
      if (i >= primes.size() || failed.load()) break;
      try {
        result.rows[i] = sweep_one(primes[i], opt, budget);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        failed.store(true);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  result.primes = result.rows.size();
  if (!result.rows.empty()) {
    u64 n_sqrt = 0, n_full = 0;
    double missing_sum = 0;
    for (const SweepRow& row : result.rows) {
      n_sqrt += row.t_gt_sqrtp;
      n_full += row.full;
      missing_sum += double(row.missing_max) / double(row.gk);
    }
    result.frac_t_gt_sqrtp = double(n_sqrt) / double(result.primes);
    result.frac_full = double(n_full) / double(result.primes);
    result.mean_missing_fraction = missing_sum / double(result.primes);
  }
  return result;
}

std::string sweep_csv(const SweepResult& result) {
  std::string out =
      "schema,p,g,t,t_gt_sqrtp,num_cosets,k,gk,T_min,T_max,full,missing_max\n";
  for (const SweepRow& r : result.rows) {
    out += "digitpat.sweep.v1,";
    out += std::to_string(r.p) + ',' + std::to_string(r.g) + ',' +
           std::to_string(r.t) + ',' + (r.t_gt_sqrtp ? "1," : "0,") +
           std::to_string(r.num_cosets) + ',' + std::to_string(r.k) + ',' +
           std::to_string(r.gk) + ',' + std::to_string(r.T_min) + ',' +
           std::to_string(r.T_max) + ',' + (r.full ? "1," : "0,") +
           std::to_string(r.missing_max) + '\n';
  }
  out += "# summary primes=" + std::to_string(result.primes) +
         " frac_t_gt_sqrtp=" + format_double(result.frac_t_gt_sqrtp) +
         " frac_full=" + format_double(result.frac_full) +
         " mean_missing_fraction=" + format_double(result.mean_missing_fraction) +
         "\n";
  return out;
}

json sweep_json(const SweepOptions& opt, const SweepResult& result) {
  json rows = json::array();
  for (const SweepRow& r : result.rows) {
    rows.push_back({{"p", r.p},
                    {"g", r.g},
                    {"t", r.t},
                    {"t_gt_sqrtp", r.t_gt_sqrtp},
                    {"num_cosets", r.num_cosets},
                    {"k", r.k},
                    {"gk", r.gk},
                    {"T_min", r.T_min},
                    {"T_max", r.T_max},
                    {"full", r.full},
                    {"missing_max", r.missing_max}});
  }
  return json{{"schema", "digitpat.sweep.v1"},
              {"params",
               {{"lo", opt.lo},
                {"hi", opt.hi},
                {"g", opt.g},
                {"c", std::to_string(opt.c.num) + "/" + std::to_string(opt.c.den)},
                {"eps", std::to_string(opt.eps.num) + "/" + std::to_string(opt.eps.den)},
                {"all_cosets", opt.all_cosets},
                {"coset_sample", opt.coset_sample}}},
              {"results", rows},
              {"summary",
               {{"primes", result.primes},
                {"frac_t_gt_sqrtp", result.frac_t_gt_sqrtp},
                {"frac_full", result.frac_full},
                {"mean_missing_fraction", result.mean_missing_fraction}}}};
}

// ---- order-census ----

json order_census_report(u64 x, u64 g, const Budget& budget) {
  if (g < 2) throw validation_error("order-census: need g >= 2");
  u64 count = 0, above = 0;
  std::map<u64, u64> histogram;  // index (p-1)/t -> primes
  for (u64 p : primes_in_range(2, x, budget.max_sieve_span)) {
    if (g % p == 0) continue;
    const u64 t = multiplicative_order(g % p, p);
    ++count;
    above += exceeds_sqrt(t, p);
    ++histogram[(p - 1) / t];
  }
  json hist = json::array();
  for (auto [index, n] : histogram) hist.push_back({index, n});
  const double fraction = count ? double(above) / double(count) : 0.0;
  return json{{"schema", "digitpat.order-census.v1"},
              {"params", {{"x", x}, {"g", g}}},
              {"results",
               {{"primes", count},
                {"count_t_gt_sqrtp", above},
                {"count_t_le_sqrtp", count - above},
                {"index_histogram", hist}}},
              {"summary", {{"fraction_t_gt_sqrtp", fraction}}}};
}

// ---- avoid ----

json avoid_report(const AvoidOptions& opt) {
  if (opt.H && opt.corollary_eps) {
    throw validation_error("avoid: give either H or --corollary-eps, not both");
  }
  if (!opt.H && !opt.corollary_eps) {
    throw validation_error("avoid: one of H or --corollary-eps is required");
  }
  SubgroupTable table = build_subgroup(opt.p, opt.g, opt.coset);
  const double eps = opt.corollary_eps.value_or(0.0);
  const u64 h_min = static_cast<u64>(
      std::ceil(std::pow(static_cast<long double>(opt.p), 19.0L / 24 + eps)));
  const u64 H = opt.H ? *opt.H : h_min;
  const u64 u_count = count_avoiding(table, H);

  json bounds = json::array();
  for (unsigned nu : {1u, 2u, 3u}) {
    AvoidanceBound b = avoidance_bound(opt.p, double(table.t), double(H), nu);
    bounds.push_back({{"nu", nu},
                      {"term1", b.term1},
                      {"term2", b.term2},
                      {"total", b.total},
                      {"ratio", double(u_count) / b.total}});
  }
  return json{{"schema", "digitpat.avoid.v1"},
              {"params",
               {{"p", opt.p},
                {"g", opt.g},
                {"coset", opt.coset},
                {"H", H},
                {"corollary_eps", opt.corollary_eps ? json(eps) : json()}}},
              {"results",
               {{"t", table.t},
                {"t_gt_sqrtp", exceeds_sqrt(table.t, opt.p)},
                {"u_count", u_count},
                {"u_fraction", double(u_count) / double(opt.p)},
                {"corollary_H_min", h_min},
                {"bounds", bounds}}},
              {"summary", {{"u_fraction", double(u_count) / double(opt.p)}}}};
}

// ---- missing-vs-avoid ----

json missing_vs_avoid_report(u64 p, u64 g, unsigned k, const Budget& budget) {
  if (!is_prime(p)) throw validation_error("missing-vs-avoid: p must be prime");
  if (g < 2 || g % p == 0) throw validation_error("missing-vs-avoid: bad base");
  auto gk = checked_pow(g, k);
  if (!gk || *gk > budget.max_codes) {
    throw budget_error("missing-vs-avoid: g^k exceeds code budget");
  }
  const u64 H = p / (2 * *gk);
  if (H == 0) {
    throw validation_error("missing-vs-avoid: H = floor(p/(2 g^k)) is 0; need g^k < p/2");
  }

  json cosets = json::array();
  u64 violations = 0;
  for (u64 rep : coset_representatives(p, g, budget.max_bitmap_p)) {
    CoverageReport cov = coverage_orbit(FractionSpec{rep, p, g}, k, budget.max_codes);
    const u64 missing = cov.gk - cov.T;
    SubgroupTable coset_table = build_subgroup(p, g, rep);
    const u64 u_count = count_avoiding(coset_table, H);
    // A missing window pins an aligned run of avoiding shifts: at least
    // H - 1 of them, and at least one since g^k < p/2.
    const bool ok = missing == 0 || (u_count >= 1 && u_count + 1 >= H);
    if (!ok) ++violations;
    json row = {{"coset", rep},
                {"T", cov.T},
                {"missing", missing},
                {"u_count", u_count},
                {"implication_ok", ok}};
    row["lhs_rhs_ratio"] =
        u_count > 0 ? json(double(missing) * double(p) / (double(*gk) * double(u_count)))
                    : json();
    cosets.push_back(row);
  }
  if (violations > 0) {
    throw invariant_error("missing-vs-avoid: missing windows without avoiding shifts");
  }
  return json{{"schema", "digitpat.missing-vs-avoid.v1"},
              {"params", {{"p", p}, {"g", g}, {"k", k}, {"H", H}}},
              {"results", {{"cosets", cosets}}},
              {"summary",
               {{"num_cosets", cosets.size()}, {"implication_violations", violations}}}};
}

// ---- expsum ----

json expsum_report(u64 p, u64 g, unsigned check_samples, const Budget& budget) {
  SubgroupTable table = build_subgroup(p, g, 1);
  SumSpectrum spectrum = spectrum_fft(table, budget.max_spectrum_p);
  Moments mom = moments(spectrum);

  long double parseval = 0;
  for (double w : spectrum.power) parseval += w;
  const double parseval_residual =
      std::abs(double(parseval) - double(p) * double(table.t)) /
      (double(p) * double(table.t));

  // Deterministic lambda sample; the seed mixes p and g only.
  std::mt19937_64 rng(p * 0x9e3779b97f4a7c15ull ^ g);
  std::vector<u64> lambdas;
  lambdas.reserve(check_samples);
  for (unsigned i = 0; i < check_samples; ++i) lambdas.push_back(1 + rng() % (p - 1));
  std::vector<double> direct =
      spectrum_naive(table, lambdas, budget.max_scatter_pairs);
  double max_rel_err = 0;
  for (size_t i = 0; i < lambdas.size(); ++i) {
    const double a = spectrum.power[lambdas[i]];
    const double b = direct[i];
    max_rel_err = std::max(max_rel_err, std::abs(a - b) / std::max(1e-300, b));
  }

  return json{{"schema", "digitpat.expsum.v1"},
              {"params", {{"p", p}, {"g", g}, {"check_samples", check_samples}}},
              {"results",
               {{"t", table.t},
                {"moment2", mom.moment2},
                {"moment2_expected", mom.moment2_expected},
                {"moment4", mom.moment4},
                {"ratio4", mom.ratio4},
                {"max_abs", mom.max_abs},
                {"ratio_max", mom.ratio_max},
                {"parseval_residual", parseval_residual},
                {"naive_check_max_rel_err", max_rel_err}}},
              {"summary", {{"ratio4", mom.ratio4}, {"ratio_max", mom.ratio_max}}}};
}

// ---- qs ----

json qs_report(u64 p, u64 g, u64 H, unsigned s, const Budget& budget) {
  if (s < 1) throw validation_error("qs: need s >= 1");
  if (H < 1) throw validation_error("qs: need H >= 1");
  SubgroupTable table = build_subgroup(p, g, 1);
  const u64 z = (H + s - 1) / s;  // ceil(H/s)
  std::vector<u64> q = reach_counts(table, z, s, budget.max_fold_p);
  u64 w_count = 0, total = 0;
  for (u64 v : q) {
    w_count += v == 0;
    total += v;
  }
  u64 expected = table.t;
  for (unsigned i = 0; i < s; ++i) expected *= z;  // guarded < 2^63 above
  if (total != expected) {
    throw invariant_error("qs: sum of reach counts != t*Z^s");
  }
  const u64 u_count = count_avoiding(table, H);
  if (u_count > w_count) {
    throw invariant_error("qs: avoidance set not inside unreachable set");
  }
  return json{{"schema", "digitpat.qs.v1"},
              {"params", {{"p", p}, {"g", g}, {"H", H}, {"s", s}, {"Z", z}}},
              {"results",
               {{"t", table.t},
                {"u_count", u_count},
                {"w_count", w_count},
                {"total_reach", total},
                {"total_expected", expected}}},
              {"summary", {{"u_count", u_count}, {"w_count", w_count}}}};
}

}  // namespace digitpat::reports
