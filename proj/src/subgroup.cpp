#include "digitpat/subgroup.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace digitpat {

SubgroupTable build_subgroup(u64 p, u64 g, u64 coset_rep) {
  if (!is_prime(p)) throw validation_error("build_subgroup: p must be prime");
  g %= p;
  coset_rep %= p;
  if (g == 0) throw validation_error("build_subgroup: p divides g");
  if (coset_rep == 0) throw validation_error("build_subgroup: coset_rep is 0 mod p");

  SubgroupTable table;
  table.p = p;
  table.coset_rep = coset_rep;
  u64 x = coset_rep;
  do {
    table.elements.push_back(x);
    x = mul_mod(x, g, p);
  } while (x != coset_rep);
  table.t = table.elements.size();
  std::sort(table.elements.begin(), table.elements.end());
  return table;
}

bool is_member(u64 u, u64 p, u64 t) {
  u %= p;
  if (u == 0) throw validation_error("is_member: zero residue");
  return pow_mod(u, t, p) == 1;
}

GapProfile gap_profile(const SubgroupTable& table) {
  GapProfile prof;
  const auto& e = table.elements;
  prof.gaps.reserve(e.size());
  for (size_t i = 0; i + 1 < e.size(); ++i) prof.gaps.push_back(e[i + 1] - e[i]);
  prof.gaps.push_back(e.front() + table.p - e.back());
  return prof;
}

namespace {

void check_window(const SubgroupTable& table, u64 H) {
  if (H < 1 || H >= table.p) {
    throw validation_error("avoidance: need 1 <= H < p");
  }
}

}  // namespace

u64 count_avoiding(const SubgroupTable& table, u64 H) {
  check_window(table, H);
  u64 count = 0;
  for (u64 d : gap_profile(table).gaps) {
    if (d > H) count += d - H;
  }
  return count;
}

u64 count_avoiding_naive(const SubgroupTable& table, u64 H, u64 max_cells) {
  check_window(table, H);
  if (table.t * H + table.p > max_cells) {
    throw budget_error("count_avoiding_naive: scan budget exceeded");
  }
  const u64 p = table.p;
  std::vector<bool> covered(p, false);
  for (u64 v : table.elements) {
    // v covers every u with v in [u, u+H), i.e. u in (v-H, v].
    for (u64 x = 0; x < H; ++x) covered[(v + p - x) % p] = true;
  }
  u64 count = 0;
  for (u64 u = 0; u < p; ++u) count += !covered[u];
  return count;
}

namespace {

void check_energy_args(const SubgroupTable& table, u64 h) {
  if (table.coset_rep != 1) {
    throw validation_error("mult_energy: table must be the subgroup itself");
  }
  if (h < 1 || 2 * h >= table.p) {
    throw validation_error("mult_energy: need 1 <= h < p/2");
  }
}

}  // namespace

u64 mult_energy_by_membership(const SubgroupTable& table, u64 h) {
  check_energy_args(table, h);
  const u64 p = table.p;
  u64 hits = 0;
  for (u64 x = 1; x <= h; ++x) {
    const u64 xinv = inv_mod(x, p);
    u64 u = 0;  // y * xinv, advanced additively
    for (u64 y = 1; y <= h; ++y) {
      u = add_mod(u, xinv, p);
      if (is_member(u, p, table.t)) ++hits;        // (x, y) and (-x, -y)
      if (is_member(p - u, p, table.t)) ++hits;    // (x, -y) and (-x, y)
    }
  }
  return 2 * hits;
}

u64 mult_energy_by_products(const SubgroupTable& table, u64 h) {
  check_energy_args(table, h);
  const u64 p = table.p;
  u64 hits = 0;
  for (u64 u : table.elements) {
    u64 v = 0;  // u*x, advanced additively
    for (u64 x = 1; x <= h; ++x) {
      v = add_mod(v, u, p);
      if (v <= h || v >= p - h) ++hits;  // y = v lies in the +/- interval
    }
  }
  return 2 * hits;
}

u64 mult_energy(const SubgroupTable& table, u64 h) {
  check_energy_args(table, h);
  // membership route costs ~2h^2 pow_mods, product route t*h additions
  const double cost_a = 2.0 * h * h * std::log2(double(table.p));
  const double cost_b = double(table.t) * h;
  return cost_a < cost_b ? mult_energy_by_membership(table, h)
                         : mult_energy_by_products(table, h);
}

RepSpectrum product_rep_counts(const SubgroupTable& table, u64 h,
                               u64 max_pairs) {
  check_energy_args(table, h);
  if (2 * static_cast<u128>(h) * table.t > max_pairs) {
    throw budget_error("product_rep_counts: 2*h*t exceeds pair budget");
  }
  const u64 p = table.p;
  RepSpectrum spec;
  spec.counts.assign(p, 0);
  for (u64 w : table.elements) {
    u64 prod = 0;  // w*a, advanced additively
    for (u64 a = 1; a <= h; ++a) {
      prod = add_mod(prod, w, p);
      ++spec.counts[prod];
      ++spec.counts[p - prod];
    }
  }
  for (u64 c : spec.counts) {
    spec.sum += c;
    spec.sum_sq += c * c;
  }
  return spec;
}

std::vector<u64> reach_counts(const SubgroupTable& table, u64 z, unsigned s,
                              u64 max_p) {
  if (s < 1) throw validation_error("reach_counts: need s >= 1");
  if (z < 1) throw validation_error("reach_counts: need Z >= 1");
  const u64 p = table.p;
  if (static_cast<u128>(s) * (z - 1) >= p) {
    throw validation_error("reach_counts: s*(Z-1) must be < p");
  }
  if (p > max_p) throw budget_error("reach_counts: p exceeds budget");
  u128 total = table.t;
  for (unsigned i = 0; i < s; ++i) {
    total *= z;
    if (total >= (u128(1) << 63)) {
      throw budget_error("reach_counts: t*Z^s too large for exact counters");
    }
  }

  // Q_s(u) = sum over (x_1..x_s) of 1_G(u + x_1 + ... + x_s): apply the
  // length-Z cyclic window sum to the indicator, s times.
  std::vector<u64> cur(p, 0), next(p);
  for (u64 v : table.elements) cur[v] = 1;
  for (unsigned fold = 0; fold < s; ++fold) {
    u64 window = 0;
    for (u64 x = 0; x < z; ++x) window += cur[x % p];
    for (u64 u = 0; u < p; ++u) {
      next[u] = window;
      window += cur[(u + z) % p] - cur[u];
    }
    std::swap(cur, next);
  }
  return cur;
}

u64 unreachable_count(const SubgroupTable& table, u64 z, unsigned s,
                      u64 max_p) {
  u64 zero = 0;
  for (u64 q : reach_counts(table, z, s, max_p)) zero += q == 0;
  return zero;
}

AvoidanceBound avoidance_bound(u64 p, double t, double H, unsigned nu) {
  if (nu < 1) throw validation_error("avoidance_bound: need nu >= 1");
  AvoidanceBound b;
  const double dp = double(p);
  const double dnu = double(nu);
  b.term1 = std::pow(dp, 2.0 - 1.0 / (4.0 * (dnu + 1.0))) * std::pow(H, -0.5) *
            std::pow(t, -1.25 + (2.0 * dnu + 1.0) / (4.0 * dnu * (dnu + 1.0)));
  b.term2 = std::pow(dp, 2.5 - 1.0 / (2.0 * dnu)) * std::pow(H, -1.0) *
            std::pow(t, -1.25 + 1.0 / (2.0 * dnu));
  b.total = b.term1 + b.term2;
  b.t_below_sqrt = !(t * t > dp);
  return b;
}

}  // namespace digitpat
