#pragma once

// The subgroup <g> mod p (or one of its cosets) viewed as a point set on
// Z/pZ: membership, cyclic gap profile, interval-avoidance counts, and the
// congruence-solution counts that control them.

#include <cstdint>
#include <vector>

#include "digitpat/arith.hpp"

namespace digitpat {

struct SubgroupTable {
  u64 p = 0;          // prime modulus
  u64 t = 0;          // order of g mod p
  u64 coset_rep = 1;  // the set is coset_rep * <g>
  std::vector<u64> elements;  // strictly increasing residues, size t
};

// Orbit of coset_rep under multiplication by g, sorted. O(t log t).
SubgroupTable build_subgroup(u64 p, u64 g, u64 coset_rep = 1);

// u in the unique order-t subgroup of F_p^*, i.e. u^t == 1 (mod p).
bool is_member(u64 u, u64 p, u64 t);

struct GapProfile {
  std::vector<u64> gaps;  // cyclic consecutive differences, sum == p
};

GapProfile gap_profile(const SubgroupTable& table);

// #U(H): shifts u in Z/pZ whose window [u, u+H) misses the point set.
// Exact via the gap profile: a gap of length d contributes max(0, d - H).
u64 count_avoiding(const SubgroupTable& table, u64 H);

// Definitional oracle: mark every u covered by some element v (u in
// (v-H, v]) and count the rest. O(t*H + p); budget-guarded.
u64 count_avoiding_naive(const SubgroupTable& table, u64 H,
                         u64 max_cells = 200'000'000);

// Multiplicative energy N(h): solutions of u*x == y (mod p) with
// 0 < |x|, |y| <= h and u in the subgroup (table must be the coset_rep == 1
// table). Two independent algorithms plus a cost-based dispatcher.
u64 mult_energy_by_membership(const SubgroupTable& table, u64 h);  // O(h^2 log p)
u64 mult_energy_by_products(const SubgroupTable& table, u64 h);    // O(t h)
u64 mult_energy(const SubgroupTable& table, u64 h);

// M_lambda(h): representations lambda == a*w (mod p), 1 <= |a| <= h,
// w in the subgroup; counts[0] is always 0. sum == 2*h*t exactly, and
// sum_sq == t * N(h) (each ratio of subgroup elements is hit t ways).
struct RepSpectrum {
  std::vector<u64> counts;  // indexed by lambda in [0, p)
  u64 sum = 0;
  u64 sum_sq = 0;
};

RepSpectrum product_rep_counts(const SubgroupTable& table, u64 h,
                               u64 max_pairs = 100'000'000);

// Q_s(u): ways to write some subgroup element as u + x_1 + ... + x_s with
// each x_i in [0, Z). Computed by applying the length-Z cyclic window sum
// s times to the subgroup indicator, O(s*p). Requires s*(Z-1) < p and
// t*Z^s < 2^63 so every count stays exact.
std::vector<u64> reach_counts(const SubgroupTable& table, u64 z, unsigned s,
                              u64 max_p = 1'000'000);

// W = #{u : Q_s(u) == 0}.
u64 unreachable_count(const SubgroupTable& table, u64 z, unsigned s,
                      u64 max_p = 1'000'000);

// Analytic two-term upper bound for #U(H), itemized for diagnostics. The
// unknown p^{o(1)} factor is taken as 1, so ratios are report-only.
struct AvoidanceBound {
  double term1 = 0;  // p^(2 - 1/(4(nu+1))) * H^(-1/2) * t^(-5/4 + (2nu+1)/(4nu(nu+1)))
  double term2 = 0;  // p^(5/2 - 1/(2nu))   * H^(-1)   * t^(-5/4 + 1/(2nu))
  double total = 0;
  bool t_below_sqrt = false;  // bound only meaningful for t > sqrt(p); flagged, not rejected
};

AvoidanceBound avoidance_bound(u64 p, double t, double H, unsigned nu);

}  // namespace digitpat
