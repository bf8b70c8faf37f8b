#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "digitpat/expsums.hpp"

using namespace digitpat;

namespace {

// textbook complex evaluation at one lambda, double precision, no tricks
double direct_power(const SubgroupTable& table, u64 lambda) {
  double re = 0, im = 0;
  for (u64 v : table.elements) {
    const double ang = 2.0 * std::numbers::pi *
                       double(mul_mod(lambda % table.p, v, table.p)) /
                       double(table.p);
    re += std::cos(ang);
    im += std::sin(ang);
  }
  return re * re + im * im;
}

}  // namespace

TEST_CASE("spectrum goldens at p = 13") {
  auto table = build_subgroup(13, 3, 1);
  auto spec = spectrum_fft(table);
  CHECK(spec.power[0] == doctest::Approx(9.0).epsilon(1e-9));  // S_0 = t
  double parseval = 0;
  for (double w : spec.power) parseval += w;
  CHECK(parseval == doctest::Approx(39.0).epsilon(1e-9));  // p*t

  auto mom = moments(spec);
  CHECK(mom.moment2 == doctest::Approx(30.0).epsilon(1e-9));
  CHECK(mom.moment2_expected == 30.0);
  CHECK(mom.ratio_max <= 1.0 + 1e-6);

  // direct check of every nonzero lambda
  for (u64 lambda = 1; lambda < 13; ++lambda) {
    CHECK(spec.power[lambda] ==
          doctest::Approx(direct_power(table, lambda)).epsilon(1e-9));
  }
}

TEST_CASE("full group spectrum: S_lambda = -1 off zero") {
  auto table = build_subgroup(101, 2, 1);  // 2 is a primitive root mod 101
  REQUIRE(table.t == 100);
  auto spec = spectrum_fft(table);
  for (u64 lambda = 1; lambda < 101; ++lambda) {
    CHECK(spec.power[lambda] == doctest::Approx(1.0).epsilon(1e-8));
  }
  auto mom = moments(spec);
  CHECK(mom.moment4 == doctest::Approx(100.0).epsilon(1e-8));
}

TEST_CASE("fft agrees with compensated naive summation") {
  std::mt19937_64 rng(0x5eed3001);
  for (auto [p, g] : std::vector<std::pair<u64, u64>>{
           {13, 3}, {101, 10}, {257, 3}, {10007, 10}, {4099, 2}}) {
    auto table = build_subgroup(p, g, 1);
    auto spec = spectrum_fft(table);
    std::vector<u64> lambdas;
    for (int i = 0; i < 64; ++i) lambdas.push_back(1 + rng() % (p - 1));
    auto naive = spectrum_naive(table, lambdas);
    for (size_t i = 0; i < lambdas.size(); ++i) {
      CAPTURE(p);
      CAPTURE(lambdas[i]);
      CHECK(std::abs(spec.power[lambdas[i]] - naive[i]) <=
            1e-8 * std::max(1.0, naive[i]));
    }
  }
}

TEST_CASE("spectrum is constant on subgroup orbits of lambda") {
  std::mt19937_64 rng(0x5eed3002);
  auto table = build_subgroup(10007, 10, 1);
  auto spec = spectrum_fft(table);
  for (int i = 0; i < 50; ++i) {
    u64 lambda = 1 + rng() % (table.p - 1);
    u64 w = table.elements[rng() % table.elements.size()];
    u64 lw = mul_mod(lambda, w, table.p);
    CHECK(std::abs(spec.power[lambda] - spec.power[lw]) <=
          1e-8 * std::max(1.0, spec.power[lambda]));
  }
}

TEST_CASE("moment identities across instances") {
  for (auto [p, g] : std::vector<std::pair<u64, u64>>{
           {13, 10}, {211, 2}, {1009, 3}, {10007, 2}}) {
    auto table = build_subgroup(p, g, 1);
    auto spec = spectrum_fft(table);
    auto mom = moments(spec);
    const double pt = double(p) * double(table.t);
    CAPTURE(p);
    CAPTURE(g);
    CHECK(std::abs(mom.moment2 - (pt - double(table.t) * table.t)) <= 1e-6 * pt);
    CHECK(mom.max_abs <= std::sqrt(double(p)) * (1 + 1e-6));
    CHECK(mom.ratio4 > 0);
  }
}

TEST_CASE("budget guards") {
  auto table = build_subgroup(10007, 10, 1);
  CHECK_THROWS_AS(spectrum_fft(table, /*max_p=*/100), budget_error);
  std::vector<u64> lambdas(1000, 1);
  CHECK_THROWS_AS(spectrum_naive(table, lambdas, /*max_terms=*/10), budget_error);
}
