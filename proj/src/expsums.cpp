#include "digitpat/expsums.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

namespace digitpat {

namespace {

using cd = std::complex<double>;

// In-place iterative power-of-two FFT. Twiddles are evaluated in long
// double once per run; summation order is fixed, so results do not depend
// on the caller's threading.
void fft_pow2(std::vector<cd>& a, bool invert,
              const std::vector<cd>& roots) {
  const size_t n = a.size();
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    const size_t stride = n / len;
    for (size_t i = 0; i < n; i += len) {
      for (size_t k = 0; k < len / 2; ++k) {
        cd w = roots[k * stride];
        if (invert) w = std::conj(w);
        cd u = a[i + k];
        cd v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
    }
  }
  if (invert) {
    for (cd& x : a) x /= double(n);
  }
}

std::vector<cd> make_roots(size_t n) {
  std::vector<cd> roots(n / 2);
  const long double step = -2.0L * std::numbers::pi_v<long double> / n;
  for (size_t k = 0; k < n / 2; ++k) {
    roots[k] = cd(double(std::cos(step * k)), double(std::sin(step * k)));
  }
  return roots;
}

// exp(-i*pi*m^2/p) with the quadratic phase reduced mod 2p in integers
// first; for p in the millions m^2 would otherwise cost ~9 digits of phase.
cd chirp(u64 m, u64 p) {
  const u64 q = static_cast<u64>((static_cast<u128>(m) * m) % (2 * p));
  const long double ang =
      -std::numbers::pi_v<long double> * q / static_cast<long double>(p);
  return cd(double(std::cos(ang)), double(std::sin(ang)));
}

}  // namespace

SumSpectrum spectrum_fft(const SubgroupTable& table, u64 max_p) {
  const u64 p = table.p;
  if (p > max_p) {
    throw budget_error("spectrum_fft: p exceeds transform budget " +
                       std::to_string(max_p));
  }
  size_t m = 1;
  while (m < 2 * p - 1) m <<= 1;
  const auto roots = make_roots(m);

  // Bluestein: S[k] = conj-chirp(k) * (a (*) b)[k] with a the chirped
  // indicator and b the conjugate chirp; |S[k]| == |(a (*) b)[k]|.
  std::vector<cd> a(m, cd(0, 0)), b(m, cd(0, 0));
  for (u64 v : table.elements) a[v] = chirp(v, p);
  b[0] = std::conj(chirp(0, p));
  for (u64 j = 1; j < p; ++j) {
    b[j] = std::conj(chirp(j, p));
    b[m - j] = b[j];
  }
  fft_pow2(a, false, roots);
  fft_pow2(b, false, roots);
  for (size_t i = 0; i < m; ++i) a[i] *= b[i];
  fft_pow2(a, true, roots);

  SumSpectrum spec;
  spec.p = p;
  spec.t = table.t;
  spec.power.resize(p);
  for (u64 k = 0; k < p; ++k) spec.power[k] = std::norm(a[k]);

  const double t = double(table.t);
  if (std::abs(std::sqrt(spec.power[0]) - t) > 1e-9 * t) {
    throw invariant_error("spectrum_fft: S_0 != t");
  }
  long double parseval = 0;
  for (double w : spec.power) parseval += w;
  const long double expected = static_cast<long double>(p) * table.t;
  if (std::abs(double(parseval - expected)) > 1e-6 * double(expected)) {
    throw invariant_error("spectrum_fft: Parseval identity violated");
  }
  return spec;
}

std::vector<double> spectrum_naive(const SubgroupTable& table,
                                   const std::vector<u64>& lambdas,
                                   u64 max_terms) {
  if (lambdas.size() * table.t > max_terms) {
    throw budget_error("spectrum_naive: lambda sample too large");
  }
  const u64 p = table.p;
  const double two_pi_over_p = 2.0 * std::numbers::pi / double(p);
  std::vector<double> out;
  out.reserve(lambdas.size());
  for (u64 lambda : lambdas) {
    lambda %= p;
    double re = 0, im = 0, cre = 0, cim = 0;  // Kahan accumulators
    for (u64 v : table.elements) {
      const u64 r = lambda ? mul_mod(lambda, v, p) : 0;
      const double ang = two_pi_over_p * double(r);
      double y = std::cos(ang) - cre;
      double s = re + y;
      cre = (s - re) - y;
      re = s;
      y = std::sin(ang) - cim;
      s = im + y;
      cim = (s - im) - y;
      im = s;
    }
    out.push_back(re * re + im * im);
  }
  return out;
}

Moments moments(const SumSpectrum& spectrum) {
  Moments mom;
  long double m2 = 0, m4 = 0;
  double max_power = 0;
  for (u64 lambda = 1; lambda < spectrum.p; ++lambda) {
    const double w = spectrum.power[lambda];
    m2 += w;
    m4 += static_cast<long double>(w) * w;
    max_power = std::max(max_power, w);
  }
  const double p = double(spectrum.p);
  const double t = double(spectrum.t);
  mom.moment2 = double(m2);
  mom.moment2_expected = p * t - t * t;
  mom.moment4 = double(m4);
  mom.max_abs = std::sqrt(max_power);
  mom.ratio4 = mom.moment4 / (p * std::pow(t, 2.5));
  mom.ratio_max = mom.max_abs / std::sqrt(p);

  if (std::abs(mom.moment2 - mom.moment2_expected) >
      1e-6 * std::max(1.0, mom.moment2_expected)) {
    throw invariant_error("moments: second moment off p*t - t^2");
  }
  if (mom.ratio_max > 1.0 + 1e-6) {
    throw invariant_error("moments: |S_lambda| above sqrt(p)");
  }
  if (mom.ratio4 > 1e3) {
    throw invariant_error("moments: fourth-moment ratio beyond sanity ceiling");
  }
  return mom;
}

}  // namespace digitpat
