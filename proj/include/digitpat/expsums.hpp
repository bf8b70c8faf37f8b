#pragma once

// Exponential sums S_lambda = sum over the point set of exp(2*pi*i*lambda*v/p),
// evaluated for every lambda in [0, p) at once, plus moment summaries.
//
// The full spectrum comes from a length-p DFT of the set's 0/1 indicator,
// done as a chirp-z re-expression through power-of-two transforms, so any
// prime length costs O(p log p). A direct compensated summation serves as
// the independent oracle at sampled lambda.

#include <cstdint>
#include <vector>

#include "digitpat/subgroup.hpp"

namespace digitpat {

struct SumSpectrum {
  u64 p = 0;
  u64 t = 0;
  std::vector<double> power;  // |S_lambda|^2, lambda in [0, p)
};

// Whole spectrum via the chirp-z transform. Self-checks two exact
// identities before returning (S_0 == t and Parseval's sum == p*t) and
// throws invariant_error if either is off.
//
// Error model: each |S|^2 entry carries an absolute error of order
// eps_machine * t * log(p), far below the 1e-6 * p * t identity tolerance.
SumSpectrum spectrum_fft(const SubgroupTable& table, u64 max_p = 4'000'000);

// Direct summation with Kahan compensation at the given lambdas; the
// oracle for spectrum_fft. Budget: lambdas.size() * t <= max_terms.
std::vector<double> spectrum_naive(const SubgroupTable& table,
                                   const std::vector<u64>& lambdas,
                                   u64 max_terms = 100'000'000);

struct Moments {
  double moment2 = 0;           // sum over lambda != 0 of |S|^2
  double moment2_expected = 0;  // p*t - t^2, exact by orthogonality
  double moment4 = 0;           // sum over lambda != 0 of |S|^4
  double max_abs = 0;           // max over lambda != 0 of |S|
  double ratio4 = 0;            // moment4 / (p * t^(5/2)), report-only
  double ratio_max = 0;         // max_abs / sqrt(p)
};

// Moment summaries with built-in checks: moment2 must match p*t - t^2 to
// 1e-6 relative, max_abs must respect the sqrt(p) bound, and ratio4 must
// stay under a loose sanity ceiling of 1e3.
Moments moments(const SumSpectrum& spectrum);

}  // namespace digitpat
