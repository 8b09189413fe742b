#pragma once

// Reference constants used as independent oracles.

#include "hyperlim/big_real.hpp"

namespace hyperlim {

// pi, correctly rounded (error <= 0.5 ulp).
inline BigReal const_pi(precision_t bits) {
  require_precision(bits);
  BigReal r(bits);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

// zeta(3) from the central-binomial series
//
//   zeta(3) = 5/2 * sum_{n>=1} (-1)^{n+1} / (n^3 * C(2n, n)).
//
// Terms shrink by roughly 1/4 per step and alternate in sign, so the series is
// truncated once a term drops below 2^-(bits + guard). Summation runs at
// bits + 32 and the result is rounded once; the total error stays well under
// 10 ulp.
inline BigReal zeta3_reference(precision_t bits) {
  require_precision(bits);
  const precision_t work = bits + 32;
  const BigReal threshold = BigReal::power_of_two(-static_cast<long>(work) - 4, work);

  BigReal sum(work);
  mpz_class central = 1;  // C(2n, n), updated exactly
  for (unsigned long n = 1;; ++n) {
    // C(2n, n) = C(2n-2, n-1) * (2n)(2n-1) / n^2
    central *= 2 * n * (2 * n - 1);
    central /= n * n;
    mpz_class denom = central * n * n * n;
    BigReal term = BigReal(1, work) / BigReal::from_integer(denom, work);
    if (n % 2 == 1) {
      sum += term;
    } else {
      sum -= term;
    }
    if (term < threshold) break;
  }
  sum *= 5;
  sum = ldexp(sum, -1);
  return sum.rounded(bits);
}

}  // namespace hyperlim
