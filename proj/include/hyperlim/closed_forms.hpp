#pragma once

// Explicit values of e_{M,2s} for M = 0..3.
//
// Each value is ln(P * C) where P is a finite product of integer powers of
// 2k-1, 2k, 2k+1, 2k+2 and C is a closing factor built from 2, pi, e and the
// constants A (Glaisher-Kinkelin) and B (Bendersky-Adamchik). P is formed
// exactly as a FactoredRational; ln C is assembled term by term. A and B are
// always passed in, never hard-coded.

#include "hyperlim/big_real.hpp"
#include "hyperlim/factored_rational.hpp"
#include "hyperlim/reference.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace hyperlim {

namespace detail {

inline void require_even_index(long index) {
  if (index < 2 || index % 2 != 0) {
    throw std::invalid_argument("index must be an even integer >= 2, got " + std::to_string(index));
  }
}

inline void require_positive(const BigReal& v, const char* name) {
  if (!(v.sign() > 0)) throw std::invalid_argument(std::string(name) + " must be > 0");
}

// Logarithms shared by all closing factors.
struct ClosingLogs {
  BigReal ln2, ln_pi;

  explicit ClosingLogs(precision_t work) : ln2(log_of(2, work)), ln_pi(log(const_pi(work))) {}
};

inline BigReal scaled(const mpq_class& c, const BigReal& x) {
  return BigReal::from_rational(c, x.precision()) * x;
}

inline BigReal rational(const mpq_class& c, precision_t bits) { return BigReal::from_rational(c, bits); }

inline mpq_class q(long num, long den = 1) {
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

// Adds base^(c2 k^2 + c1 k + c0) for the four bases of the k-th factor.
struct QuadraticExponent {
  long c2, c1, c0;
  mpz_class at(long k) const { return mpz_class(c2) * k * k + mpz_class(c1) * k + c0; }
};

}  // namespace detail

// e_{0,2s} = ln(1 + 1/s).
inline BigReal e0_closed(long s, precision_t bits = kDefaultPrecisionBits) {
  require_precision(bits);
  if (s < 1) throw std::invalid_argument("e0_closed: s must be >= 1 (e_{0,0} diverges)");
  return log1p(BigReal(1, bits + 16) / s).rounded(bits);
}

// e_{1,4s+2} = ln( prod_{k=1}^{s} (2k-1)(2k+1)/(2k)^2 * pi/2 )
// e_{1,4s+4} = ln( prod_{k=1}^{s} 2k(2k+2)/(2k+1)^2 * 4/pi )
inline BigReal e1_closed(long index, precision_t bits = kDefaultPrecisionBits) {
  require_precision(bits);
  detail::require_even_index(index);
  const precision_t work = bits + 32;
  detail::ClosingLogs L(work);
  FactoredRational product;
  BigReal closing(work);
  if (index % 4 == 2) {
    const long s = (index - 2) / 4;
    for (long k = 1; k <= s; ++k) {
      product.multiply_power(2 * k - 1, 1).multiply_power(2 * k + 1, 1).multiply_power(2 * k, -2);
    }
    closing = L.ln_pi - L.ln2;
  } else {
    const long s = (index - 4) / 4;
    for (long k = 1; k <= s; ++k) {
      product.multiply_power(2 * k, 1).multiply_power(2 * k + 2, 1).multiply_power(2 * k + 1, -2);
    }
    closing = ldexp(L.ln2, 1) - L.ln_pi;
  }
  return (product.log(work) + closing).rounded(bits);
}

// e_{2,4s+2} = ln( prod_{k=1}^{s-1} (2k-1)^{k-s} (2k+1)^{3k-3s} / ((2k)^{3k-3s} (2k+2)^{k-s})
//                  * 2^{3s-1/6} A^6 / (pi^{2s+1/2} e^{1/2}) )
// e_{2,4s+4} = ln( prod_{k=1}^{s} (2k)^{3k-3s-2} (2k+2)^{k-s} / ((2k-1)^{k-s-1} (2k+1)^{3k-3s-1})
//                  * pi^{2s+3/2} e^{1/2} / (2^{3s+5/6} A^6) )
inline BigReal e2_closed(long index, const BigReal& A_value, precision_t bits = kDefaultPrecisionBits) {
  require_precision(bits);
  detail::require_even_index(index);
  detail::require_positive(A_value, "A");
  using detail::q;
  using detail::scaled;
  const precision_t work = bits + 32;
  detail::ClosingLogs L(work);
  const BigReal lnA = log(A_value.rounded(work));
  const BigReal half = detail::rational(q(1, 2), work);
  FactoredRational product;
  BigReal closing(work);
  if (index % 4 == 2) {
    const long s = (index - 2) / 4;
    for (long k = 1; k <= s - 1; ++k) {
      product.multiply_power(2 * k - 1, k - s)
          .multiply_power(2 * k + 1, 3 * k - 3 * s)
          .multiply_power(2 * k, -(3 * k - 3 * s))
          .multiply_power(2 * k + 2, -(k - s));
    }
    closing = scaled(q(18 * s - 1, 6), L.ln2) + lnA * 6 - scaled(q(4 * s + 1, 2), L.ln_pi) - half;
  } else {
    const long s = (index - 4) / 4;
    for (long k = 1; k <= s; ++k) {
      product.multiply_power(2 * k, 3 * k - 3 * s - 2)
          .multiply_power(2 * k + 2, k - s)
          .multiply_power(2 * k - 1, -(k - s - 1))
          .multiply_power(2 * k + 1, -(3 * k - 3 * s - 1));
    }
    closing = scaled(q(4 * s + 3, 2), L.ln_pi) + half - scaled(q(18 * s + 5, 6), L.ln2) - lnA * 6;
  }
  return (product.log(work) + closing).rounded(bits);
}

// e_{3,4s+2} = ln( prod_{k=1}^{s-1} (2k-1)^{k^2-2sk+s^2} (2k+1)^{3k^2-(6s-2)k+3s^2-2s}
//                                 / ((2k)^{3k^2-(6s-1)k+3s^2-s} (2k+2)^{k^2-(2s-1)k+s^2-s})
//                  * pi^{2s^2} e^s B^7 / (2^{3s^2-7s/3} A^{12s}) )
// e_{3,4s+4} = ln( prod_{k=1}^{s-1} (2k)^{3k^2-(6s+2)k+3s^2+2s} (2k+2)^{k^2-2sk+s^2}
//                                 / ((2k-1)^{k^2-(2s+1)k+s^2+s} (2k+1)^{3k^2-(6s+1)k+3s^2+s})
//                  * 2^{3s^2+2s/3-1/6} A^{12s+6} / (pi^{2s^2+2s+1/2} e^{s+1/2} B^7) )
//
// In the second branch the k = s factor has all exponents zero, so the range
// 1..s-1 and 1..s give the same value.
inline BigReal e3_closed(long index, const BigReal& A_value, const BigReal& B_value,
                         precision_t bits = kDefaultPrecisionBits) {
  require_precision(bits);
  detail::require_even_index(index);
  detail::require_positive(A_value, "A");
  detail::require_positive(B_value, "B");
  using detail::q;
  using detail::scaled;
  using detail::QuadraticExponent;
  const precision_t work = bits + 32;
  detail::ClosingLogs L(work);
  const BigReal lnA = log(A_value.rounded(work));
  const BigReal lnB = log(B_value.rounded(work));
  FactoredRational product;
  BigReal closing(work);

  auto accumulate = [&](long s, QuadraticExponent odd_lo, QuadraticExponent odd_hi, QuadraticExponent even_lo,
                        QuadraticExponent even_hi) {
    for (long k = 1; k <= s - 1; ++k) {
      product.multiply_power(2 * k - 1, odd_lo.at(k))
          .multiply_power(2 * k + 1, odd_hi.at(k))
          .multiply_power(2 * k, even_lo.at(k))
          .multiply_power(2 * k + 2, even_hi.at(k));
    }
  };

  if (index % 4 == 2) {
    const long s = (index - 2) / 4;
    accumulate(s, {1, -2 * s, s * s}, {3, -(6 * s - 2), 3 * s * s - 2 * s}, {-3, 6 * s - 1, -(3 * s * s - s)},
               {-1, 2 * s - 1, -(s * s - s)});
    closing = scaled(q(2 * s * s), L.ln_pi) + BigReal(s, work) + lnB * 7 -
              scaled(q(9 * s * s - 7 * s, 3), L.ln2) - lnA * (12 * s);
  } else {
    const long s = (index - 4) / 4;
    accumulate(s, {-1, 2 * s + 1, -(s * s + s)}, {-3, 6 * s + 1, -(3 * s * s + s)}, {3, -(6 * s + 2), 3 * s * s + 2 * s},
               {1, -2 * s, s * s});
    closing = scaled(q(18 * s * s + 4 * s - 1, 6), L.ln2) + lnA * (12 * s + 6) -
              scaled(q(4 * s * s + 4 * s + 1, 2), L.ln_pi) - detail::rational(q(2 * s + 1, 2), work) - lnB * 7;
  }
  return (product.log(work) + closing).rounded(bits);
}

struct ClosedFormRequest {
  int M = 0;
  long index = 2;
  std::optional<BigReal> A_value;  // required for M >= 2
  std::optional<BigReal> B_value;  // required for M == 3
};

inline BigReal closed_form(const ClosedFormRequest& req, precision_t bits = kDefaultPrecisionBits) {
  detail::require_even_index(req.index);
  switch (req.M) {
    case 0: return e0_closed(req.index / 2, bits);
    case 1: return e1_closed(req.index, bits);
    case 2:
      if (!req.A_value) throw std::invalid_argument("closed_form: M = 2 needs A");
      return e2_closed(req.index, *req.A_value, bits);
    case 3:
      if (!req.A_value || !req.B_value) throw std::invalid_argument("closed_form: M = 3 needs A and B");
      return e3_closed(req.index, *req.A_value, *req.B_value, bits);
    default: throw std::invalid_argument("closed_form: M must be in 0..3");
  }
}

}  // namespace hyperlim
