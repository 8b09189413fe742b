#pragma once

// The alpha -> 0+ limits
//
//   e_{M,2s} = lim_{alpha->0+} sum_{n>=1} (1/n) (1 - q^n) / (1 + q^n)^M * q^{s n},   q = e^{-2 alpha},
//
// for M in 0..3: summands, rigorously truncated partial sums, the termwise
// recursion e_{M,2s} + e_{M,2s+2} = e_{M-1,2s}, and Richardson extrapolation
// in alpha.

#include "hyperlim/big_real.hpp"
#include "hyperlim/richardson.hpp"
#include "hyperlim/series_value.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperlim {

inline constexpr long kMaxSeriesTerms = 100'000'000;

// (M, s) of e_{M,2s}; `s` is half the even index.
struct EIndex {
  int M = 0;
  long s = 1;

  EIndex(int m, long half_index) : M(m), s(half_index) {
    if (M < 0 || M > 3) throw std::invalid_argument("EIndex: M must be in 0..3, got " + std::to_string(M));
    if (s < 0) throw std::invalid_argument("EIndex: s must be >= 0");
  }

  // From the even index 2s.
  static EIndex from_index(int m, long index) {
    if (index < 2 || index % 2 != 0) {
      throw std::invalid_argument("index must be an even integer >= 2, got " + std::to_string(index));
    }
    return EIndex(m, index / 2);
  }

  long index() const { return 2 * s; }
  std::string label() const { return "e_{" + std::to_string(M) + "," + std::to_string(2 * s) + "}"; }
};

namespace detail {
inline void require_positive_alpha(const BigReal& alpha) {
  if (!(alpha.sign() > 0)) throw std::invalid_argument("alpha must be > 0");
}
}  // namespace detail

// (1/n) (1 - q^n) / (1 + q^n)^M q^{sn} at the precision of alpha.
inline BigReal e_term(const EIndex& idx, long n, const BigReal& alpha) {
  detail::require_positive_alpha(alpha);
  if (n < 1) throw std::invalid_argument("e_term: n must be >= 1");
  const precision_t bits = alpha.precision();
  const precision_t work = bits + 16;
  BigReal t = alpha.rounded(work) * (2 * n);
  BigReal qn = exp(-t);
  BigReal numerator = -expm1(-t);
  if (idx.s > 0) numerator *= pow(qn, idx.s);
  BigReal denom = pow(qn + 1, static_cast<long>(idx.M));
  return (numerator / denom / n).rounded(bits);
}

namespace detail {
struct PartialSum {
  SeriesValue value;
  BigReal truncation;  // analytic tail bound without rounding slop
};

inline PartialSum e_partial_sum(const EIndex& idx, const BigReal& alpha, long terms) {
  detail::require_positive_alpha(alpha);
  if (idx.s < 1) throw std::invalid_argument(idx.label() + " diverges: the series needs s >= 1");
  if (terms < 1) throw std::invalid_argument("e_partial_terms: terms must be >= 1");
  const precision_t bits = alpha.precision();
  const precision_t work = bits + 32;

  const BigReal q = exp(-ldexp(alpha.rounded(work), 1));
  const BigReal qs = pow(q, idx.s);
  BigReal qn(1, work), qsn(1, work), sum(work);
  for (long n = 1; n <= terms; ++n) {
    qn *= q;
    qsn *= qs;
    BigReal num = (1 - qn) * qsn;
    BigReal den = pow(qn + 1, static_cast<long>(idx.M)) * n;
    sum += num / den;
  }
  BigReal bound = qsn * qs / ((1 - qs) * (terms + 1));
  BigReal slop = ulp(sum.rounded(bits)) * 4;
  return {SeriesValue{sum.rounded(bits), (bound + slop).rounded(bits), terms, alpha}, bound};
}
}  // namespace detail

// Partial sum with explicit term count and the tail bound
//   sum_{n>N} (1/n) q^{sn} <= q^{s(N+1)} / ((N+1)(1 - q^s)),
// valid because (1 - q^n)/(1 + q^n)^M <= 1. The bound also covers rounding.
inline SeriesValue e_partial_terms(const EIndex& idx, const BigReal& alpha, long terms) {
  return detail::e_partial_sum(idx, alpha, terms).value;
}

// Partial sum whose truncation error is <= tol; tail_bound adds a few ulp of
// rounding on top.
inline SeriesValue e_partial(const EIndex& idx, const BigReal& alpha, const BigReal& tol,
                             long max_terms = kMaxSeriesTerms) {
  detail::require_positive_alpha(alpha);
  if (idx.s < 1) throw std::invalid_argument(idx.label() + " diverges: the series needs s >= 1");
  if (!(tol.sign() > 0)) throw std::invalid_argument("e_partial: tol must be > 0");

  // Smallest N with q^{s(N+1)} / ((N+1)(1-q^s)) <= tol, located in log space.
  const BigReal rate = alpha * (2 * idx.s);  // -ln q^s
  const double r = rate.to_double();
  const double log_gap = std::log(-expm1(-rate).to_double());
  const double log_tol = log(tol).to_double();
  auto log_bound = [&](double n) { return -r * (n + 1) - std::log(n + 1) - log_gap; };
  double lo = 0, hi = 1;
  while (log_bound(hi) > log_tol) {
    hi *= 2;
    if (hi > 4.0 * static_cast<double>(max_terms)) break;
  }
  while (hi - lo > 1) {
    double mid = std::floor((lo + hi) / 2);
    (log_bound(mid) > log_tol ? lo : hi) = mid;
  }
  long terms = static_cast<long>(hi) + 1;
  if (terms > max_terms) {
    throw ResourceLimitError(idx.label() + ": tolerance needs about " + std::to_string(terms) +
                                 " terms, cap is " + std::to_string(max_terms),
                             e_partial_terms(idx, alpha, std::min<long>(max_terms, 1'000'000)));
  }
  auto v = detail::e_partial_sum(idx, alpha, terms);
  while (v.truncation > tol) {
    terms += terms / 8 + 1;
    if (terms > max_terms) throw ResourceLimitError(idx.label() + ": term cap reached", v.value);
    v = detail::e_partial_sum(idx, alpha, terms);
  }
  return v.value;
}

inline ExtrapolationConfig default_e_limit_config() { return ExtrapolationConfig::with_depth(6, {1, 1}); }

// Richardson samples at alpha_j = alpha0 / ratio^j.
inline std::vector<Sample> e_limit_samples(const EIndex& idx, const ExtrapolationConfig& config,
                                           precision_t bits = kDefaultPrecisionBits,
                                           const BigReal* alpha0 = nullptr) {
  config.validate();
  require_precision(bits);
  BigReal alpha = alpha0 ? alpha0->rounded(bits) : BigReal::power_of_two(-3, bits);
  const BigReal tol = BigReal::power_of_two(-static_cast<long>(bits) - 8, bits);
  std::vector<Sample> samples;
  for (int j = 0; j < config.samples; ++j) {
    SeriesValue v = e_partial(idx, alpha, tol);
    samples.push_back({alpha, v.value});
    alpha /= config.schedule_ratio;
  }
  return samples;
}

inline ConstantEstimate e_limit(const EIndex& idx, const ExtrapolationConfig& config = default_e_limit_config(),
                                precision_t bits = kDefaultPrecisionBits, const BigReal* alpha0 = nullptr) {
  auto samples = e_limit_samples(idx, config, bits, alpha0);
  return richardson_extrapolate(samples, config, idx.label());
}

// max_{n <= n_max} |e_term(M,s,n) + e_term(M,s+1,n) - e_term(M-1,s,n)|.
inline BigReal recursion_residual(int M, long s, const BigReal& alpha, long n_max) {
  if (M < 1 || M > 3) throw std::invalid_argument("recursion_residual: M must be in 1..3");
  if (s < 0) throw std::invalid_argument("recursion_residual: s must be >= 0");
  if (n_max < 1) throw std::invalid_argument("recursion_residual: n_max must be >= 1");
  detail::require_positive_alpha(alpha);
  const EIndex here(M, s), next(M, s + 1), lower(M - 1, s);
  BigReal worst(alpha.precision());
  for (long n = 1; n <= n_max; ++n) {
    BigReal r = abs(e_term(here, n, alpha) + e_term(next, n, alpha) - e_term(lower, n, alpha));
    if (r > worst) worst = r;
  }
  return worst;
}

}  // namespace hyperlim
