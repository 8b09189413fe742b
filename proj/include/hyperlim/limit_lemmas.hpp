#pragma once

// Auxiliary limits behind the closed forms, checked numerically:
//
//   lim_{s->inf} s^N sum_{k>=1} prod_{j=1}^{N+1} 1/(2k+j+d+2s) = 1/(2N 2^N)     (any fixed shift d)
//   lim_{x->inf} x (1 - x ln(1 + 1/x))                        = 1/2
//   lim_{x->inf} x^2 (1 - (x + 1/2) ln(1 + 1/x))              = -1/12
//   lim_{N->inf} 2N sum_{k>N} ln((2k)^2 / ((2k-1)(2k+1)))     = 1/2
//   lim_{x->inf} x^2 sum_{k>=1} ln((y-3)(y-1)^3 / ((y-2)^3 y)) = -1/8,  y = 2k + 2x
//   lim_{x->inf} x sum_{k>=1} [(3y-5) ln(y-2) + (y-1) ln y
//                             - (y-2) ln(y-3) - (3y-4) ln(y-1)] = 1/4
//
// The infinite sums are truncated with Euler-Maclaurin tails whose summands
// split into completely monotone pieces (see tail_sum.hpp), so every
// SeriesValue carries a rigorous tail bound.

#include "hyperlim/big_real.hpp"
#include "hyperlim/richardson.hpp"
#include "hyperlim/series_value.hpp"
#include "hyperlim/tail_sum.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperlim {

inline constexpr long kMaxLemmaTerms = 10'000'000;

struct LemmaReport {
  std::string lemma_id;
  std::map<std::string, std::string> parameters;
  ConstantEstimate computed;
  BigReal target;
  int matched_digits = 0;
};

inline LemmaReport make_lemma_report(std::string id, std::map<std::string, std::string> params,
                                     ConstantEstimate computed, BigReal target) {
  const int cap = decimal_digits(std::min(computed.value.precision(), target.precision()));
  int digits = matched_digits(computed.value, target, cap);
  return {std::move(id), std::move(params), std::move(computed), std::move(target), digits};
}

// ---------------------------------------------------------------------------
// Shifted rational sums: sum_{k>=1} prod_{j=1}^{N+1} 1/(2k + j + d + 2s)

namespace detail {

inline void require_lemma1_args(long N, long s) {
  if (N < 1) throw std::invalid_argument("lemma1: N must be >= 1");
  if (s < 0) throw std::invalid_argument("lemma1: s must be >= 0");
}

// prod_{j=1}^{N+1} 1/(y + j) = sum_j a_j / (y + j),  a_j = prod_{i != j} 1/(i - j).
inline TailModel lemma1_model(long N, const BigReal& base) {
  std::vector<Atom> atoms;
  for (long j = 1; j <= N + 1; ++j) {
    mpz_class denom = 1;
    for (long i = 1; i <= N + 1; ++i) {
      if (i != j) denom *= (i - j);
    }
    mpq_class coeff(1, denom);
    coeff.canonicalize();
    atoms.push_back({AtomKind::InversePower, -j, coeff, 1});
  }
  return TailModel{{{AtomCombination(std::move(atoms)), 1}}, 2, base};
}

inline mpq_class lemma1_term_exact(long N, long s, const mpq_class& d, long k) {
  mpq_class denom = 1;
  for (long j = 1; j <= N + 1; ++j) denom *= mpq_class(2 * k + j + 2 * s) + d;
  return 1 / denom;
}

}  // namespace detail

// Exact partial sum over k = 1..count plus an Euler-Maclaurin tail of the given order.
inline SeriesValue lemma1_sum_terms(long N, long s, const mpq_class& d, long count, int order,
                                    precision_t bits = kDefaultPrecisionBits) {
  detail::require_lemma1_args(N, s);
  require_precision(bits);
  if (!(d + 3 + 2 * s > 0)) throw std::invalid_argument("lemma1: denominators must be positive (need 3 + d + 2s > 0)");
  if (count < 1) throw std::invalid_argument("lemma1: count must be >= 1");
  mpq_class base_q = d + 2 * s;
  const TailModel model = detail::lemma1_model(N, BigReal::from_rational(base_q, bits + 64));
  mpq_class partial = 0;
  for (long k = 1; k <= count; ++k) partial += detail::lemma1_term_exact(N, s, d, k);
  auto tail = em_tail(model, count, order, bits);
  BigReal value = BigReal::from_rational(partial, bits + 32) + tail.estimate;
  BigReal slop = ulp(value.rounded(bits)) * 4;
  return SeriesValue{value.rounded(bits), (tail.bound + slop).rounded(bits), count, BigReal(s, bits)};
}

// Same sum with tail_bound <= tol; exact rational head for rational d.
inline SeriesValue lemma1_sum(long N, long s, const mpq_class& d, const BigReal& tol,
                              precision_t bits = kDefaultPrecisionBits) {
  detail::require_lemma1_args(N, s);
  require_precision(bits);
  if (!(d + 3 + 2 * s > 0)) throw std::invalid_argument("lemma1: denominators must be positive (need 3 + d + 2s > 0)");
  if (!(tol.sign() > 0)) throw std::invalid_argument("lemma1: tol must be > 0");
  mpq_class base_q = d + 2 * s;
  const TailModel model = detail::lemma1_model(N, BigReal::from_rational(base_q, bits + 64));
  mpq_class partial = 0;
  long summed = 0;
  for (long K = 32;; K *= 2) {
    for (long k = summed + 1; k <= K; ++k) partial += detail::lemma1_term_exact(N, s, d, k);
    summed = K;
    if (auto tail = em_tail_within(model, K, tol, bits)) {
      BigReal value = BigReal::from_rational(partial, bits + 32) + tail->estimate;
      BigReal slop = ulp(value.rounded(bits)) * 4;
      return SeriesValue{value.rounded(bits), (tail->bound + slop).rounded(bits), K, BigReal(s, bits)};
    }
    if (2 * K > kMaxLemmaTerms) {
      throw ResourceLimitError("lemma1: tolerance unreachable", lemma1_sum_terms(N, s, d, K, 8, bits));
    }
  }
}

// Floating-point head for a real shift d.
inline SeriesValue lemma1_sum(long N, long s, const BigReal& d, const BigReal& tol,
                              precision_t bits = kDefaultPrecisionBits) {
  detail::require_lemma1_args(N, s);
  require_precision(bits);
  if (!(d + (3 + 2 * s) > 0)) throw std::invalid_argument("lemma1: denominators must be positive (need 3 + d + 2s > 0)");
  const BigReal base = d.rounded(bits + 64) + 2 * s;
  const TailModel model = detail::lemma1_model(N, base);
  auto term = [&](long k, precision_t work) {
    BigReal y = BigReal(2 * k, work) + base.rounded(work);
    BigReal prod(1, work);
    for (long j = 1; j <= N + 1; ++j) prod *= (y + j);
    return 1 / prod;
  };
  return lattice_sum(term, 1, model, tol, bits, kMaxLemmaTerms, BigReal(s, bits));
}

inline BigReal lemma1_target(long N, precision_t bits) {
  mpz_class denom = mpz_class(2 * N) << static_cast<unsigned long>(N);
  return BigReal::from_rational(mpq_class(1, denom), bits);
}

inline ExtrapolationConfig default_lemma1_config() { return ExtrapolationConfig::with_depth(6, {1, 1}); }

// Extrapolates s^N * sum over s_j = s0 * ratio^j toward 1/(2N 2^N).
inline LemmaReport lemma1_limit(long N, const mpq_class& d, const ExtrapolationConfig& config = default_lemma1_config(),
                                precision_t bits = kDefaultPrecisionBits, long s0 = 16) {
  config.validate();
  detail::require_lemma1_args(N, s0);
  std::vector<Sample> samples;
  long s = s0;
  for (int j = 0; j < config.samples; ++j) {
    BigReal sN = pow(BigReal(s, bits), N);
    BigReal tol = BigReal::power_of_two(-static_cast<long>(bits) - 8, bits) / sN;
    SeriesValue v = lemma1_sum(N, s, d, tol, bits);
    samples.push_back({BigReal(1, bits) / s, v.value * sN});
    s *= config.schedule_ratio;
  }
  auto est = richardson_extrapolate(samples, config, "lemma1");
  return make_lemma_report("lemma1", {{"N", std::to_string(N)}, {"d", d.get_str()}, {"s0", std::to_string(s0)}},
                           std::move(est), lemma1_target(N, bits));
}

// ---------------------------------------------------------------------------
// x (1 - x ln(1 + 1/x)) and x^2 (1 - (x + 1/2) ln(1 + 1/x))

namespace detail {
inline void require_lemma_x(const BigReal& x) {
  if (!(x.sign() > 0)) throw std::invalid_argument("x must be > 0");
  // The subtraction cancels about 2 log2(x) bits.
  long lg = std::max<long>(0, x.exponent2());
  if (x.precision() < 2 * lg + 96) {
    throw std::invalid_argument("x = " + x.to_string(6) + " needs at least " + std::to_string(2 * lg + 96) +
                                " bits of precision, got " + std::to_string(x.precision()));
  }
}
}  // namespace detail

inline BigReal lemma3_value(const BigReal& x) {
  detail::require_lemma_x(x);
  BigReal L = log1p(1 / x);
  return x * (1 - x * L);
}

inline BigReal lemma4_value(const BigReal& x) {
  detail::require_lemma_x(x);
  BigReal L = log1p(1 / x);
  BigReal half = ldexp(BigReal(1, x.precision()), -1);
  return x * x * (1 - (x + half) * L);
}

inline ExtrapolationConfig default_lemma34_config() { return ExtrapolationConfig::with_depth(8, {1, 1}); }

namespace detail {
template <class Fn>
std::vector<Sample> power_of_two_samples(Fn&& fn, const ExtrapolationConfig& config, precision_t bits,
                                         int first_exponent) {
  config.validate();
  require_precision(bits);
  if (first_exponent < 0) throw std::invalid_argument("first exponent must be >= 0");
  std::vector<Sample> samples;
  BigReal x = BigReal::power_of_two(first_exponent, bits);
  for (int j = 0; j < config.samples; ++j) {
    samples.push_back({1 / x, fn(x)});
    x *= config.schedule_ratio;
  }
  return samples;
}
}  // namespace detail

// Samples (1/x_j, value) over x_j = 2^first_exponent * ratio^j.
inline std::vector<Sample> lemma3_samples(const ExtrapolationConfig& config = default_lemma34_config(),
                                          precision_t bits = kDefaultPrecisionBits, int first_exponent = 4) {
  return detail::power_of_two_samples(lemma3_value, config, bits, first_exponent);
}

inline std::vector<Sample> lemma4_samples(const ExtrapolationConfig& config = default_lemma34_config(),
                                          precision_t bits = kDefaultPrecisionBits, int first_exponent = 4) {
  return detail::power_of_two_samples(lemma4_value, config, bits, first_exponent);
}

// Extrapolation over x_j = 2^(first_exponent + j) toward 1/2.
inline LemmaReport lemma3_limit(const ExtrapolationConfig& config = default_lemma34_config(),
                                precision_t bits = kDefaultPrecisionBits, int first_exponent = 4) {
  auto est = richardson_extrapolate(lemma3_samples(config, bits, first_exponent), config, "lemma3");
  return make_lemma_report("lemma3", {{"x0", "2^" + std::to_string(first_exponent)}}, std::move(est),
                           ldexp(BigReal(1, bits), -1));
}

// Extrapolation over x_j = 2^(first_exponent + j) toward -1/12.
inline LemmaReport lemma4_limit(const ExtrapolationConfig& config = default_lemma34_config(),
                                precision_t bits = kDefaultPrecisionBits, int first_exponent = 4) {
  auto est = richardson_extrapolate(lemma4_samples(config, bits, first_exponent), config, "lemma4");
  return make_lemma_report("lemma4", {{"x0", "2^" + std::to_string(first_exponent)}}, std::move(est),
                           BigReal(-1, bits) / 12);
}

// ---------------------------------------------------------------------------
// 2N sum_{k>N} ln((2k)^2 / ((2k-1)(2k+1)))

namespace detail {

// 2 ln y - ln(y-1) - ln(y+1), y = 2k; completely monotone.
inline TailModel tail_product_model(precision_t bits) {
  AtomCombination f({{AtomKind::Log, 0, 2}, {AtomKind::Log, 1, -1}, {AtomKind::Log, -1, -1}});
  return TailModel{{{std::move(f), 1}}, 2, BigReal(bits)};
}

inline BigReal tail_product_term(long k, precision_t work) {
  // -ln(1 - 1/(4k^2)), free of cancellation
  BigReal four_k2 = BigReal(k, work) * k * 4;
  return -log1p(-1 / four_k2);
}

}  // namespace detail

inline SeriesValue tail_product_half(long N, const BigReal& tol, precision_t bits = kDefaultPrecisionBits) {
  if (N < 1) throw std::invalid_argument("tail_product_half: N must be >= 1");
  if (!(tol.sign() > 0)) throw std::invalid_argument("tail_product_half: tol must be > 0");
  require_precision(bits);
  const BigReal scale(2 * N, bits);
  SeriesValue inner = lattice_sum(detail::tail_product_term, N + 1, detail::tail_product_model(bits), tol / scale,
                                  bits, kMaxLemmaTerms, BigReal(N, bits));
  return SeriesValue{inner.value * scale, inner.tail_bound * scale, inner.terms_used, BigReal(N, bits)};
}

inline SeriesValue tail_product_half_terms(long N, long count, int order, precision_t bits = kDefaultPrecisionBits) {
  if (N < 1) throw std::invalid_argument("tail_product_half: N must be >= 1");
  require_precision(bits);
  const BigReal scale(2 * N, bits);
  SeriesValue inner = lattice_sum_terms(detail::tail_product_term, N + 1, count, order,
                                        detail::tail_product_model(bits), bits, BigReal(N, bits));
  return SeriesValue{inner.value * scale, inner.tail_bound * scale, inner.terms_used, BigReal(N, bits)};
}

inline ExtrapolationConfig default_sublimit_config() { return ExtrapolationConfig::with_depth(6, {1, 1}); }

// Samples (1/N_j, tail value) over N_j = N0 * ratio^j.
inline std::vector<Sample> tail_product_half_samples(const ExtrapolationConfig& config = default_sublimit_config(),
                                                     precision_t bits = kDefaultPrecisionBits, long N0 = 16) {
  config.validate();
  if (N0 < 1) throw std::invalid_argument("tail_product_half: N0 must be >= 1");
  std::vector<Sample> samples;
  const BigReal tol = BigReal::power_of_two(-static_cast<long>(bits) - 8, bits);
  long N = N0;
  for (int j = 0; j < config.samples; ++j) {
    samples.push_back({BigReal(1, bits) / N, tail_product_half(N, tol, bits).value});
    N *= config.schedule_ratio;
  }
  return samples;
}

inline LemmaReport tail_product_half_limit(const ExtrapolationConfig& config = default_sublimit_config(),
                                           precision_t bits = kDefaultPrecisionBits, long N0 = 16) {
  auto est = richardson_extrapolate(tail_product_half_samples(config, bits, N0), config, "tail_product_half");
  return make_lemma_report("tail_product_half", {{"N0", std::to_string(N0)}}, std::move(est),
                           ldexp(BigReal(1, bits), -1));
}

// ---------------------------------------------------------------------------
// Shifted tail sums at a continuous parameter x >= 2, y = 2k + 2x.

namespace detail {

inline void require_sublimit_x(const BigReal& x) {
  if (!(x >= 2L)) throw std::invalid_argument("sublimit: x must be >= 2");
}

// ln(y-3) + 3 ln(y-1) - 3 ln(y-2) - ln y; its negative is completely monotone.
inline TailModel sublimit_n2_model(const BigReal& base) {
  AtomCombination g({{AtomKind::Log, 3, 1}, {AtomKind::Log, 1, 3}, {AtomKind::Log, 2, -3}, {AtomKind::Log, 0, -1}});
  return TailModel{{{std::move(g), -1}}, 2, base};
}

// (3y-5) ln(y-2) + (y-1) ln y - (y-2) ln(y-3) - (3y-4) ln(y-1)
//   = [ln(y-2) + ln(y-1) - ln y - ln(y-3)]                       (completely monotone)
//   + [phi(y) - 3 phi(y-1) + 3 phi(y-2) - phi(y-3)],  phi = t ln t  (negative of completely monotone)
inline TailModel sublimit_n1_model(const BigReal& base) {
  AtomCombination logs({{AtomKind::Log, 2, 1}, {AtomKind::Log, 1, 1}, {AtomKind::Log, 0, -1}, {AtomKind::Log, 3, -1}});
  AtomCombination xlogs(
      {{AtomKind::XLog, 0, 1}, {AtomKind::XLog, 1, -3}, {AtomKind::XLog, 2, 3}, {AtomKind::XLog, 3, -1}});
  return TailModel{{{std::move(logs), 1}, {std::move(xlogs), -1}}, 2, base};
}

inline precision_t log2_guard(const BigReal& y) { return 3 * std::max<long>(1, y.exponent2()) + 16; }

}  // namespace detail

// x^2 sum_{k>=1} ln((y-3)(y-1)^3 / ((y-2)^3 y)) with tail_bound <= tol.
inline SeriesValue sublimit_n2(const BigReal& x, const BigReal& tol, precision_t bits = kDefaultPrecisionBits) {
  detail::require_sublimit_x(x);
  require_precision(bits);
  const BigReal base = ldexp(x.rounded(bits + 64), 1);
  const BigReal x2 = x.rounded(bits) * x;
  auto term = [&](long k, precision_t work) {
    // (y-3)(y-1)^3 - (y-2)^3 y = 3 - 2y
    BigReal y = BigReal(2 * k, work) + base.rounded(work);
    BigReal y2 = y - 2;
    return log1p((3 - ldexp(y, 1)) / (y2 * y2 * y2 * y));
  };
  SeriesValue inner = lattice_sum(term, 1, detail::sublimit_n2_model(base), tol / x2, bits, kMaxLemmaTerms, x);
  return SeriesValue{inner.value * x2, inner.tail_bound * x2, inner.terms_used, x.rounded(bits)};
}

// x sum_{k>=1} [(3y-5) ln(y-2) + (y-1) ln y - (y-2) ln(y-3) - (3y-4) ln(y-1)] with tail_bound <= tol.
inline SeriesValue sublimit_n1(const BigReal& x, const BigReal& tol, precision_t bits = kDefaultPrecisionBits) {
  detail::require_sublimit_x(x);
  require_precision(bits);
  const BigReal base = ldexp(x.rounded(bits + 64), 1);
  const BigReal xr = x.rounded(bits);
  auto term = [&](long k, precision_t work) {
    BigReal y0 = BigReal(2 * k, bits + 64) + base;
    const precision_t w = work + detail::log2_guard(y0);
    BigReal y = y0.rounded(w);
    BigReal r = (3 * y - 5) * log(y - 2) + (y - 1) * log(y) - (y - 2) * log(y - 3) - (3 * y - 4) * log(y - 1);
    return r.rounded(work);
  };
  SeriesValue inner = lattice_sum(term, 1, detail::sublimit_n1_model(base), tol / xr, bits, kMaxLemmaTerms, x);
  return SeriesValue{inner.value * xr, inner.tail_bound * xr, inner.terms_used, xr};
}

inline SeriesValue sublimit_n2_terms(const BigReal& x, long count, int order, precision_t bits = kDefaultPrecisionBits) {
  detail::require_sublimit_x(x);
  const BigReal base = ldexp(x.rounded(bits + 64), 1);
  const BigReal x2 = x.rounded(bits) * x;
  auto model = detail::sublimit_n2_model(base);
  SeriesValue inner = lattice_sum_terms([&](long k, precision_t work) { return model.term(k, work + 64); }, 1, count,
                                        order, model, bits, x);
  return SeriesValue{inner.value * x2, inner.tail_bound * x2, inner.terms_used, x.rounded(bits)};
}

inline SeriesValue sublimit_n1_terms(const BigReal& x, long count, int order, precision_t bits = kDefaultPrecisionBits) {
  detail::require_sublimit_x(x);
  const BigReal base = ldexp(x.rounded(bits + 64), 1);
  const BigReal xr = x.rounded(bits);
  auto model = detail::sublimit_n1_model(base);
  SeriesValue inner = lattice_sum_terms(
      [&](long k, precision_t work) {
        return model.term(k, work + detail::log2_guard(model.y_at(k, 64))).rounded(work);
      },
      1, count, order, model, bits, x);
  return SeriesValue{inner.value * xr, inner.tail_bound * xr, inner.terms_used, xr};
}

namespace detail {
template <class Fn>
std::vector<Sample> sublimit_samples(Fn&& fn, const ExtrapolationConfig& config, precision_t bits, long x0) {
  config.validate();
  require_precision(bits);
  if (x0 < 2) throw std::invalid_argument("sublimit: x0 must be >= 2");
  std::vector<Sample> samples;
  const BigReal tol = BigReal::power_of_two(-static_cast<long>(bits) - 8, bits);
  long x = x0;
  for (int j = 0; j < config.samples; ++j) {
    BigReal xr(x, bits);
    samples.push_back({1 / xr, fn(xr, tol, bits).value});
    x *= config.schedule_ratio;
  }
  return samples;
}
}  // namespace detail

inline std::vector<Sample> sublimit_n2_samples(const ExtrapolationConfig& config = default_sublimit_config(),
                                               precision_t bits = kDefaultPrecisionBits, long x0 = 4) {
  return detail::sublimit_samples(
      [](const BigReal& x, const BigReal& tol, precision_t b) { return sublimit_n2(x, tol, b); }, config, bits, x0);
}

inline std::vector<Sample> sublimit_n1_samples(const ExtrapolationConfig& config = default_sublimit_config(),
                                               precision_t bits = kDefaultPrecisionBits, long x0 = 4) {
  return detail::sublimit_samples(
      [](const BigReal& x, const BigReal& tol, precision_t b) { return sublimit_n1(x, tol, b); }, config, bits, x0);
}

inline LemmaReport sublimit_n2_limit(const ExtrapolationConfig& config = default_sublimit_config(),
                                     precision_t bits = kDefaultPrecisionBits, long x0 = 4) {
  auto est = richardson_extrapolate(sublimit_n2_samples(config, bits, x0), config, "sublimit_n2");
  return make_lemma_report("sublimit_n2", {{"x0", std::to_string(x0)}}, std::move(est), BigReal(-1, bits) / 8);
}

inline LemmaReport sublimit_n1_limit(const ExtrapolationConfig& config = default_sublimit_config(),
                                     precision_t bits = kDefaultPrecisionBits, long x0 = 4) {
  auto est = richardson_extrapolate(sublimit_n1_samples(config, bits, x0), config, "sublimit_n1");
  return make_lemma_report("sublimit_n1", {{"x0", std::to_string(x0)}}, std::move(est), BigReal(1, bits) / 4);
}

// exp of the extrapolated sum of both tails; tends to e^(1/8).
inline LemmaReport sublimit_combined_limit(const ExtrapolationConfig& config = default_sublimit_config(),
                                           precision_t bits = kDefaultPrecisionBits, long x0 = 4) {
  auto samples = detail::sublimit_samples(
      [](const BigReal& x, const BigReal& tol, precision_t b) {
        SeriesValue a = sublimit_n2(x, tol, b);
        SeriesValue c = sublimit_n1(x, tol, b);
        return SeriesValue{a.value + c.value, a.tail_bound + c.tail_bound, a.terms_used + c.terms_used, x};
      },
      config, bits, x0);
  auto ln_est = richardson_extrapolate(samples, config, "sublimit_combined");
  BigReal value = exp(ln_est.value);
  ConstantEstimate est{value, value * ln_est.error_estimate, config, "sublimit_combined", {}};
  est.extras.emplace("ln_value", ln_est.value);
  return make_lemma_report("sublimit_combined", {{"x0", std::to_string(x0)}}, std::move(est),
                           exp(BigReal(1, bits) / 8));
}

}  // namespace hyperlim
