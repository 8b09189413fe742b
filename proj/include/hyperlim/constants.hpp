#pragma once

// Generalized hyperfactorials H_p(N) = prod_{k=1}^{N} k^(k^p) and the
// constants in their large-N asymptotics:
//
//   H_1(N) ~ A N^(N^2/2 + N/2 + 1/12) e^(-N^2/4)                  (Glaisher-Kinkelin)
//   H_2(N) ~ B N^(N^3/3 + N^2/2 + N/6) e^(-N^3/9 + N/12)           (Bendersky-Adamchik)
//
// ln A and ln B are extracted by Richardson extrapolation of
// ln H_p(N) minus the main terms over N = N0, 2 N0, 4 N0, ...

#include "hyperlim/big_real.hpp"
#include "hyperlim/factored_rational.hpp"
#include "hyperlim/richardson.hpp"
#include "hyperlim/series_value.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperlim {

inline constexpr long kMaxExactHyperfactorialN = 10'000;

struct HyperfactorialSample {
  int p = 1;
  long N = 1;
  BigReal ln_H;
  BigReal normalized;
};

namespace detail {

inline void require_hyper_order(int p) {
  if (p != 1 && p != 2) throw std::invalid_argument("hyperfactorial order p must be 1 or 2, got " + std::to_string(p));
}

// Guard bits covering the cancellation between ln H_p(N) and its main terms.
inline precision_t hyper_work_bits(precision_t bits, long N) {
  long lg = 1;
  while ((1L << lg) < N && lg < 62) ++lg;
  return bits + 32 + 3 * lg;
}

// Main asymptotic terms of ln H_p(N).
inline BigReal hyper_main_terms(int p, long N, precision_t work) {
  const mpz_class n = N;
  const BigReal lnN = log_of(static_cast<unsigned long>(N), work);
  if (p == 1) {
    mpq_class log_coeff = mpq_class(n * n, 2) + mpq_class(n, 2) + mpq_class(1, 12);
    mpq_class linear = -mpq_class(n * n, 4);
    log_coeff.canonicalize();
    linear.canonicalize();
    return BigReal::from_rational(log_coeff, work) * lnN + BigReal::from_rational(linear, work);
  }
  mpq_class log_coeff = mpq_class(n * n * n, 3) + mpq_class(n * n, 2) + mpq_class(n, 6);
  mpq_class linear = -mpq_class(n * n * n, 9) + mpq_class(n, 12);
  log_coeff.canonicalize();
  linear.canonicalize();
  return BigReal::from_rational(log_coeff, work) * lnN + BigReal::from_rational(linear, work);
}

}  // namespace detail

// ln H_p(N) at each requested N in one sequential sweep (ascending k). Values
// are identical to separate ln_hyperfactorial calls at the same precision.
inline std::vector<BigReal> ln_hyperfactorial_sweep(int p, std::vector<long> Ns, precision_t bits) {
  detail::require_hyper_order(p);
  require_precision(bits);
  if (Ns.empty()) return {};
  for (long N : Ns) {
    if (N < 1) throw std::invalid_argument("ln_hyperfactorial: N must be >= 1");
  }
  std::vector<long> order = Ns;
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());

  std::vector<BigReal> at_sorted;
  BigReal sum(bits);
  std::size_t next = 0;
  for (long k = 1; next < order.size(); ++k) {
    if (k > 1) {
      BigReal term = log_of(static_cast<unsigned long>(k), bits) * (p == 1 ? k : k * k);
      sum += term;
    }
    while (next < order.size() && order[next] == k) {
      at_sorted.push_back(sum);
      ++next;
    }
  }
  std::vector<BigReal> out;
  out.reserve(Ns.size());
  for (long N : Ns) {
    auto pos = std::lower_bound(order.begin(), order.end(), N) - order.begin();
    out.push_back(at_sorted[static_cast<std::size_t>(pos)]);
  }
  return out;
}

// sum_{k=1}^{N} k^p ln k.
inline BigReal ln_hyperfactorial(int p, long N, precision_t bits = kDefaultPrecisionBits) {
  return ln_hyperfactorial_sweep(p, {N}, bits).front();
}

inline HyperfactorialSample hyperfactorial_sample(int p, long N, precision_t bits = kDefaultPrecisionBits) {
  detail::require_hyper_order(p);
  require_precision(bits);
  if (N < 2) throw std::invalid_argument("normalized_remainder: N must be >= 2");
  const precision_t work = detail::hyper_work_bits(bits, N);
  BigReal ln_H = ln_hyperfactorial(p, N, work);
  BigReal normalized = ln_H - detail::hyper_main_terms(p, N, work);
  return {p, N, ln_H.rounded(bits), normalized.rounded(bits)};
}

// ln H_p(N) minus its main asymptotic terms; tends to ln A (p = 1) or ln B (p = 2).
inline BigReal normalized_remainder(int p, long N, precision_t bits = kDefaultPrecisionBits) {
  return hyperfactorial_sample(p, N, bits).normalized;
}

// Samples (1/N_j, normalized remainder) for N_j = N0 * ratio^j.
inline std::vector<Sample> hyperfactorial_samples(int p, const ExtrapolationConfig& config, long N0,
                                                  precision_t bits) {
  detail::require_hyper_order(p);
  config.validate();
  require_precision(bits);
  if (N0 < 2) throw std::invalid_argument("N0 must be >= 2");
  std::vector<long> Ns;
  long N = N0;
  for (int j = 0; j < config.samples; ++j) {
    Ns.push_back(N);
    if (N > (1L << 40) / config.schedule_ratio) throw ResourceLimitError("hyperfactorial schedule overflows");
    N *= config.schedule_ratio;
  }
  const precision_t work = detail::hyper_work_bits(bits, Ns.back());
  auto ln_H = ln_hyperfactorial_sweep(p, Ns, work);
  std::vector<Sample> samples;
  for (std::size_t j = 0; j < Ns.size(); ++j) {
    BigReal h = BigReal(1, work) / Ns[j];
    samples.push_back({h, ln_H[j] - detail::hyper_main_terms(p, Ns[j], work)});
  }
  return samples;
}

// ln H_1 has an expansion in even powers of 1/N.
inline ExtrapolationConfig default_glaisher_config() { return ExtrapolationConfig::with_depth(8, {2, 1}); }
// ln H_2 has odd powers of 1/N; the observed leading order is 1.
inline ExtrapolationConfig default_bendersky_config() { return ExtrapolationConfig::with_depth(8, {1, 1}); }

inline constexpr long kDefaultHyperN0 = 64;

namespace detail {
inline ConstantEstimate exponentiated_constant(int p, const ExtrapolationConfig& config, precision_t bits, long N0,
                                               std::string label) {
  auto samples = hyperfactorial_samples(p, config, N0, bits);
  ConstantEstimate ln_est = richardson_extrapolate(samples, config, label);
  BigReal ln_value = ln_est.value.rounded(bits);
  BigReal ln_err = ln_est.error_estimate.rounded(bits);
  BigReal value = exp(ln_value);
  ConstantEstimate est{value, value * ln_err, config, std::move(label), {}};
  est.extras.emplace("ln_value", ln_value);
  est.extras.emplace("ln_error_estimate", ln_err);
  return est;
}
}  // namespace detail

// Glaisher-Kinkelin constant A; ln A is in extras["ln_value"].
inline ConstantEstimate glaisher_A(const ExtrapolationConfig& config = default_glaisher_config(),
                                   precision_t bits = kDefaultPrecisionBits, long N0 = kDefaultHyperN0) {
  return detail::exponentiated_constant(1, config, bits, N0, "glaisher_A");
}

// Bendersky-Adamchik constant B; ln B is in extras["ln_value"].
inline ConstantEstimate bendersky_B(const ExtrapolationConfig& config = default_bendersky_config(),
                                    precision_t bits = kDefaultPrecisionBits, long N0 = kDefaultHyperN0) {
  return detail::exponentiated_constant(2, config, bits, N0, "bendersky_B");
}

// Exact H_p(N) = prod k^(k^p) as prime exponents.
inline FactoredRational hyperfactorial_exact(int p, long N) {
  detail::require_hyper_order(p);
  if (N < 1) throw std::invalid_argument("hyperfactorial_exact: N must be >= 1");
  if (N > kMaxExactHyperfactorialN) {
    throw ResourceLimitError("hyperfactorial_exact: N = " + std::to_string(N) + " exceeds cap " +
                             std::to_string(kMaxExactHyperfactorialN));
  }
  FactoredRational r;
  for (long k = 2; k <= N; ++k) {
    mpz_class e = k;
    if (p == 2) e *= k;
    r.multiply_power(static_cast<std::uint64_t>(k), e);
  }
  return r;
}

}  // namespace hyperlim
