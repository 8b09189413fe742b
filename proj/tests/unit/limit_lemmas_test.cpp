#include "hyperlim/limit_lemmas.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace hyperlim;

namespace {
const BigReal kTight = BigReal::power_of_two(-264, 256);
}

TEST(Lemma1, ClosedFormAtUnitShift) {
  // N=1, s=1, d=0: sum_k 1/((2k+3)(2k+4)) = ln 2 - 7/12.
  SeriesValue v = lemma1_sum(1, 1, mpq_class(0), BigReal::from_string("1e-60", 256));
  BigReal exact = log_of(2, 256) - BigReal(7, 256) / 12;
  EXPECT_LE(abs(v.value - exact), BigReal::from_string("1e-60", 256));
  EXPECT_LE(v.tail_bound, BigReal::from_string("1e-60", 256));
}

TEST(Lemma1, AgreesWithLongSummationBracket) {
  // Brute force up to K plus the bracket 1/(2(2K+6)) <= tail <= 1/(2(2K+3)).
  const long K = 1'000'000;
  BigReal brute(128);
  for (long k = K; k >= 1; --k) brute += BigReal(1, 128) / ((BigReal(2 * k + 3, 128)) * (2 * k + 4));
  BigReal lo = brute + BigReal(1, 128) / (2 * (2 * K + 6));
  BigReal hi = brute + BigReal(1, 128) / (2 * (2 * K + 3));
  SeriesValue v = lemma1_sum(1, 1, mpq_class(0), BigReal::from_string("1e-20", 256));
  EXPECT_GE(v.value, lo);
  EXPECT_LE(v.value, hi);
}

TEST(Lemma1, RealShiftMatchesRationalShift) {
  const BigReal tol = BigReal::from_string("1e-50", 256);
  for (long N : {1L, 3L}) {
    SeriesValue q = lemma1_sum(N, 4, mpq_class(1, 2), tol);
    SeriesValue r = lemma1_sum(N, 4, BigReal::from_string("0.5", 256), tol);
    EXPECT_LE(abs(q.value - r.value), q.tail_bound + r.tail_bound) << N;
  }
}

TEST(Lemma1, Validation) {
  EXPECT_THROW(lemma1_sum(0, 1, mpq_class(0), BigReal(1, 256)), std::invalid_argument);
  EXPECT_THROW(lemma1_sum(1, 0, mpq_class(-3), BigReal(1, 256)), std::invalid_argument);
  EXPECT_THROW(lemma1_sum(1, 1, mpq_class(0), BigReal(0, 256)), std::invalid_argument);
  EXPECT_NO_THROW(lemma1_sum(1, 0, mpq_class(-5, 2), BigReal(1, 256)));
}

TEST(Lemma1, LimitTargets) {
  auto r1 = lemma1_limit(1, mpq_class(0));
  EXPECT_EQ(r1.target, BigReal(1, 256) / 4);
  EXPECT_GE(r1.matched_digits, 8);
  auto r2 = lemma1_limit(2, mpq_class(0));
  EXPECT_EQ(r2.target, BigReal(1, 256) / 16);
  EXPECT_GE(r2.matched_digits, 8);
  auto r3 = lemma1_limit(3, mpq_class(0));
  EXPECT_EQ(r3.target, BigReal(1, 256) / 48);
  EXPECT_GE(r3.matched_digits, 8);
  auto shifted = lemma1_limit(1, mpq_class(3, 2));
  EXPECT_GE(shifted.matched_digits, 8);
}

TEST(Lemma1, ShiftInvariance) {
  for (long N : {1L, 2L}) {
    auto base = lemma1_limit(N, mpq_class(0));
    for (mpq_class d : {mpq_class(-1, 2), mpq_class(3, 2)}) {
      auto other = lemma1_limit(N, d);
      BigReal combined = max(base.computed.error_estimate + other.computed.error_estimate,
                             BigReal::from_string("1e-12", 256));
      EXPECT_LE(abs(base.computed.value - other.computed.value), combined) << N << " " << d.get_str();
    }
  }
}

TEST(Lemma1, MeasuredLeadingPower) {
  std::vector<Sample> samples;
  for (long s = 64; s <= 1024; s *= 2) {
    BigReal sN = BigReal(s, 256) * s;
    samples.push_back({BigReal(1, 256) / s, lemma1_sum(2, s, mpq_class(0), kTight / sN).value * sN});
  }
  EXPECT_NEAR(estimate_leading_power(samples), 1.0, 0.05);
}

TEST(Lemma34, DirectValues) {
  BigReal one(1, 256);
  EXPECT_LE(abs(lemma3_value(one) - (1 - log_of(2, 256))), ulp(one) * 4);
  EXPECT_EQ(lemma3_value(one).to_string(7), "3.068528e-01");
  EXPECT_THROW(lemma3_value(BigReal(0, 256)), std::invalid_argument);
  EXPECT_THROW(lemma3_value(BigReal::power_of_two(100, 256)), std::invalid_argument);
  EXPECT_THROW(lemma4_value(BigReal::power_of_two(100, 256)), std::invalid_argument);
  EXPECT_NO_THROW(lemma4_value(BigReal::power_of_two(79, 256)));
  EXPECT_THROW(lemma4_value(BigReal::power_of_two(80, 256)), std::invalid_argument);
}

TEST(Lemma34, CancellationGuard) {
  for (long e : {4L, 10L, 20L, 40L}) {
    BigReal x = BigReal::power_of_two(e, 256);
    BigReal lo = lemma3_value(x);
    BigReal hi = lemma3_value(x.rounded(320));
    EXPECT_LE(abs(lo - hi), BigReal::power_of_two(-(256 - 2 * e - 32), 320)) << e;
  }
}

TEST(Lemma34, Limits) {
  auto r3 = lemma3_limit();
  EXPECT_GE(r3.matched_digits, 10);
  EXPECT_EQ(r3.target, BigReal(1, 256) / 2);
  auto r4 = lemma4_limit();
  EXPECT_GE(r4.matched_digits, 10);
  EXPECT_LE(abs(r4.computed.value + BigReal(1, 256) / 12), BigReal::from_string("1e-10", 256));
}

TEST(TailProduct, Values) {
  SeriesValue v1 = tail_product_half(1, kTight);
  EXPECT_GT(v1.value.sign(), 0);
  EXPECT_LT(v1.value, 1L);
  SeriesValue big = tail_product_half(10'000, kTight);
  EXPECT_LE(abs(big.value - BigReal(1, 256) / 2), BigReal::from_string("1e-4", 256));
  EXPECT_THROW(tail_product_half(0, kTight), std::invalid_argument);
}

TEST(TailProduct, Limit) {
  auto r = tail_product_half_limit();
  EXPECT_LE(abs(r.computed.value - r.target), BigReal::from_string("1e-8", 256));
}

TEST(Sublimits, Limits) {
  auto n2 = sublimit_n2_limit();
  EXPECT_LE(abs(n2.computed.value + BigReal(1, 256) / 8), BigReal::from_string("1e-6", 256));
  auto n1 = sublimit_n1_limit();
  EXPECT_LE(abs(n1.computed.value - BigReal(1, 256) / 4), BigReal::from_string("1e-6", 256));
  auto both = sublimit_combined_limit();
  EXPECT_LE(abs(both.computed.value - exp(BigReal(1, 256) / 8)), BigReal::from_string("1e-5", 256));
}

TEST(Sublimits, MeasuredLeadingPowers) {
  const auto config = ExtrapolationConfig::with_depth(5);
  auto n2 = sublimit_n2_samples(config, 256, 16);
  auto n1 = sublimit_n1_samples(config, 256, 16);
  auto tail = tail_product_half_samples(config, 256, 16);
  auto l3 = lemma3_samples(config);
  EXPECT_NEAR(estimate_leading_power(tail), 1.0, 0.05);
  EXPECT_NEAR(estimate_leading_power(l3), 1.0, 0.05);
  EXPECT_NEAR(estimate_leading_power(n2), 1.0, 0.05);
  EXPECT_NEAR(estimate_leading_power(n1), 1.0, 0.05);
}

TEST(Sublimits, Validation) {
  EXPECT_THROW(sublimit_n2(BigReal::from_string("1.5", 256), kTight), std::invalid_argument);
  EXPECT_THROW(sublimit_n1(BigReal(1, 256), kTight), std::invalid_argument);
}

TEST(Sublimits, StableSummandsMatchAtomForm) {
  const BigReal x = BigReal::from_string("3.25", 256);
  const BigReal tol = BigReal::from_string("1e-70", 256);
  SeriesValue a = sublimit_n2(x, tol);
  SeriesValue b = sublimit_n2_terms(x, 400, 30);
  EXPECT_LE(abs(a.value - b.value), a.tail_bound + b.tail_bound);
  SeriesValue c = sublimit_n1(x, tol);
  SeriesValue d = sublimit_n1_terms(x, 400, 30);
  EXPECT_LE(abs(c.value - d.value), c.tail_bound + d.tail_bound);
}

// Doubling the explicit term count never moves a value by more than its tail bound.
TEST(TailBounds, DoublingIsSound) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<long> count(4, 200);
  std::uniform_int_distribution<int> order(0, 12);
  std::uniform_int_distribution<long> small(1, 6);
  for (int trial = 0; trial < 40; ++trial) {
    const long n = count(rng);
    const int m = order(rng);
    SeriesValue v{BigReal(256), BigReal(256), 0, BigReal(256)}, w = v;
    switch (trial % 4) {
      case 0: {
        long N = small(rng), s = small(rng);
        v = lemma1_sum_terms(N, s, mpq_class(1, 3), n, m);
        w = lemma1_sum_terms(N, s, mpq_class(1, 3), 2 * n, m);
        break;
      }
      case 1: {
        long N = small(rng);
        v = tail_product_half_terms(N, n, m);
        w = tail_product_half_terms(N, 2 * n, m);
        break;
      }
      case 2: {
        BigReal x(2 + small(rng), 256);
        v = sublimit_n2_terms(x, n, m);
        w = sublimit_n2_terms(x, 2 * n, m);
        break;
      }
      case 3: {
        BigReal x(2 + small(rng), 256);
        v = sublimit_n1_terms(x, n, m);
        w = sublimit_n1_terms(x, 2 * n, m);
        break;
      }
    }
    EXPECT_LE(abs(v.value - w.value), v.tail_bound) << "trial " << trial;
  }
}
