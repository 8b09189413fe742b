#include "hyperlim/exact_identities.hpp"
#include "hyperlim/reference.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace hyperlim;

TEST(Wallis, SmallPartialProducts) {
  EXPECT_EQ(wallis_partial(1).to_rational(), mpq_class(4, 3));
  EXPECT_EQ(wallis_partial(2).to_rational(), mpq_class(64, 45));
  EXPECT_THROW(wallis_partial(0), std::invalid_argument);
  EXPECT_THROW(wallis_partial(kMaxWallisN + 1), ResourceLimitError);
}

TEST(Wallis, ApproachesHalfPiFromBelow) {
  BigReal half_pi = ldexp(const_pi(256), -1);
  BigReal ln_w = wallis_partial(10'000).log(256);
  BigReal w = exp(ln_w);
  EXPECT_LT(w, half_pi);
  EXPECT_GT(w, half_pi - BigReal::from_string("1e-4", 256));
  EXPECT_LT(wallis_partial(100).log(256), ln_w);
}

TEST(Identities, SmallCasesByHand) {
  // N=1: 2 * (3/2)^-1 = 4/3
  auto p32 = prop32_partial_sides(1);
  EXPECT_EQ(p32.lhs.to_rational(), mpq_class(4, 3));
  // N=1: empty inner product, both sides 1/2
  auto inner = prop33_inner_sides(1);
  EXPECT_EQ(inner.lhs.to_rational(), mpq_class(1, 2));
  EXPECT_EQ(inner.rhs.to_rational(), mpq_class(1, 2));
  // N=1: 32/27 = 2 (3/4) (8/9)^2
  auto middle = prop34_middle_sides(1);
  EXPECT_EQ(middle.lhs.to_rational(), mpq_class(32, 27));
  EXPECT_EQ(middle.rhs.to_rational(), mpq_class(2) * mpq_class(3, 4) * mpq_class(64, 81));
}

TEST(Identities, HoldOverAcceptanceRanges) {
  struct Range {
    std::string id;
    long lo, hi;
  };
  for (const Range& r : std::vector<Range>{{"prop32_partial", 1, 40},
                                          {"prop33_inner", 1, 40},
                                          {"prop33_hyper", 1, 40},
                                          {"prop34_double", 2, 30},
                                          {"prop34_middle", 1, 100},
                                          {"prop34_rightmost", 1, 30},
                                          {"prop34_first", 1, 20}}) {
    for (long N = r.lo; N <= r.hi; ++N) {
      IdentityResult res = check_identity(r.id, N);
      EXPECT_TRUE(res.holds) << r.id << " N=" << N << " witness " << res.lhs_div_rhs.to_string();
      EXPECT_TRUE(res.lhs_div_rhs.is_one());
      EXPECT_EQ(res.identity_id, r.id);
      EXPECT_EQ(res.N, N);
    }
  }
}

TEST(Identities, NamedEntryPointsAgreeWithRegistry) {
  EXPECT_TRUE(check_prop32_partial(5).holds);
  EXPECT_TRUE(check_prop33_inner(2).holds);
  EXPECT_TRUE(check_prop33_hyper(7).holds);
  EXPECT_TRUE(check_prop34_double(5).holds);
  EXPECT_TRUE(check_prop34_middle(3).holds);
  EXPECT_TRUE(check_prop34_rightmost(5).holds);
  EXPECT_TRUE(check_prop34_first(4).holds);
  EXPECT_EQ(identity_registry().size(), 7u);
  EXPECT_EQ(find_identity("nope"), nullptr);
  EXPECT_THROW(check_identity("nope", 1), std::invalid_argument);
}

TEST(Identities, UpperRangesStillHold) {
  EXPECT_TRUE(check_prop33_inner(200).holds);
  EXPECT_TRUE(check_prop34_double(120).holds);
  EXPECT_TRUE(check_prop34_middle(10'000).holds);
  EXPECT_TRUE(check_prop34_first(60).holds);
}

TEST(Identities, CapsAndPreconditions) {
  EXPECT_THROW(check_prop33_inner(201), ResourceLimitError);
  EXPECT_THROW(check_prop33_hyper(201), ResourceLimitError);
  EXPECT_THROW(check_prop34_double(121), ResourceLimitError);
  EXPECT_THROW(check_prop34_double(1), std::invalid_argument);
  EXPECT_THROW(check_prop34_middle(10'001), ResourceLimitError);
  EXPECT_THROW(check_prop34_rightmost(121), ResourceLimitError);
  EXPECT_THROW(check_prop34_first(61), ResourceLimitError);
  EXPECT_THROW(check_prop32_partial(0), std::invalid_argument);
}

TEST(Identities, FailureCarriesWitness) {
  // Perturbing one side by 3/2 must be reported with exactly that witness.
  IdentitySides sides = prop34_middle_sides(4);
  sides.lhs *= FactoredRational::from_fraction(3, 2);
  IdentityResult r = detail::compare("perturbed", 4, sides);
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.lhs_div_rhs, FactoredRational::from_fraction(3, 2));
}

// sum_p e_p ln p, accumulated directly from the exponent map.
BigReal log_by_primes(const FactoredRational& r, precision_t bits) {
  const precision_t work = bits + 96;
  BigReal sum(work);
  for (const auto& [p, e] : r.exponents()) sum += log_of(p, work) * BigReal::from_integer(e, work);
  return sum.rounded(bits);
}

// The left side through FactoredRational::log (a single logarithm of the
// materialized fraction when it is small enough), the right side prime by prime.
TEST(Identities, LogConsistency) {
  for (const auto& entry : identity_registry()) {
    for (long N : {1L, 2L, 3L, 7L, 20L, 50L}) {
      if (N < entry.min_N || N > entry.max_N) continue;
      IdentitySides sides = entry.sides(N);
      BigReal l = sides.lhs.log(256), r = log_by_primes(sides.rhs, 256);
      BigReal scale = max(abs(l), abs(r));
      BigReal tolerance = scale.is_zero() ? BigReal::power_of_two(-250, 256) : ulp(scale) * 64;
      EXPECT_LE(abs(l - r), tolerance) << entry.id << " N=" << N;
    }
  }
}
