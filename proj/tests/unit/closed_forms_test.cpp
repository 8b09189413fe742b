#include "hyperlim/closed_forms.hpp"
#include "hyperlim/constants.hpp"
#include "hyperlim/series_limits.hpp"

#include <gtest/gtest.h>

using namespace hyperlim;

namespace {

// Reference digits from an independent arbitrary-precision library
// (Glaisher's constant and exp(-zeta'(-2))), used only to pin frozen values.
const char* kA = "1.282427129100622636875342568869791727767688927325";
const char* kB = "1.0309167521973921141933130964669422906331943064035";

// e_{M,i} for i = 2, 4, 6, evaluated from the integral representation
// int_0^inf (1 - e^-t) e^{-st} / (t (1 + e^-t)^M) dt by numerical quadrature.
const char* kFrozen[4][3] = {
    {"0.693147180559945309417232121458", "0.405465108108164381978013115464", "0.287682072451780927439219005993"},
    {"0.451582705289454864726195229894882", "0.241564475270490444691036891563294",
     "0.163900632837673937286976223901054"},
    {"0.304637389184681269975598932203791739", "0.146945316104773594750596297691090404",
     "0.0946191591657168499404405938722040203"},
    {"0.213139199408752895461760713298083436529", "0.0914981897759283745138382189057083028856",
     "0.0554471263288452202367580787853821012714"},
};

BigReal A() { return BigReal::from_string(kA, 256); }
BigReal B() { return BigReal::from_string(kB, 256); }

BigReal closed(int M, long index) { return closed_form({M, index, A(), B()}, 256); }

}  // namespace

TEST(ClosedForms, ZeroCase) {
  EXPECT_EQ(e0_closed(1), log_of(2, 256));
  BigReal big = e0_closed(1'000'000);
  EXPECT_EQ(big.to_string(11), "9.9999950000e-07");
  EXPECT_THROW(e0_closed(0), std::invalid_argument);
}

TEST(ClosedForms, WallisCase) {
  BigReal pi = const_pi(256);
  EXPECT_LE(abs(e1_closed(2) - log(pi / 2)), ulp(pi) * 4);
  EXPECT_LE(abs(e1_closed(4) - log(4 / pi)), ulp(pi) * 4);
  EXPECT_LE(abs(e1_closed(6) - log(pi * 3 / 8)), ulp(pi) * 4);
  EXPECT_THROW(e1_closed(3), std::invalid_argument);
  EXPECT_THROW(e1_closed(0), std::invalid_argument);
}

TEST(ClosedForms, GlaisherCase) {
  // ln(A^6 / (2^{1/6} sqrt(pi) e^{1/2}))
  BigReal pi = const_pi(256);
  BigReal expected = log(A()) * 6 - log_of(2, 256) / 6 - log(pi) / 2 - BigReal(1, 256) / 2;
  EXPECT_LE(abs(e2_closed(2, A()) - expected), ulp(expected) * 8);
  EXPECT_THROW(e2_closed(2, BigReal(0, 256)), std::invalid_argument);
  EXPECT_THROW(closed_form({2, 2, std::nullopt, std::nullopt}), std::invalid_argument);
}

TEST(ClosedForms, BenderskyCase) {
  EXPECT_LE(abs(e3_closed(2, A(), B()) - log(B()) * 7), BigReal::power_of_two(-250, 256));
  // ln(A^6 / (2^{1/6} sqrt(pi) e^{1/2} B^7))
  BigReal pi = const_pi(256);
  BigReal expected = log(A()) * 6 - log_of(2, 256) / 6 - log(pi) / 2 - BigReal(1, 256) / 2 - log(B()) * 7;
  EXPECT_LE(abs(e3_closed(4, A(), B()) - expected), ulp(expected) * 8);
  EXPECT_THROW(closed_form({3, 2, A(), std::nullopt}), std::invalid_argument);
  EXPECT_THROW(closed_form({4, 2, A(), B()}), std::invalid_argument);
}

TEST(ClosedForms, FrozenValues) {
  for (int M = 0; M <= 3; ++M) {
    for (int i = 0; i < 3; ++i) {
      BigReal ref = BigReal::from_string(kFrozen[M][i], 256);
      BigReal got = closed(M, 2 * (i + 1));
      EXPECT_LE(abs(got - ref), BigReal::from_string("1e-29", 256)) << M << " " << 2 * (i + 1);
    }
  }
}

TEST(ClosedForms, RecursionConsistency) {
  for (int M = 1; M <= 3; ++M) {
    for (long i = 2; i <= 40; i += 2) {
      BigReal lhs = closed(M, i) + closed(M, i + 2);
      BigReal rhs = closed(M - 1, i);
      EXPECT_LE(abs(lhs - rhs), ulp(rhs) * 32) << "M=" << M << " index=" << i;
    }
  }
}

TEST(ClosedForms, PositiveAndDecreasing) {
  for (int M = 0; M <= 3; ++M) {
    BigReal previous(1000, 256);
    for (long i = 2; i <= 40; i += 2) {
      BigReal v = closed(M, i);
      EXPECT_GT(v.sign(), 0) << M << " " << i;
      EXPECT_LT(v, previous) << M << " " << i;
      previous = v;
    }
  }
}

TEST(ClosedForms, AgreeWithSeriesLimits) {
  const BigReal A_ref = BigReal::from_string(kA, 256), B_ref = BigReal::from_string(kB, 256);
  const BigReal A_est = glaisher_A().value;
  const BigReal B_est = bendersky_B().value;
  for (int M = 0; M <= 3; ++M) {
    for (long index : {2L, 4L, 6L}) {
      auto est = e_limit(EIndex::from_index(M, index));
      BigReal cf = closed_form({M, index, A_ref, B_ref});
      EXPECT_LE(abs(est.value - cf), est.error_estimate * 3) << M << " " << index;
      // Same comparison with A and B from their own extrapolations.
      BigReal cf_est = closed_form({M, index, A_est, B_est});
      EXPECT_LE(abs(est.value - cf_est), est.error_estimate * 3 + BigReal::from_string("1e-28", 256))
          << M << " " << index;
    }
  }
}

TEST(ClosedForms, PrecisionRefinement) {
  BigReal lo = e3_closed(10, A().rounded(128), B().rounded(128), 128);
  BigReal hi = e3_closed(10, A(), B(), 256);
  EXPECT_LE(abs(lo - hi), BigReal::power_of_two(-110, 256));
}
