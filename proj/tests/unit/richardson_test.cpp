#include "hyperlim/richardson.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace hyperlim;

namespace {

std::vector<Sample> sample(auto&& f, BigReal h0, int count, int ratio = 2) {
  std::vector<Sample> out;
  for (int j = 0; j < count; ++j) {
    out.push_back({h0, f(h0)});
    h0 /= ratio;
  }
  return out;
}

}  // namespace

TEST(Richardson, ReproducesLinearModel) {
  auto s = sample([](const BigReal& h) { return 1 + h; }, BigReal(1, 128), 3);
  auto est = richardson_extrapolate(s, ExtrapolationConfig::with_depth(2));
  EXPECT_EQ(est.value, BigReal(1, 128));
  EXPECT_LE(est.error_estimate, BigReal::power_of_two(-50, 128));
}

TEST(Richardson, ReproducesPolynomialsOfDegreeDepth) {
  std::mt19937_64 rng(20261016);
  std::uniform_int_distribution<long> coeff(-1000, 1000);
  for (int trial = 0; trial < 50; ++trial) {
    const int depth = 1 + trial % 8;
    const long power = 1 + trial % 3;
    const int ratio = 2 + trial % 2;
    std::vector<long> c(depth + 1);
    for (auto& v : c) v = coeff(rng);
    auto poly = [&](const BigReal& h) {
      BigReal u = pow(h, power), acc(h.precision()), hp(1, h.precision());
      for (long v : c) {
        acc += hp * v;
        hp *= u;
      }
      return acc;
    };
    auto s = sample(poly, BigReal(1, 256), depth + 1, ratio);
    auto est = richardson_extrapolate(s, ExtrapolationConfig::with_depth(depth, {power, 1}, ratio));
    EXPECT_LE(abs(est.value - c[0]), BigReal::power_of_two(-200, 256)) << "trial " << trial;
  }
}

TEST(Richardson, Lemma3Samples) {
  auto f = [](const BigReal& h) {
    BigReal x = 1 / h;
    return x * (1 - x * log1p(h));
  };
  auto s = sample(f, BigReal::power_of_two(-4, 256), 9);
  auto est = richardson_extrapolate(s, ExtrapolationConfig::with_depth(8));
  EXPECT_LE(abs(est.value - BigReal::power_of_two(-1, 256)), BigReal::from_string("1e-10", 256));
}

TEST(Richardson, ErrorEstimateIsLastTableauDifference) {
  auto s = sample([](const BigReal& h) { return exp(h); }, BigReal(1, 128), 5);
  auto config = ExtrapolationConfig::with_depth(4);
  auto table = richardson_tableau(s, config);
  auto est = richardson_extrapolate(s, config);
  EXPECT_EQ(est.value, table.back()[4]);
  EXPECT_EQ(est.error_estimate, abs(table.back()[4] - table.back()[3]));
  EXPECT_GE(est.error_estimate.sign(), 0);
}

TEST(Richardson, RejectsBadInput) {
  auto one = sample([](const BigReal& h) { return h; }, BigReal(1, 128), 1);
  EXPECT_THROW(richardson_extrapolate(one, ExtrapolationConfig::with_depth(1)), std::invalid_argument);

  auto s = sample([](const BigReal& h) { return h; }, BigReal(1, 128), 4);
  std::swap(s[1], s[2]);
  EXPECT_THROW(richardson_extrapolate(s, ExtrapolationConfig::with_depth(3)), std::invalid_argument);

  auto tripled = sample([](const BigReal& h) { return h; }, BigReal(1, 128), 4, 3);
  EXPECT_THROW(richardson_extrapolate(tripled, ExtrapolationConfig::with_depth(3)), std::invalid_argument);

  ExtrapolationConfig bad{4, 2, {1, 1}, 3};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  EXPECT_THROW(ExtrapolationConfig::with_depth(2, {1, 1}, 1).validate(), std::invalid_argument);
  EXPECT_THROW(ExtrapolationConfig::with_depth(2, {0, 1}).validate(), std::invalid_argument);
}

TEST(Richardson, EstimatesLeadingPower) {
  auto s = sample([](const BigReal& h) { return 3 + h * h * 5 + pow(h, 3L); }, BigReal::power_of_two(-6, 128), 5);
  EXPECT_NEAR(estimate_leading_power(s), 2.0, 0.05);
}

TEST(Richardson, FractionalLeadingPower) {
  auto f = [](const BigReal& h) { return 2 + sqrt(h) - h * 3; };
  auto s = sample(f, BigReal::power_of_two(-2, 256), 5);
  auto est = richardson_extrapolate(s, ExtrapolationConfig::with_depth(4, {1, 2}));
  EXPECT_LE(abs(est.value - 2L), BigReal::power_of_two(-200, 256));
}
