#pragma once

// Richardson extrapolation on a geometric parameter schedule.
//
// Samples are (h, f(h)) pairs with h > 0 strictly decreasing toward 0. The
// error model is f(h) = L + c1 u + c2 u^2 + ... with u = h^p, p the leading
// power. Neville's recurrence in u eliminates one power per tableau level,
// so a polynomial model of degree <= depth is reproduced exactly.

#include "hyperlim/big_real.hpp"

#include <cmath>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperlim {

// Positive rational exponent of the leading error term.
struct LeadingPower {
  long num = 1;
  long den = 1;

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }
  friend bool operator==(const LeadingPower&, const LeadingPower&) = default;
};

struct ExtrapolationConfig {
  int depth = 6;
  int schedule_ratio = 2;
  LeadingPower leading_power{};
  int samples = 7;

  // depth + 1 samples, the minimum the tableau needs.
  static ExtrapolationConfig with_depth(int depth, LeadingPower power = {}, int ratio = 2) {
    return ExtrapolationConfig{depth, ratio, power, depth + 1};
  }

  void validate() const {
    if (depth < 1) throw std::invalid_argument("extrapolation depth must be positive");
    if (schedule_ratio < 2) throw std::invalid_argument("schedule_ratio must be >= 2");
    if (leading_power.num <= 0 || leading_power.den <= 0) {
      throw std::invalid_argument("leading_power must be a positive rational");
    }
    if (samples < depth + 1) {
      throw std::invalid_argument("need samples >= depth + 1 (samples=" + std::to_string(samples) +
                                  ", depth=" + std::to_string(depth) + ")");
    }
  }

  friend bool operator==(const ExtrapolationConfig&, const ExtrapolationConfig&) = default;
};

struct Sample {
  BigReal parameter;
  BigReal value;
};

struct ConstantEstimate {
  BigReal value;
  // Heuristic: |T[n][depth] - T[n][depth-1]| at the finest sample.
  BigReal error_estimate;
  ExtrapolationConfig config;
  std::string label;
  // Secondary quantities (e.g. the logarithm of an exponentiated estimate).
  std::map<std::string, BigReal> extras;
};

// Full Neville tableau; row i holds levels 0..min(i, depth).
inline std::vector<std::vector<BigReal>> richardson_tableau(std::span<const Sample> samples,
                                                            const ExtrapolationConfig& config) {
  config.validate();
  if (samples.size() < static_cast<std::size_t>(config.depth) + 1) {
    throw std::invalid_argument("richardson: " + std::to_string(samples.size()) + " samples, depth " +
                                std::to_string(config.depth) + " needs at least " +
                                std::to_string(config.depth + 1));
  }
  precision_t bits = kMinPrecisionBits;
  for (const auto& s : samples) bits = std::max({bits, s.parameter.precision(), s.value.precision()});

  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].parameter.sign() <= 0) throw std::invalid_argument("richardson: parameters must be positive");
    if (i == 0) continue;
    if (!(samples[i].parameter < samples[i - 1].parameter)) {
      throw std::invalid_argument("richardson: parameters must be strictly decreasing");
    }
    double ratio = (samples[i - 1].parameter.rounded(bits) / samples[i].parameter).to_double();
    if (std::fabs(ratio - config.schedule_ratio) > 1e-9 * config.schedule_ratio) {
      throw std::invalid_argument("richardson: parameter ratio " + std::to_string(ratio) +
                                  " inconsistent with schedule_ratio " + std::to_string(config.schedule_ratio));
    }
  }

  const BigReal power = BigReal(config.leading_power.num, bits) / BigReal(config.leading_power.den, bits);
  std::vector<BigReal> u;
  u.reserve(samples.size());
  for (const auto& s : samples) u.push_back(pow(s.parameter.rounded(bits), power));

  std::vector<std::vector<BigReal>> table(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    table[i].push_back(samples[i].value.rounded(bits));
    const std::size_t levels = std::min<std::size_t>(i, static_cast<std::size_t>(config.depth));
    for (std::size_t k = 1; k <= levels; ++k) {
      const BigReal& fine = table[i][k - 1];
      const BigReal& coarse = table[i - 1][k - 1];
      BigReal denom = u[i - k] / u[i] - 1;
      table[i].push_back(fine + (fine - coarse) / denom);
    }
  }
  return table;
}

inline ConstantEstimate richardson_extrapolate(std::span<const Sample> samples, const ExtrapolationConfig& config,
                                               std::string label = {}) {
  auto table = richardson_tableau(samples, config);
  const auto& last = table.back();
  const auto d = static_cast<std::size_t>(config.depth);
  ConstantEstimate est{last[d], abs(last[d] - last[d - 1]), config, std::move(label), {}};
  return est;
}

// Observed order p of the error term from the last three samples:
// log(|f1 - f0| / |f2 - f1|) / log(h0 / h1).
inline double estimate_leading_power(std::span<const Sample> samples) {
  if (samples.size() < 3) throw std::invalid_argument("estimate_leading_power: need at least 3 samples");
  const std::size_t n = samples.size();
  BigReal d1 = abs(samples[n - 2].value - samples[n - 3].value);
  BigReal d2 = abs(samples[n - 1].value - samples[n - 2].value);
  if (d1.is_zero() || d2.is_zero()) throw std::invalid_argument("estimate_leading_power: flat sequence");
  BigReal ratio = samples[n - 3].parameter / samples[n - 2].parameter;
  return (log(d1 / d2) / log(ratio)).to_double();
}

}  // namespace hyperlim
