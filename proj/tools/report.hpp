#pragma once

// Verification reports: one row per check, serialized as JSON with every
// number written as a decimal string.

#include "hyperlim/big_real.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <optional>
#include <string>
#include <vector>

namespace hyperlim::cli {

inline constexpr const char* kToolVersion = "1.0.0";

struct Check {
  std::string id;
  std::string target;
  std::string computed;
  int matched_digits = 0;
  std::string tolerance;
  bool passed = false;
  std::string notes;
};

struct VerificationReport {
  std::string tool_version = kToolVersion;
  std::string timestamp;
  long precision_bits = 0;
  std::vector<Check> checks;

  bool all_passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }
};

// Decimal rendering with at least `digits` places after the point.
inline std::string decimal(const BigReal& v, int digits) { return v.to_fixed(digits); }

// passed iff |computed - target| <= tolerance. Decimal texts carry
// matched_digits + 4 places (at least 20), capped at the working precision.
inline Check make_check(std::string id, const BigReal& target, const BigReal& computed, const BigReal& tolerance,
                        std::string notes = {}) {
  const precision_t bits = std::min(target.precision(), computed.precision());
  const int cap = decimal_digits(bits);
  Check c;
  c.id = std::move(id);
  c.matched_digits = matched_digits(computed, target, cap);
  const int places = std::min(std::max(c.matched_digits + 4, 20), cap + 4);
  c.target = decimal(target, places);
  c.computed = decimal(computed, places);
  c.tolerance = tolerance.to_string(6);
  c.passed = abs(computed - target) <= tolerance;
  c.notes = std::move(notes);
  return c;
}

// ISO-8601 UTC. SOURCE_DATE_EPOCH, when set, pins the clock so reports are
// reproducible byte for byte.
inline std::string report_timestamp(const std::optional<std::string>& override_text = std::nullopt) {
  if (override_text) return *override_text;
  std::time_t t;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch && *epoch) {
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  } else {
    t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline nlohmann::ordered_json to_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["tool_version"] = r.tool_version;
  j["timestamp"] = r.timestamp;
  j["precision_bits"] = r.precision_bits;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json row;
    row["id"] = c.id;
    row["target"] = c.target;
    row["computed"] = c.computed;
    row["matched_digits"] = c.matched_digits;
    row["tolerance"] = c.tolerance;
    row["passed"] = c.passed;
    row["notes"] = c.notes;
    j["checks"].push_back(std::move(row));
  }
  return j;
}

}  // namespace hyperlim::cli
