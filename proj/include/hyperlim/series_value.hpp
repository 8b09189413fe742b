#pragma once

#include "hyperlim/big_real.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace hyperlim {

// A truncated infinite sum together with a rigorous bound on what was left out:
// the exact sum lies in [value - tail_bound, value + tail_bound].
struct SeriesValue {
  BigReal value;
  BigReal tail_bound;
  long terms_used = 0;
  // The summation parameter (alpha, x, N, ...) the sum was evaluated at.
  BigReal parameter;
};

// Raised when a computation would exceed a configured work cap. Carries the
// best partial result when one exists.
class ResourceLimitError : public std::runtime_error {
 public:
  explicit ResourceLimitError(const std::string& what, std::optional<SeriesValue> partial = std::nullopt)
      : std::runtime_error(what), partial_(std::move(partial)) {}

  const std::optional<SeriesValue>& partial() const { return partial_; }

 private:
  std::optional<SeriesValue> partial_;
};

}  // namespace hyperlim
