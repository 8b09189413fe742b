#pragma once

// Arbitrary-precision real numbers bound to an explicit working precision.
//
// BigReal is a value-semantic RAII wrapper over an MPFR number. Every
// arithmetic operation and every elementary function below is correctly
// rounded (round-to-nearest) at the precision of its result, which for
// binary operations is the larger of the two operand precisions.

#include <mpfr.h>
#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace hyperlim {

using precision_t = mpfr_prec_t;

inline constexpr precision_t kMinPrecisionBits = 64;
inline constexpr precision_t kDefaultPrecisionBits = 256;

inline void require_precision(precision_t bits) {
  if (bits < kMinPrecisionBits) {
    throw std::invalid_argument("precision_bits must be >= " + std::to_string(kMinPrecisionBits) +
                                ", got " + std::to_string(bits));
  }
}

class BigReal {
 public:
  explicit BigReal(precision_t bits = kDefaultPrecisionBits) {
    require_precision(bits);
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
  }

  BigReal(long value, precision_t bits) : BigReal(bits) { mpfr_set_si(v_, value, MPFR_RNDN); }

  static BigReal from_double(double value, precision_t bits) {
    BigReal r(bits);
    mpfr_set_d(r.v_, value, MPFR_RNDN);
    return r;
  }

  static BigReal from_string(std::string_view text, precision_t bits) {
    BigReal r(bits);
    std::string s(text);
    if (s.empty() || mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0) {
      throw std::invalid_argument("not a decimal number: '" + s + "'");
    }
    return r;
  }

  static BigReal from_integer(const mpz_class& value, precision_t bits) {
    BigReal r(bits);
    mpfr_set_z(r.v_, value.get_mpz_t(), MPFR_RNDN);
    return r;
  }

  static BigReal from_rational(const mpq_class& value, precision_t bits) {
    BigReal r(bits);
    mpfr_set_q(r.v_, value.get_mpq_t(), MPFR_RNDN);
    return r;
  }

  // 2^exponent, exact.
  static BigReal power_of_two(long exponent, precision_t bits) {
    BigReal r(bits);
    mpfr_set_ui_2exp(r.v_, 1, exponent, MPFR_RNDN);
    return r;
  }

  BigReal(const BigReal& other) {
    mpfr_init2(v_, other.precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }

  BigReal(BigReal&& other) noexcept {
    mpfr_init2(v_, kMinPrecisionBits);
    mpfr_swap(v_, other.v_);
  }

  BigReal& operator=(const BigReal& other) {
    if (this != &other) {
      mpfr_set_prec(v_, other.precision());
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }

  BigReal& operator=(BigReal&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }

  ~BigReal() { mpfr_clear(v_); }

  precision_t precision() const { return mpfr_get_prec(v_); }

  // Copy of this value rounded to `bits`.
  BigReal rounded(precision_t bits) const {
    BigReal r(bits);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  // Binary exponent e with 0.5 <= |x| / 2^e < 1; undefined for zero.
  long exponent2() const { return mpfr_get_exp(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  // Scientific notation with `significant` digits, e.g. "1.2020569031595942854e+00".
  std::string to_string(int significant = 20) const {
    if (significant < 1) significant = 1;
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", significant - 1, v_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
  }

  // Fixed notation with `decimals` digits after the point.
  std::string to_fixed(int decimals) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rf", decimals, v_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
  }

  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  BigReal operator-() const {
    BigReal r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  BigReal& operator+=(const BigReal& rhs) { return apply(rhs, mpfr_add); }
  BigReal& operator-=(const BigReal& rhs) { return apply(rhs, mpfr_sub); }
  BigReal& operator*=(const BigReal& rhs) { return apply(rhs, mpfr_mul); }
  BigReal& operator/=(const BigReal& rhs) { return apply(rhs, mpfr_div); }

  BigReal& operator+=(long rhs) { mpfr_add_si(v_, v_, rhs, MPFR_RNDN); return *this; }
  BigReal& operator-=(long rhs) { mpfr_sub_si(v_, v_, rhs, MPFR_RNDN); return *this; }
  BigReal& operator*=(long rhs) { mpfr_mul_si(v_, v_, rhs, MPFR_RNDN); return *this; }
  BigReal& operator/=(long rhs) { mpfr_div_si(v_, v_, rhs, MPFR_RNDN); return *this; }

  friend BigReal operator+(BigReal lhs, const BigReal& rhs) { return lhs += rhs; }
  friend BigReal operator-(BigReal lhs, const BigReal& rhs) { return lhs -= rhs; }
  friend BigReal operator*(BigReal lhs, const BigReal& rhs) { return lhs *= rhs; }
  friend BigReal operator/(BigReal lhs, const BigReal& rhs) { return lhs /= rhs; }

  friend BigReal operator+(BigReal lhs, long rhs) { return lhs += rhs; }
  friend BigReal operator-(BigReal lhs, long rhs) { return lhs -= rhs; }
  friend BigReal operator*(BigReal lhs, long rhs) { return lhs *= rhs; }
  friend BigReal operator/(BigReal lhs, long rhs) { return lhs /= rhs; }
  friend BigReal operator+(long lhs, BigReal rhs) { return rhs += lhs; }
  friend BigReal operator*(long lhs, BigReal rhs) { return rhs *= lhs; }
  friend BigReal operator-(long lhs, const BigReal& rhs) {
    BigReal r(rhs.precision());
    mpfr_si_sub(r.v_, lhs, rhs.v_, MPFR_RNDN);
    return r;
  }
  friend BigReal operator/(long lhs, const BigReal& rhs) {
    BigReal r(rhs.precision());
    mpfr_si_div(r.v_, lhs, rhs.v_, MPFR_RNDN);
    return r;
  }

  friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) {
    if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
    int c = mpfr_cmp(a.v_, b.v_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  friend bool operator==(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
  friend std::partial_ordering operator<=>(const BigReal& a, long b) {
    if (mpfr_nan_p(a.v_)) return std::partial_ordering::unordered;
    int c = mpfr_cmp_si(a.v_, b);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }

 private:
  using BinaryFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

  BigReal& apply(const BigReal& rhs, BinaryFn fn) {
    if (rhs.precision() > precision()) {
      mpfr_prec_round(v_, rhs.precision(), MPFR_RNDN);
    }
    fn(v_, v_, rhs.v_, MPFR_RNDN);
    return *this;
  }

  mpfr_t v_;
};

namespace detail {
using UnaryFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

inline BigReal unary(const BigReal& x, UnaryFn fn) {
  BigReal r(x.precision());
  fn(r.get(), x.get(), MPFR_RNDN);
  return r;
}
}  // namespace detail

inline BigReal log(const BigReal& x) { return detail::unary(x, mpfr_log); }
inline BigReal log1p(const BigReal& x) { return detail::unary(x, mpfr_log1p); }
inline BigReal exp(const BigReal& x) { return detail::unary(x, mpfr_exp); }
inline BigReal expm1(const BigReal& x) { return detail::unary(x, mpfr_expm1); }
inline BigReal sqrt(const BigReal& x) { return detail::unary(x, mpfr_sqrt); }
inline BigReal abs(const BigReal& x) { return detail::unary(x, mpfr_abs); }
inline BigReal log10(const BigReal& x) { return detail::unary(x, mpfr_log10); }

inline BigReal pow(const BigReal& base, const BigReal& exponent) {
  BigReal r(std::max(base.precision(), exponent.precision()));
  mpfr_pow(r.get(), base.get(), exponent.get(), MPFR_RNDN);
  return r;
}

inline BigReal pow(const BigReal& base, long exponent) {
  BigReal r(base.precision());
  mpfr_pow_si(r.get(), base.get(), exponent, MPFR_RNDN);
  return r;
}

// x * 2^e, exact.
inline BigReal ldexp(const BigReal& x, long e) {
  BigReal r(x.precision());
  mpfr_mul_2si(r.get(), x.get(), e, MPFR_RNDN);
  return r;
}

// ln(n) for a positive integer n.
inline BigReal log_of(unsigned long n, precision_t bits) {
  BigReal r(bits);
  mpfr_log_ui(r.get(), n, MPFR_RNDN);
  return r;
}

inline BigReal max(const BigReal& a, const BigReal& b) { return (a < b) ? b : a; }
inline BigReal min(const BigReal& a, const BigReal& b) { return (b < a) ? b : a; }

// One unit in the last place of x at its own precision (for x != 0), or the
// smallest representable step 2^-precision for x == 0.
inline BigReal ulp(const BigReal& x) {
  if (x.is_zero()) return BigReal::power_of_two(-static_cast<long>(x.precision()), x.precision());
  return BigReal::power_of_two(x.exponent2() - static_cast<long>(x.precision()), x.precision());
}

// Number of leading decimal digits on which a and b agree in absolute terms:
// floor(-log10|a - b|), clamped to [0, cap]. Identical values give cap.
inline int matched_digits(const BigReal& a, const BigReal& b, int cap) {
  BigReal diff = abs(a - b);
  if (diff.is_zero()) return cap;
  double d = -log10(diff).to_double();
  if (!(d > 0)) return 0;
  int digits = static_cast<int>(std::floor(d));
  return digits > cap ? cap : digits;
}

// Decimal digits carried by a precision.
inline int decimal_digits(precision_t bits) {
  return static_cast<int>(std::floor(static_cast<double>(bits) * 0.30102999566398120));
}

}  // namespace hyperlim
