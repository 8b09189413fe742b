#pragma once

// Exact positive rationals stored as prime -> exponent maps.
//
// Exponents are arbitrary-size integers, so values such as 2^(N^3) or
// hyperfactorials are represented without ever materializing the integer.

#include "hyperlim/big_real.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hyperlim {

namespace primes {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// Deterministic Miller-Rabin for all 64-bit inputs.
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline u64 gcd(u64 a, u64 b) {
  while (b != 0) a = std::exchange(b, a % b);
  return a;
}

// Pollard's rho (Brent variant); n must be odd and composite.
inline u64 find_factor(u64 n) {
  for (u64 c = 1;; ++c) {
    auto f = [&](u64 x) { return (mul_mod(x, x, n) + c) % n; };
    u64 x = 2, y = 2, d = 1;
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

inline void factor_into(u64 n, std::map<u64, long>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  u64 d = find_factor(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

// Prime factorization of n >= 1 as prime -> multiplicity.
inline std::map<u64, long> factorize(u64 n) {
  if (n == 0) throw std::invalid_argument("factorize: zero has no factorization");
  std::map<u64, long> out;
  for (u64 p = 2; p < 1000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  if (n > 1) factor_into(n, out);
  return out;
}

}  // namespace primes

class FactoredRational {
 public:
  using Exponents = std::map<std::uint64_t, mpz_class>;

  FactoredRational() = default;

  static FactoredRational from_integer(std::uint64_t n) {
    FactoredRational r;
    for (const auto& [p, e] : primes::factorize(n)) r.exponents_[p] = e;
    return r;
  }

  static FactoredRational from_fraction(std::uint64_t num, std::uint64_t den) {
    FactoredRational r = from_integer(num);
    r /= from_integer(den);
    return r;
  }

  // base^exponent with base >= 1.
  static FactoredRational power(std::uint64_t base, const mpz_class& exponent) {
    FactoredRational r;
    r.multiply_power(base, exponent);
    return r;
  }

  const Exponents& exponents() const { return exponents_; }
  bool is_one() const { return exponents_.empty(); }

  // *this *= base^exponent.
  FactoredRational& multiply_power(std::uint64_t base, const mpz_class& exponent) {
    if (base == 0) throw std::invalid_argument("FactoredRational: zero base");
    if (exponent == 0) return *this;
    for (const auto& [p, e] : primes::factorize(base)) add_exponent(p, exponent * e);
    return *this;
  }

  FactoredRational& multiply_power(std::uint64_t base, long exponent) {
    return multiply_power(base, mpz_class(exponent));
  }

  FactoredRational pow(const mpz_class& exponent) const {
    FactoredRational r;
    if (exponent == 0) return r;
    for (const auto& [p, e] : exponents_) r.exponents_[p] = e * exponent;
    return r;
  }

  FactoredRational inverse() const { return pow(mpz_class(-1)); }

  FactoredRational& operator*=(const FactoredRational& rhs) {
    for (const auto& [p, e] : rhs.exponents_) add_exponent(p, e);
    return *this;
  }

  FactoredRational& operator/=(const FactoredRational& rhs) {
    for (const auto& [p, e] : rhs.exponents_) add_exponent(p, -e);
    return *this;
  }

  friend FactoredRational operator*(FactoredRational a, const FactoredRational& b) { return a *= b; }
  friend FactoredRational operator/(FactoredRational a, const FactoredRational& b) { return a /= b; }
  friend bool operator==(const FactoredRational& a, const FactoredRational& b) { return a.exponents_ == b.exponents_; }

  // Numerator and denominator as exact integers. Only sensible for moderate sizes.
  std::pair<mpz_class, mpz_class> materialize() const {
    mpz_class num = 1, den = 1;
    for (const auto& [p, e] : exponents_) {
      mpz_class pp;
      mpz_class mag = abs(e);
      if (!mag.fits_ulong_p()) throw std::overflow_error("FactoredRational: exponent too large to materialize");
      mpz_ui_pow_ui(pp.get_mpz_t(), p, mag.get_ui());
      (e > 0 ? num : den) *= pp;
    }
    return {num, den};
  }

  mpq_class to_rational() const {
    auto [num, den] = materialize();
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }

  // Estimated size in bits of the larger of numerator and denominator.
  double bit_size() const {
    double num = 0, den = 0;
    for (const auto& [p, e] : exponents_) {
      double w = e.get_d() * std::log2(static_cast<double>(p));
      (w > 0 ? num : den) += std::fabs(w);
    }
    return std::max(num, den);
  }

  // Natural logarithm. Moderate values are materialized and take a single
  // logarithm of num/den; larger ones fall back to sum e_p ln p at guarded
  // precision.
  BigReal log(precision_t bits) const {
    require_precision(bits);
    if (exponents_.empty()) return BigReal(bits);
    if (bit_size() <= kMaterializeBits) {
      auto [num, den] = materialize();
      const precision_t work = bits + 16;
      BigReal ratio = BigReal::from_integer(num, work) / BigReal::from_integer(den, work);
      return hyperlim::log(ratio).rounded(bits);
    }
    const precision_t work = bits + 64 + static_cast<precision_t>(std::log2(bit_size() + 2));
    BigReal sum(work);
    for (const auto& [p, e] : exponents_) sum += log_of(p, work) * BigReal::from_integer(e, work);
    return sum.rounded(bits);
  }

  std::string to_string() const {
    if (exponents_.empty()) return "1";
    std::string out;
    for (const auto& [p, e] : exponents_) {
      if (!out.empty()) out += " * ";
      out += std::to_string(p) + "^" + e.get_str();
    }
    return out;
  }

 private:
  static constexpr double kMaterializeBits = 1 << 20;

  void add_exponent(std::uint64_t p, const mpz_class& e) {
    auto it = exponents_.find(p);
    if (it == exponents_.end()) {
      if (e != 0) exponents_.emplace(p, e);
      return;
    }
    it->second += e;
    if (it->second == 0) exponents_.erase(it);
  }

  Exponents exponents_;
};

// n! via Legendre's formula.
inline FactoredRational factorial_exact(std::uint64_t n) {
  FactoredRational r;
  std::vector<bool> composite(n + 1, false);
  for (std::uint64_t p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    for (std::uint64_t q = p * p; q <= n; q += p) composite[q] = true;
    std::uint64_t e = 0;
    for (std::uint64_t pk = p; pk <= n; pk *= p) {
      e += n / pk;
      if (pk > n / p) break;
    }
    r.multiply_power(p, mpz_class(static_cast<unsigned long>(e)));
  }
  return r;
}

inline FactoredRational binomial_exact(std::uint64_t n, std::uint64_t k) {
  if (k > n) throw std::invalid_argument("binomial_exact: k > n");
  return factorial_exact(n) / (factorial_exact(k) * factorial_exact(n - k));
}

}  // namespace hyperlim
