#pragma once

// Finite-product identities behind the closed forms, checked exactly for
// concrete N. Both sides are built as FactoredRational values and compared
// by their prime-exponent maps. Asymptotic steps are not checked here.
//
// H(n) = prod k^k and H2(n) = prod k^(k^2) are the hyperfactorials of
// constants.hpp; C(n, k) is the binomial coefficient.

#include "hyperlim/constants.hpp"
#include "hyperlim/factored_rational.hpp"
#include "hyperlim/series_value.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hyperlim {

struct IdentityResult {
  std::string identity_id;
  long N = 0;
  bool holds = false;
  FactoredRational lhs_div_rhs;
};

// Both sides of an identity at one N.
struct IdentitySides {
  FactoredRational lhs, rhs;
};

inline constexpr long kMaxWallisN = 100'000;

namespace detail {

inline void require_identity_range(const char* id, long N, long lo, long hi) {
  if (N < lo) throw std::invalid_argument(std::string(id) + ": N must be >= " + std::to_string(lo));
  if (N > hi) {
    throw ResourceLimitError(std::string(id) + ": N = " + std::to_string(N) + " exceeds cap " + std::to_string(hi));
  }
}

inline std::uint64_t u(long v) { return static_cast<std::uint64_t>(v); }

inline mpz_class z(long v) { return mpz_class(v); }

inline IdentityResult compare(std::string id, long N, const IdentitySides& sides) {
  FactoredRational q = sides.lhs / sides.rhs;
  bool holds = q.is_one();
  return {std::move(id), N, holds, std::move(q)};
}

}  // namespace detail

// prod_{j=1}^{N} (2j)^2 / ((2j-1)(2j+1)); increases toward pi/2.
inline FactoredRational wallis_partial(long N) {
  detail::require_identity_range("wallis_partial", N, 1, kMaxWallisN);
  FactoredRational r;
  for (long j = 1; j <= N; ++j) {
    r.multiply_power(detail::u(2 * j), 2).multiply_power(detail::u(2 * j - 1), -1).multiply_power(detail::u(2 * j + 1), -1);
  }
  return r;
}

// prod_{j=1}^{2N} (1 + 1/j)^((-1)^(j+1))  =  prod_{j=1}^{N} (2j)^2 / ((2j-1)(2j+1))
inline IdentitySides prop32_partial_sides(long N) {
  detail::require_identity_range("prop32_partial", N, 1, kMaxWallisN / 2);
  FactoredRational lhs;
  for (long j = 1; j <= 2 * N; ++j) {
    const long sign = (j % 2 == 1) ? 1 : -1;
    lhs.multiply_power(detail::u(j + 1), sign).multiply_power(detail::u(j), -sign);
  }
  return {std::move(lhs), wallis_partial(N)};
}

// 2^-N prod_{j=0}^{N-1} prod_{k=1}^{j} (2k-1)(2k+1)^3 / ((2k)^3 (2k+2))
//   = prod_{k=1}^{N} (2k/(2k-1))^(2k-2N-1) (2k/(2k+1))^(2k-2N)
inline IdentitySides prop33_inner_sides(long N) {
  using detail::u;
  detail::require_identity_range("prop33_inner", N, 1, 200);
  FactoredRational lhs = FactoredRational::power(2, detail::z(-N));
  for (long j = 0; j <= N - 1; ++j) {
    for (long k = 1; k <= j; ++k) {
      lhs.multiply_power(u(2 * k - 1), 1).multiply_power(u(2 * k + 1), 3);
      lhs.multiply_power(u(2 * k), -3).multiply_power(u(2 * k + 2), -1);
    }
  }
  FactoredRational rhs;
  for (long k = 1; k <= N; ++k) {
    const long a = 2 * k - 2 * N - 1, b = 2 * k - 2 * N;
    rhs.multiply_power(u(2 * k), a + b).multiply_power(u(2 * k - 1), -a).multiply_power(u(2 * k + 1), -b);
  }
  return {std::move(lhs), std::move(rhs)};
}

// prod_{k=1}^{N} (2k/(2k-1))^(2k-1) (2k/(2k+1))^(2k)
//   = 2^(4N^2+4N+1) C(2N,N) (4N+2) H(N)^6 H(N+1)^2 / (H(2N) H(2N+2))
inline IdentitySides prop33_hyper_sides(long N) {
  using detail::u;
  using detail::z;
  detail::require_identity_range("prop33_hyper", N, 1, 200);
  FactoredRational lhs;
  for (long k = 1; k <= N; ++k) {
    lhs.multiply_power(u(2 * k), 4 * k - 1).multiply_power(u(2 * k - 1), -(2 * k - 1)).multiply_power(u(2 * k + 1), -2 * k);
  }
  FactoredRational rhs = FactoredRational::power(2, z(4 * N * N + 4 * N + 1));
  rhs *= binomial_exact(u(2 * N), u(N));
  rhs.multiply_power(u(4 * N + 2), 1);
  rhs *= hyperfactorial_exact(1, N).pow(6) * hyperfactorial_exact(1, N + 1).pow(2);
  rhs /= hyperfactorial_exact(1, 2 * N) * hyperfactorial_exact(1, 2 * N + 2);
  return {std::move(lhs), std::move(rhs)};
}

// prod_{j=0}^{N-1} prod_{k=1}^{j} (2k-1)^(2k-1-2j) (2k+1)^(6k-1-6j) / ((2k)^(6k-2-6j) (2k+2)^(2k-2j))
//   = prod_{k=1}^{N-1} (2k)^(3k^2-(6N-1)k+3N^2-N) (2k+2)^(k^2-(2N-1)k+N^2-N)
//                      / ((2k-1)^(k^2-2Nk+N^2) (2k+1)^(3k^2-(6N-2)k+3N^2-2N))
inline IdentitySides prop34_double_sides(long N) {
  using detail::u;
  using detail::z;
  detail::require_identity_range("prop34_double", N, 2, 120);
  FactoredRational lhs;
  for (long j = 0; j <= N - 1; ++j) {
    for (long k = 1; k <= j; ++k) {
      lhs.multiply_power(u(2 * k - 1), 2 * k - 1 - 2 * j).multiply_power(u(2 * k + 1), 6 * k - 1 - 6 * j);
      lhs.multiply_power(u(2 * k), -(6 * k - 2 - 6 * j)).multiply_power(u(2 * k + 2), -(2 * k - 2 * j));
    }
  }
  FactoredRational rhs;
  for (long k = 1; k <= N - 1; ++k) {
    rhs.multiply_power(u(2 * k), z(3 * k * k - (6 * N - 1) * k + 3 * N * N - N));
    rhs.multiply_power(u(2 * k + 2), z(k * k - (2 * N - 1) * k + N * N - N));
    rhs.multiply_power(u(2 * k - 1), z(-(k * k - 2 * N * k + N * N)));
    rhs.multiply_power(u(2 * k + 1), z(-(3 * k * k - (6 * N - 2) * k + 3 * N * N - 2 * N)));
  }
  return {std::move(lhs), std::move(rhs)};
}

// prod_{k=1}^{N} (2k)^3 (2k+2) / ((2k-1)(2k+1)^3)
//   = 2 (2N+1)/(2N+2) (prod_{k=1}^{N} 2k(2k+2)/(2k+1)^2)^2
inline IdentitySides prop34_middle_sides(long N) {
  using detail::u;
  detail::require_identity_range("prop34_middle", N, 1, 10'000);
  FactoredRational lhs, inner;
  for (long k = 1; k <= N; ++k) {
    lhs.multiply_power(u(2 * k), 3).multiply_power(u(2 * k + 2), 1);
    lhs.multiply_power(u(2 * k - 1), -1).multiply_power(u(2 * k + 1), -3);
    inner.multiply_power(u(2 * k), 1).multiply_power(u(2 * k + 2), 1).multiply_power(u(2 * k + 1), -2);
  }
  FactoredRational rhs = FactoredRational::from_fraction(u(2 * (2 * N + 1)), u(2 * N + 2));
  rhs *= inner.pow(2);
  return {std::move(lhs), std::move(rhs)};
}

// prod_{k=1}^{N} (2k-1)^(2k) (2k+1)^(6k+2) / ((2k)^(6k+1) (2k+2)^(2k+1))
//   = prod_{k=1}^{N} (2k+1)^2/(2k(2k+2)) / (2^(8N^2+12N+3) (4N+2) C(2N+2,N+1)^2)
//     * H(2N) H(2N+2)^3 / (H(N)^8 H(N+1)^8)
inline IdentitySides prop34_rightmost_sides(long N) {
  using detail::u;
  using detail::z;
  detail::require_identity_range("prop34_rightmost", N, 1, 120);
  FactoredRational lhs, wallis_inverse;
  for (long k = 1; k <= N; ++k) {
    lhs.multiply_power(u(2 * k - 1), 2 * k).multiply_power(u(2 * k + 1), 6 * k + 2);
    lhs.multiply_power(u(2 * k), -(6 * k + 1)).multiply_power(u(2 * k + 2), -(2 * k + 1));
    wallis_inverse.multiply_power(u(2 * k + 1), 2).multiply_power(u(2 * k), -1).multiply_power(u(2 * k + 2), -1);
  }
  FactoredRational rhs = wallis_inverse;
  rhs /= FactoredRational::power(2, z(8 * N * N + 12 * N + 3));
  rhs.multiply_power(u(4 * N + 2), -1);
  rhs /= binomial_exact(u(2 * N + 2), u(N + 1)).pow(2);
  rhs *= hyperfactorial_exact(1, 2 * N) * hyperfactorial_exact(1, 2 * N + 2).pow(3);
  rhs /= hyperfactorial_exact(1, N).pow(8) * hyperfactorial_exact(1, N + 1).pow(8);
  return {std::move(lhs), std::move(rhs)};
}

// prod_{k=1}^{N} (2k)^(3k^2+k) (2k+2)^(k^2+k) / ((2k-1)^(k^2) (2k+1)^(3k^2+2k))
//   = 2^(8N^3/3 + 8N^2 + 22N/3 + 7/4) (4N+2)^(1/4)
//     * H(N)^2 H(2N+2)^(1/2) H2(N)^4 H2(N+1)^4 / (H(N+1)^2 H(2N)^(1/2) H2(2N)^(1/4) H2(2N+2)^(3/4)),
// compared after raising both sides to the 12th power.
inline IdentitySides prop34_first_sides(long N) {
  using detail::u;
  using detail::z;
  detail::require_identity_range("prop34_first", N, 1, 60);
  FactoredRational base;
  for (long k = 1; k <= N; ++k) {
    base.multiply_power(u(2 * k), z(3 * k * k + k)).multiply_power(u(2 * k + 2), z(k * k + k));
    base.multiply_power(u(2 * k - 1), z(-k * k)).multiply_power(u(2 * k + 1), z(-(3 * k * k + 2 * k)));
  }
  FactoredRational lhs = base.pow(12);

  // 12 (8N^3/3 + 8N^2 + 22N/3 + 7/4) = 32N^3 + 96N^2 + 88N + 21
  const mpz_class n = N;
  mpq_class two_exponent = mpq_class(8 * n * n * n, 3) + 8 * n * n + mpq_class(22 * n, 3) + mpq_class(7, 4);
  two_exponent.canonicalize();
  mpq_class scaled = two_exponent * 12;
  scaled.canonicalize();
  if (scaled.get_den() != 1) throw std::logic_error("prop34_first: 12th power of the 2-exponent is not integral");

  FactoredRational rhs = FactoredRational::power(2, scaled.get_num());
  rhs.multiply_power(u(4 * N + 2), 3);
  rhs *= hyperfactorial_exact(1, N).pow(24) * hyperfactorial_exact(1, 2 * N + 2).pow(6);
  rhs *= hyperfactorial_exact(2, N).pow(48) * hyperfactorial_exact(2, N + 1).pow(48);
  rhs /= hyperfactorial_exact(1, N + 1).pow(24) * hyperfactorial_exact(1, 2 * N).pow(6);
  rhs /= hyperfactorial_exact(2, 2 * N).pow(3) * hyperfactorial_exact(2, 2 * N + 2).pow(9);
  return {std::move(lhs), std::move(rhs)};
}

inline IdentityResult check_prop32_partial(long N) { return detail::compare("prop32_partial", N, prop32_partial_sides(N)); }
inline IdentityResult check_prop33_inner(long N) { return detail::compare("prop33_inner", N, prop33_inner_sides(N)); }
inline IdentityResult check_prop33_hyper(long N) { return detail::compare("prop33_hyper", N, prop33_hyper_sides(N)); }
inline IdentityResult check_prop34_double(long N) { return detail::compare("prop34_double", N, prop34_double_sides(N)); }
inline IdentityResult check_prop34_middle(long N) { return detail::compare("prop34_middle", N, prop34_middle_sides(N)); }
inline IdentityResult check_prop34_rightmost(long N) {
  return detail::compare("prop34_rightmost", N, prop34_rightmost_sides(N));
}
inline IdentityResult check_prop34_first(long N) { return detail::compare("prop34_first", N, prop34_first_sides(N)); }

struct IdentityEntry {
  std::string id;
  long min_N;
  long max_N;
  std::string statement;
  std::function<IdentitySides(long)> sides;
};

inline const std::vector<IdentityEntry>& identity_registry() {
  static const std::vector<IdentityEntry> registry = {
      {"prop32_partial", 1, kMaxWallisN / 2,
       "prod_{j<=2N} (1+1/j)^((-1)^(j+1)) = prod_{j<=N} (2j)^2/((2j-1)(2j+1))", prop32_partial_sides},
      {"prop33_inner", 1, 200, "2^-N prod_{j<N} prod_{k<=j} (2k-1)(2k+1)^3/((2k)^3(2k+2)) as a single product",
       prop33_inner_sides},
      {"prop33_hyper", 1, 200, "prod (2k/(2k-1))^(2k-1) (2k/(2k+1))^(2k) via H(N), H(N+1), H(2N), H(2N+2)",
       prop33_hyper_sides},
      {"prop34_double", 2, 120, "double product over j, k collapsed to a single product over k < N",
       prop34_double_sides},
      {"prop34_middle", 1, 10'000, "prod (2k)^3(2k+2)/((2k-1)(2k+1)^3) = 2 (2N+1)/(2N+2) (prod 2k(2k+2)/(2k+1)^2)^2",
       prop34_middle_sides},
      {"prop34_rightmost", 1, 120, "prod (2k-1)^(2k)(2k+1)^(6k+2)/((2k)^(6k+1)(2k+2)^(2k+1)) via H and C(2N+2,N+1)",
       prop34_rightmost_sides},
      {"prop34_first", 1, 60, "prod (2k)^(3k^2+k)(2k+2)^(k^2+k)/((2k-1)^(k^2)(2k+1)^(3k^2+2k)) via H and H2, 12th power",
       prop34_first_sides},
  };
  return registry;
}

inline const IdentityEntry* find_identity(const std::string& id) {
  for (const auto& e : identity_registry()) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

inline IdentityResult check_identity(const std::string& id, long N) {
  const IdentityEntry* e = find_identity(id);
  if (!e) throw std::invalid_argument("unknown identity id: " + id);
  return detail::compare(id, N, e->sides(N));
}

}  // namespace hyperlim
