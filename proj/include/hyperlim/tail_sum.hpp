#pragma once

// Rigorous tails of slowly convergent lattice sums.
//
// The summands handled here have the form f(k) = F(scale * k + base) where F
// is a finite combination of "atoms"
//
//     ln(y - a),   (y - a) ln(y - a),   (y - a)^(-m)
//
// with integer offsets a and rational coefficients. Such F can be
// differentiated and integrated in closed form, so the tail sum_{k > K} f(k)
// is evaluated by Euler-Maclaurin summation:
//
//     sum_{k>K} f(k) = int_K^inf f - f(K)/2 - sum_{j=1}^{m} B_2j/(2j)! f^(2j-1)(K) + R_m.
//
// F is supplied as a sum of components, each of which is (up to a declared
// sign) completely monotone on the tail. For a completely monotone function
// all even derivatives are positive, so |R_m| is at most the first omitted
// term; the bound used is the sum of these first omitted terms over the
// components.

#include "hyperlim/big_real.hpp"
#include "hyperlim/series_value.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperlim {

// Bernoulli number B_n as an exact rational (B_1 = -1/2 convention).
inline const mpq_class& bernoulli(int n) {
  static const std::vector<mpq_class> table = [] {
    constexpr int kMax = 130;
    std::vector<mpq_class> b(kMax + 1);
    b[0] = 1;
    for (int m = 1; m <= kMax; ++m) {
      mpq_class acc = 0;
      mpz_class binom = 1;  // C(m+1, k)
      for (int k = 0; k < m; ++k) {
        acc += mpq_class(binom) * b[k];
        binom = binom * (m + 1 - k) / (k + 1);
      }
      b[m] = -acc / (m + 1);
      b[m].canonicalize();
    }
    return b;
  }();
  if (n < 0 || n >= static_cast<int>(table.size())) throw std::out_of_range("bernoulli index out of range");
  return table[n];
}

enum class AtomKind { Log, XLog, InversePower };

struct Atom {
  AtomKind kind;
  long offset;              // a in (y - a)
  mpq_class coefficient;
  int power = 1;            // m, for InversePower only
};

class AtomCombination {
 public:
  AtomCombination() = default;

  explicit AtomCombination(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    // Moment conditions that make the closed-form antiderivative vanish at
    // infinity once its polynomial part is dropped.
    mpq_class log0 = 0, log1 = 0, x0 = 0, x1 = 0, x2 = 0, inv0 = 0;
    for (const auto& a : atoms_) {
      mpq_class off(a.offset);
      switch (a.kind) {
        case AtomKind::Log:
          log0 += a.coefficient;
          log1 += a.coefficient * off;
          break;
        case AtomKind::XLog:
          x0 += a.coefficient;
          x1 += a.coefficient * off;
          x2 += a.coefficient * off * off;
          break;
        case AtomKind::InversePower:
          if (a.power < 1) throw std::invalid_argument("inverse power must be >= 1");
          if (a.power == 1) inv0 += a.coefficient;
          break;
      }
    }
    if (log0 != 0 || log1 != 0 || x0 != 0 || x1 != 0 || x2 != 0 || inv0 != 0) {
      throw std::invalid_argument("atom combination is not integrable at infinity");
    }
  }

  const std::vector<Atom>& atoms() const { return atoms_; }

  BigReal value(const BigReal& y) const {
    BigReal sum(y.precision());
    for (const auto& a : atoms_) {
      BigReal z = y - a.offset;
      BigReal g(y.precision());
      switch (a.kind) {
        case AtomKind::Log: g = log(z); break;
        case AtomKind::XLog: g = z * log(z); break;
        case AtomKind::InversePower: g = pow(z, -static_cast<long>(a.power)); break;
      }
      sum += coefficient(a, y.precision()) * g;
    }
    return sum;
  }

  // d^r/dy^r F at y, r >= 1.
  BigReal derivative(int r, const BigReal& y) const {
    if (r < 1) throw std::invalid_argument("derivative order must be >= 1");
    const precision_t bits = y.precision();
    BigReal sum(bits);
    for (const auto& a : atoms_) {
      BigReal z = y - a.offset;
      BigReal g(bits);
      switch (a.kind) {
        case AtomKind::Log:
          // (-1)^(r-1) (r-1)! z^-r
          g = factorial(r - 1, bits) * pow(z, -static_cast<long>(r));
          if ((r - 1) % 2 == 1) g = -g;
          break;
        case AtomKind::XLog:
          if (r == 1) {
            g = log(z) + 1;
          } else {
            // (-1)^r (r-2)! z^-(r-1)
            g = factorial(r - 2, bits) * pow(z, -static_cast<long>(r - 1));
            if (r % 2 == 1) g = -g;
          }
          break;
        case AtomKind::InversePower: {
          // (-1)^r m (m+1) ... (m+r-1) z^-(m+r)
          BigReal rising(1, bits);
          for (int i = 0; i < r; ++i) rising *= static_cast<long>(a.power + i);
          g = rising * pow(z, -static_cast<long>(a.power + r));
          if (r % 2 == 1) g = -g;
          break;
        }
      }
      sum += coefficient(a, bits) * g;
    }
    return sum;
  }

  // int_y^inf F(t) dt.
  BigReal integral_to_infinity(const BigReal& y) const {
    const precision_t bits = y.precision();
    BigReal anti(bits);
    for (const auto& a : atoms_) {
      BigReal z = y - a.offset;
      BigReal g(bits);
      switch (a.kind) {
        case AtomKind::Log: g = z * log(z); break;
        case AtomKind::XLog: g = ldexp(z * z * log(z), -1); break;
        case AtomKind::InversePower:
          if (a.power == 1) {
            g = log(z);
          } else {
            g = pow(z, 1 - static_cast<long>(a.power)) / (1 - static_cast<long>(a.power));
          }
          break;
      }
      anti += coefficient(a, bits) * g;
    }
    return -anti;
  }

 private:
  static BigReal coefficient(const Atom& a, precision_t bits) { return BigReal::from_rational(a.coefficient, bits); }

  static BigReal factorial(int n, precision_t bits) {
    BigReal r(1, bits);
    for (long i = 2; i <= n; ++i) r *= i;
    return r;
  }

  std::vector<Atom> atoms_;
};

// sign * combination is completely monotone in y on the region summed over.
struct MonotoneComponent {
  AtomCombination combination;
  int sign = 1;
};

// f(k) = sum_c F_c(scale * k + base).
struct TailModel {
  std::vector<MonotoneComponent> components;
  long scale = 1;
  BigReal base;

  BigReal y_at(long k, precision_t bits) const { return BigReal(k, bits) * scale + base.rounded(bits); }

  BigReal term(long k, precision_t bits) const {
    BigReal y = y_at(k, bits);
    BigReal sum(bits);
    for (const auto& c : components) sum += c.combination.value(y);
    return sum;
  }
};

struct TailEstimate {
  BigReal estimate;  // sum_{k > K} f(k) up to the remainder
  BigReal bound;     // |remainder| <= bound
  int order = 0;     // number of Bernoulli corrections used
};

namespace detail {

// Guard bits against cancellation inside atom combinations near y.
inline precision_t tail_work_bits(precision_t bits, const BigReal& y) {
  long lg = std::max<long>(1, y.exponent2());
  return bits + 64 + 6 * lg;
}

struct TailTerms {
  BigReal head;                      // integral - f(K)/2
  std::vector<BigReal> corrections;  // B_2j/(2j)! f^(2j-1)(K), j = 1..
  std::vector<BigReal> bounds;       // sum_c |B_2j/(2j)! f_c^(2j-1)(K)|, j = 1..
};

inline TailTerms tail_terms(const TailModel& model, long K, int max_order, precision_t work) {
  BigReal y = model.y_at(K, work);
  BigReal integral(work), fk(work);
  for (const auto& c : model.components) {
    integral += c.combination.integral_to_infinity(y);
    fk += c.combination.value(y);
  }
  integral /= model.scale;
  TailTerms t{integral - ldexp(fk, -1), {}, {}};

  BigReal scale_pow(model.scale, work);  // scale^(2j-1)
  BigReal scale_sq(model.scale * model.scale, work);
  mpz_class fact = 1;                    // (2j)!
  for (int j = 1; j <= max_order + 1; ++j) {
    fact *= (2 * j - 1) * (2 * j);
    BigReal weight = BigReal::from_rational(mpq_class(bernoulli(2 * j) / mpq_class(fact)), work);
    BigReal total(work), magnitude(work);
    for (const auto& c : model.components) {
      BigReal d = weight * scale_pow * c.combination.derivative(2 * j - 1, y);
      total += d;
      magnitude += abs(d);
    }
    t.corrections.push_back(std::move(total));
    t.bounds.push_back(std::move(magnitude));
    scale_pow *= scale_sq;
  }
  return t;
}

}  // namespace detail

// Tail after K with exactly `order` Bernoulli corrections.
inline TailEstimate em_tail(const TailModel& model, long K, int order, precision_t bits) {
  if (order < 0) throw std::invalid_argument("em_tail: order must be >= 0");
  const precision_t work = detail::tail_work_bits(bits, model.y_at(K, bits));
  auto t = detail::tail_terms(model, K, order, work);
  BigReal estimate = t.head;
  for (int j = 0; j < order; ++j) estimate -= t.corrections[j];
  BigReal bound = t.bounds[order];
  return {estimate.rounded(bits), bound.rounded(bits), order};
}

// Tail after K with the smallest order whose remainder bound is <= tol, or
// nullopt when no order up to max_order reaches tol at this K.
inline std::optional<TailEstimate> em_tail_within(const TailModel& model, long K, const BigReal& tol,
                                                  precision_t bits, int max_order = 40) {
  const precision_t work = detail::tail_work_bits(bits, model.y_at(K, bits));
  auto t = detail::tail_terms(model, K, max_order, work);
  BigReal estimate = t.head;
  for (int m = 0; m <= max_order; ++m) {
    if (m > 0) estimate -= t.corrections[m - 1];
    if (t.bounds[m] <= tol) return TailEstimate{estimate.rounded(bits), t.bounds[m].rounded(bits), m};
    // Asymptotic series: once the bounds start growing they will not recover.
    if (m > 1 && t.bounds[m] > t.bounds[m - 1]) break;
  }
  return std::nullopt;
}

// Sums f(first) + f(first+1) + ... with explicit terms up to K and an
// Euler-Maclaurin tail beyond; K is doubled until the tail bound meets tol.
// `term(k, work_bits)` evaluates one summand.
template <class TermFn>
SeriesValue lattice_sum(TermFn&& term, long first, const TailModel& model, const BigReal& tol, precision_t bits,
                        long max_terms, const BigReal& parameter, long initial_K = 32) {
  if (!(tol.sign() > 0)) throw std::invalid_argument("tolerance must be positive");
  long K = first - 1 + initial_K;
  long summed_to = first - 1;
  BigReal partial(bits + 32);
  for (;;) {
    for (long k = summed_to + 1; k <= K; ++k) partial += term(k, bits + 32);
    summed_to = K;
    if (auto tail = em_tail_within(model, K, tol, bits)) {
      BigReal value = partial + tail->estimate;
      BigReal slop = ulp(value.rounded(bits)) * 4;
      return SeriesValue{value.rounded(bits), (tail->bound + slop).rounded(bits), K - first + 1, parameter};
    }
    if (2 * K - first + 1 > max_terms) {
      auto tail = em_tail(model, K, 8, bits);
      throw ResourceLimitError("lattice sum: tolerance unreachable within " + std::to_string(max_terms) + " terms",
                               SeriesValue{(partial + tail.estimate).rounded(bits), tail.bound, K - first + 1,
                                           parameter});
    }
    K *= 2;
  }
}

// Same sum with exactly `count` explicit terms and a fixed tail order.
template <class TermFn>
SeriesValue lattice_sum_terms(TermFn&& term, long first, long count, int order, const TailModel& model,
                              precision_t bits, const BigReal& parameter) {
  if (count < 1) throw std::invalid_argument("term count must be positive");
  BigReal partial(bits + 32);
  const long K = first + count - 1;
  for (long k = first; k <= K; ++k) partial += term(k, bits + 32);
  auto tail = em_tail(model, K, order, bits);
  BigReal value = partial + tail.estimate;
  BigReal slop = ulp(value.rounded(bits)) * 4;
  return SeriesValue{value.rounded(bits), (tail.bound + slop).rounded(bits), count, parameter};
}

}  // namespace hyperlim
