// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include "commands.hpp"

#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>

using namespace hyperlim;
using namespace hyperlim::cli;

namespace {

int failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

void report(int n, bool ok, const std::string& what, const std::string& detail, double seconds) {
  if (!ok) ++failures;
  std::printf("%s criterion %2d: %s [%s; %.2fs]\n", ok ? "PASS" : "FAIL", n, what.c_str(), detail.c_str(), seconds);
  std::fflush(stdout);
}

BigReal dec(const char* text, precision_t bits = 256) { return BigReal::from_string(text, bits); }

bool all_passed(const std::vector<Check>& rows) {
  for (const auto& c : rows) {
    if (!c.passed) return false;
  }
  return !rows.empty();
}

int min_digits(const std::vector<Check>& rows) {
  int m = 1 << 20;
  for (const auto& c : rows) m = std::min(m, c.matched_digits);
  return m;
}

std::string sci(const BigReal& v) { return v.to_string(3); }

}  // namespace

int main() {
  const Settings s;  // 256 bits, N0 = 64
  const precision_t bits = s.bits;

  {
    Timer t;
    auto rows = theorem_checks(s, 12);
    const BigReal residual = abs(dec(rows[0].target.c_str()) - dec(rows[0].computed.c_str()));
    const bool stretch = residual <= dec("1e-20");
    const double secs = t.seconds();
    report(1, rows[0].passed && secs <= 300, "|zeta(3) - 4 pi^2 ln B| <= 1e-12, N up to 8192, depth 7, 256 bits",
           "residual " + sci(residual) + ", " + std::to_string(rows[0].matched_digits) +
               " digits; stretch 1e-20 " + (stretch ? "met" : "not met"),
           secs);

    t = Timer{};
    report(2, rows[1].passed && rows[2].passed, "e_{3,2} vs 7 ln B and vs 7 zeta(3)/(4 pi^2)",
           std::to_string(rows[1].matched_digits) + " and " + std::to_string(rows[2].matched_digits) + " digits",
           t.seconds());
  }

  {
    Timer t;
    bool ok = true;
    BigReal worst(bits);
    for (long sh = 1; sh <= 10; ++sh) {
      auto est = e_limit(EIndex(0, sh), default_e_limit_config(), bits);
      const BigReal target = log1p(BigReal(1, bits) / sh);
      const BigReal diff = abs(est.value - target);
      ok = ok && diff <= est.error_estimate * 3 && diff <= dec("1e-8");
      worst = max(worst, diff);
    }
    report(3, ok, "e_{0,2s} vs ln(1 + 1/s), s = 1..10, within 3x error estimate and 1e-8",
           "worst difference " + sci(worst), t.seconds());
  }

  {
    Timer t;
    const BigReal pi = const_pi(bits);
    auto e12 = e_limit(EIndex::from_index(1, 2), default_e_limit_config(), bits);
    auto e14 = e_limit(EIndex::from_index(1, 4), default_e_limit_config(), bits);
    const BigReal d12 = abs(e12.value - log(pi / 2));
    const BigReal d14 = abs(e14.value - log(BigReal(4, bits) / pi));
    report(4, d12 <= dec("1e-8") && d14 <= dec("1e-8"), "e_{1,2} vs ln(pi/2), e_{1,4} vs ln(4/pi), within 1e-8",
           "differences " + sci(d12) + ", " + sci(d14), t.seconds());
  }

  {
    Timer t;
    const BigReal A = glaisher_A(default_glaisher_config(), bits).value;
    const BigReal pi = const_pi(bits);
    // ln(A^6 / (2^(1/6) sqrt(pi) e^(1/2)))
    const BigReal target = log(A) * 6 - log_of(2, bits) / 6 - log(pi) / 2 - BigReal(1, bits) / 2;
    auto e22 = e_limit(EIndex::from_index(2, 2), default_e_limit_config(), bits);
    const BigReal diff = abs(e22.value - target);
    auto recursion = closed_form_recursion_checks(s);
    report(5, diff <= dec("1e-6") && all_passed(recursion),
           "e_{2,2} vs ln(A^6/(2^(1/6) sqrt(pi) e^(1/2))) within 1e-6; closed-form recursion, M = 1..3, i = 2..40, 32 ulp",
           "difference " + sci(diff) + ", " + std::to_string(recursion.size()) + " recursion rows", t.seconds());
  }

  {
    Timer t;
    std::vector<Check> rows;
    for (const char* alpha : {"1", "0.1", "0.01"}) {
      auto r = recursion_checks(s, dec(alpha), 1000);
      rows.insert(rows.end(), r.begin(), r.end());
    }
    BigReal worst(bits);
    for (const auto& c : rows) worst = max(worst, abs(dec(c.computed.c_str())));
    report(6, all_passed(rows) && rows.size() == 54, "termwise recursion residual <= 2^-240, M = 1..3, s = 0..5, n <= 1000",
           std::to_string(rows.size()) + " grid points, worst " + sci(worst), t.seconds());
  }

  {
    Timer t;
    std::vector<Check> rows;
    for (const auto& [id, n] : verify_all_identity_ranges()) append_identity_checks(rows, s, id, n);
    const double secs = t.seconds();
    report(7, all_passed(rows) && rows.size() == 40 + 40 + 40 + 29 + 100 + 30 + 20 && secs <= 120,
           "exact identities hold at every N in the acceptance ranges",
           std::to_string(rows.size()) + " exact comparisons", secs);
  }

  {
    Timer t;
    auto rows = lemma_checks(s, "lemma1");
    report(8, all_passed(rows) && rows.size() == 12 && min_digits(rows) >= 6,
           "s^N sum -> 1/(2N 2^N) to 6 digits, N = 1..4, d in {-1/2, 0, 3/2}",
           "fewest matched digits " + std::to_string(min_digits(rows)), t.seconds());
  }

  {
    Timer t;
    auto l3 = lemma_checks(s, "lemma3"), l4 = lemma_checks(s, "lemma4");
    report(9, all_passed(l3) && all_passed(l4) && l3[0].matched_digits >= 10 && l4[0].matched_digits >= 10,
           "limits 1/2 and -1/12 to 10 digits",
           std::to_string(l3[0].matched_digits) + " and " + std::to_string(l4[0].matched_digits) + " digits",
           t.seconds());
  }

  {
    Timer t;
    std::vector<Check> rows;
    std::ostringstream detail;
    for (const char* id : {"tail_product_half", "sublimit_n2", "sublimit_n1", "sublimit_combined"}) {
      auto r = lemma_checks(s, id);
      detail << (rows.empty() ? "" : ", ") << id << " " << r[0].matched_digits;
      rows.insert(rows.end(), r.begin(), r.end());
    }
    // Tolerances: 1e-8, 1e-6, 1e-6, 1e-5.
    report(10, all_passed(rows), "tail product -> 1/2, sublimits -> -1/8 and 1/4, combined -> e^(1/8)",
           detail.str() + " digits", t.seconds());
  }

  {
    Timer t;
    std::mt19937_64 rng(20260101);
    std::uniform_int_distribution<long> count(4, 300);
    std::uniform_int_distribution<int> order(0, 12);
    std::uniform_int_distribution<long> small(1, 6);
    std::uniform_int_distribution<int> m_dist(0, 3);
    std::uniform_real_distribution<double> alpha_dist(0.05, 2.0);
    int violations = 0, trials = 0;
    BigReal tightest(bits);  // largest observed |change| / tail_bound
    for (; trials < 100; ++trials) {
      const long n = count(rng);
      const int m = order(rng);
      SeriesValue v{BigReal(bits), BigReal(bits), 0, BigReal(bits)}, w = v;
      switch (trials % 5) {
        case 0: {
          const long N = small(rng), sh = small(rng) - 1;
          const mpq_class d(static_cast<long>(small(rng)) - 3, 2);
          v = lemma1_sum_terms(N, sh, d, n, m, bits);
          w = lemma1_sum_terms(N, sh, d, 2 * n, m, bits);
          break;
        }
        case 1: {
          const long N = small(rng) * 3;
          v = tail_product_half_terms(N, n, m, bits);
          w = tail_product_half_terms(N, 2 * n, m, bits);
          break;
        }
        case 2: {
          const BigReal x = BigReal::from_double(2 + 10 * alpha_dist(rng), bits);
          v = sublimit_n2_terms(x, n, m, bits);
          w = sublimit_n2_terms(x, 2 * n, m, bits);
          break;
        }
        case 3: {
          const BigReal x = BigReal::from_double(2 + 10 * alpha_dist(rng), bits);
          v = sublimit_n1_terms(x, n, m, bits);
          w = sublimit_n1_terms(x, 2 * n, m, bits);
          break;
        }
        case 4: {
          const EIndex idx(m_dist(rng), small(rng));
          const BigReal alpha = BigReal::from_double(alpha_dist(rng), bits);
          v = e_partial_terms(idx, alpha, n);
          w = e_partial_terms(idx, alpha, 2 * n);
          break;
        }
      }
      const BigReal change = abs(v.value - w.value);
      if (change > v.tail_bound) ++violations;
      if (v.tail_bound.sign() > 0) tightest = max(tightest, change / v.tail_bound);
    }
    report(11, violations == 0, "doubling the term count stays within the reported tail bound, 100 random series",
           std::to_string(violations) + " violations in " + std::to_string(trials) + ", largest change/bound " +
               tightest.to_string(5),
           t.seconds());
  }

  std::printf("%s: %d of 11 criteria failed\n", failures ? "FAILED" : "OK", failures);
  return failures ? 1 : 0;
}
