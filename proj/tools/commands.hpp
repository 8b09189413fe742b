#pragma once

// Verification commands behind the hyperlim executable. Each command runs
// library operations and turns their results into report rows.

#include "report.hpp"

#include "hyperlim/closed_forms.hpp"
#include "hyperlim/constants.hpp"
#include "hyperlim/exact_identities.hpp"
#include "hyperlim/limit_lemmas.hpp"
#include "hyperlim/reference.hpp"
#include "hyperlim/series_limits.hpp"

#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperlim::cli {

// Thrown for malformed requests; the executable maps it to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Settings {
  precision_t bits = kDefaultPrecisionBits;
  long hyper_n0 = kDefaultHyperN0;
  int glaisher_depth = 8;
  int bendersky_depth = 8;
  int theorem_depth = 7;  // N0 * 2^7 = 8192 at the default N0
  int e_limit_depth = 6;
  int max_raise = 3;  // extra attempts when an extrapolation error exceeds the request
  std::optional<std::string> timestamp;
};

struct RegistryEntry {
  std::string id;
  std::string command;
  std::string operation;
  std::string statement;
};

inline const std::vector<RegistryEntry>& registry() {
  static const std::vector<RegistryEntry> entries = [] {
    std::vector<RegistryEntry> r = {
        {"theorem_zeta3", "verify-theorem", "bendersky_B + zeta3_reference",
         "zeta(3) = 4 pi^2 ln B, with ln B from the defining limit of H2(N)"},
        {"glaisher_A", "constant A", "glaisher_A",
         "A = lim H(N) N^-(N^2/2 + N/2 + 1/12) e^(N^2/4)"},
        {"bendersky_B", "constant B", "bendersky_B",
         "B = lim H2(N) N^-(N^3/3 + N^2/2 + N/6) e^(N^3/9 - N/12)"},
        {"e_limit", "e-limit M INDEX", "e_limit + closed_form",
         "lim_{alpha->0+} sum (1/n)(1-q^n) q^(sn) / (1+q^n)^M equals the closed form of e_{M,2s}"},
        {"recursion", "check-recursion", "recursion_residual",
         "termwise e_{M,2s} + e_{M,2s+2} = e_{M-1,2s}"},
        {"closed_form_recursion", "verify-all", "closed_form",
         "the closed forms satisfy e_{M,i} + e_{M,i+2} = e_{M-1,i} for even i in 2..40"},
    };
    for (const auto& e : identity_registry()) {
      r.push_back({e.id, "check-identity", "check_" + e.id, e.statement});
    }
    r.push_back({"lemma1", "lemma lemma1", "lemma1_limit",
                 "s^N sum_{k>=1} prod_{j=1}^{N+1} 1/(2k+j+d+2s) -> 1/(2N 2^N), any fixed d"});
    r.push_back({"lemma3", "lemma lemma3", "lemma3_limit", "x (1 - x ln(1 + 1/x)) -> 1/2"});
    r.push_back({"lemma4", "lemma lemma4", "lemma4_limit", "x^2 (1 - (x + 1/2) ln(1 + 1/x)) -> -1/12"});
    r.push_back({"tail_product_half", "lemma tail_product_half", "tail_product_half_limit",
                 "2N sum_{k>N} ln((2k)^2 / ((2k-1)(2k+1))) -> 1/2"});
    r.push_back({"sublimit_n2", "lemma sublimit_n2", "sublimit_n2_limit",
                 "x^2 sum_k ln((y-3)(y-1)^3 / ((y-2)^3 y)) -> -1/8, y = 2k + 2x"});
    r.push_back({"sublimit_n1", "lemma sublimit_n1", "sublimit_n1_limit",
                 "x sum_k [(3y-5) ln(y-2) + (y-1) ln y - (y-2) ln(y-3) - (3y-4) ln(y-1)] -> 1/4"});
    r.push_back({"sublimit_combined", "lemma sublimit_combined", "sublimit_combined_limit",
                 "exp of both shifted tails together -> e^(1/8)"});
    return r;
  }();
  return entries;
}

inline const std::vector<std::string>& lemma_ids() {
  static const std::vector<std::string> ids = {"lemma1",      "lemma3",      "lemma4",           "tail_product_half",
                                               "sublimit_n2", "sublimit_n1", "sublimit_combined"};
  return ids;
}

inline const std::vector<std::string>& convergence_ids() {
  static const std::vector<std::string> ids = {"glaisher_A",        "bendersky_B", "lemma3",     "lemma4",
                                               "tail_product_half", "sublimit_n2", "sublimit_n1"};
  return ids;
}

inline BigReal power_of_ten(int exponent, precision_t bits) {
  return pow(BigReal(10, bits), static_cast<long>(exponent));
}

inline void require_digits(int digits) {
  if (digits < 6 || digits > 30) throw UsageError("--digits must be in 6..30, got " + std::to_string(digits));
}

inline ExtrapolationConfig depth_config(int depth, LeadingPower power) {
  return ExtrapolationConfig::with_depth(depth, power);
}

// ---------------------------------------------------------------------------

inline std::vector<Check> theorem_checks(const Settings& s, int digits) {
  require_digits(digits);
  const BigReal requested = power_of_ten(-digits, s.bits);
  precision_t bits = s.bits;
  int depth = s.theorem_depth;
  ConstantEstimate B;
  BigReal four_pi2;
  for (int attempt = 0;; ++attempt) {
    B = bendersky_B(depth_config(depth, {1, 1}), bits, s.hyper_n0);
    BigReal pi = const_pi(bits);
    four_pi2 = pi * pi * 4;
    BigReal propagated = B.extras.at("ln_error_estimate") * four_pi2;
    if (propagated * 10 <= requested || attempt >= s.max_raise) break;
    bits += 128;
    ++depth;
  }
  const BigReal lnB = B.extras.at("ln_value");
  const BigReal zeta3 = zeta3_reference(bits);
  const long N_max = s.hyper_n0 << depth;

  std::vector<Check> checks;
  checks.push_back(make_check(
      "theorem_zeta3", zeta3, four_pi2 * lnB, requested,
      "computed = 4 pi^2 ln B with ln B extrapolated from N = " + std::to_string(s.hyper_n0) + ".." +
          std::to_string(N_max) + " (depth " + std::to_string(depth) + ", " + std::to_string(bits) +
          " bits, error estimate " + (B.extras.at("ln_error_estimate") * four_pi2).to_string(3) +
          "); target = zeta(3) from the central binomial series"));

  auto e32 = e_limit(EIndex::from_index(3, 2), depth_config(s.e_limit_depth, {1, 1}), s.bits);
  const BigReal tol = max(BigReal::from_string("1e-6", s.bits), e32.error_estimate * 3);
  const std::string note = "series e_{3,2} extrapolated in alpha, error estimate " + e32.error_estimate.to_string(3);
  checks.push_back(make_check("e32_vs_7lnB", lnB.rounded(s.bits) * 7, e32.value, tol, note));
  checks.push_back(make_check("e32_vs_zeta3", zeta3.rounded(s.bits) * 7 / four_pi2.rounded(s.bits), e32.value, tol,
                              note));
  return checks;
}

inline std::vector<Check> constant_checks(const Settings& s, const std::string& name, int digits) {
  require_digits(digits);
  if (name != "A" && name != "B") throw UsageError("constant must be A or B, got " + name);
  const bool is_A = name == "A";
  const LeadingPower power = is_A ? LeadingPower{2, 1} : LeadingPower{1, 1};
  const BigReal requested = power_of_ten(-digits, s.bits);
  int depth = is_A ? s.glaisher_depth : s.bendersky_depth;
  precision_t bits = s.bits;
  auto run = [&](int d) {
    return is_A ? glaisher_A(depth_config(d, power), bits, s.hyper_n0)
                : bendersky_B(depth_config(d, power), bits, s.hyper_n0);
  };
  ConstantEstimate est = run(depth), refined = run(depth + 1);
  for (int attempt = 0; abs(est.value - refined.value) * 10 > requested && attempt < s.max_raise; ++attempt) {
    bits += 128;
    ++depth;
    est = std::move(refined);
    refined = run(depth + 1);
  }
  const std::string id = is_A ? "glaisher_A" : "bendersky_B";
  return {make_check(id, refined.value, est.value, requested,
                     "target = next-depth refinement (depth " + std::to_string(depth + 1) + "); ln value " +
                         est.extras.at("ln_value").to_string(decimal_digits(bits) - 4) + ", error estimate " +
                         est.error_estimate.to_string(3))};
}

inline std::vector<Check> e_limit_checks(const Settings& s, int M, long index) {
  if (M < 0 || M > 3) throw UsageError("M must be in 0..3");
  if (index < 2 || index % 2 != 0) throw UsageError("INDEX must be an even integer >= 2");
  auto est = e_limit(EIndex::from_index(M, index), depth_config(s.e_limit_depth, {1, 1}), s.bits);
  ClosedFormRequest req{M, index, std::nullopt, std::nullopt};
  std::string note = "closed form";
  if (M >= 2) {
    req.A_value = glaisher_A(depth_config(s.glaisher_depth, {2, 1}), s.bits, s.hyper_n0).value;
    note += ", A from its defining limit";
  }
  if (M == 3) {
    req.B_value = bendersky_B(depth_config(s.bendersky_depth, {1, 1}), s.bits, s.hyper_n0).value;
    note += ", B from its defining limit";
  }
  BigReal target = closed_form(req, s.bits);
  BigReal tol = max(BigReal::from_string("1e-8", s.bits), est.error_estimate * 3);
  return {make_check(est.label, target, est.value, tol,
                     note + "; series error estimate " + est.error_estimate.to_string(3))};
}

inline std::vector<Check> recursion_checks(const Settings& s, const BigReal& alpha, long n_max) {
  if (!(alpha.sign() > 0)) throw UsageError("--alpha must be > 0");
  if (n_max < 1) throw UsageError("--n-max must be >= 1");
  const BigReal a = alpha.rounded(s.bits);
  const BigReal tol = BigReal::power_of_two(-static_cast<long>(s.bits) + 16, s.bits);
  const BigReal zero(s.bits);
  std::vector<Check> checks;
  for (int M = 1; M <= 3; ++M) {
    for (long sh = 0; sh <= 5; ++sh) {
      BigReal r = recursion_residual(M, sh, a, n_max);
      Check c = make_check("recursion[M=" + std::to_string(M) + ",s=" + std::to_string(sh) + "]", zero, r, tol,
                           "max residual over n <= " + std::to_string(n_max) + " at alpha = " + a.to_string(6));
      c.computed = r.to_string(6);
      checks.push_back(std::move(c));
    }
  }
  return checks;
}

inline std::vector<Check> closed_form_recursion_checks(const Settings& s) {
  const BigReal A = glaisher_A(depth_config(s.glaisher_depth, {2, 1}), s.bits, s.hyper_n0).value;
  const BigReal B = bendersky_B(depth_config(s.bendersky_depth, {1, 1}), s.bits, s.hyper_n0).value;
  std::vector<Check> checks;
  for (int M = 1; M <= 3; ++M) {
    for (long i = 2; i <= 40; i += 2) {
      BigReal lhs = closed_form({M, i, A, B}, s.bits) + closed_form({M, i + 2, A, B}, s.bits);
      BigReal rhs = closed_form({M - 1, i, A, B}, s.bits);
      checks.push_back(make_check("closed_recursion[M=" + std::to_string(M) + ",index=" + std::to_string(i) + "]",
                                  rhs, lhs, ulp(rhs) * 32, "e_{M,i} + e_{M,i+2} vs e_{M-1,i}, 32 ulp"));
    }
  }
  return checks;
}

// Appends one row per N to `out`, so rows completed before a resource limit
// survive the exception.
inline void append_identity_checks(std::vector<Check>& out, const Settings& s, const std::string& id, long max_n) {
  const IdentityEntry* e = find_identity(id);
  if (!e) throw UsageError("unknown identity id: " + id);
  if (max_n < e->min_N) throw UsageError("--max-n must be >= " + std::to_string(e->min_N));
  const BigReal one(1, s.bits), zero(s.bits);
  for (long N = e->min_N; N <= max_n; ++N) {
    IdentityResult r = check_identity(id, N);
    BigReal ratio = r.holds ? one : exp(r.lhs_div_rhs.log(s.bits));
    Check c = make_check(id + "[N=" + std::to_string(N) + "]", one, ratio, zero,
                         r.holds ? "lhs/rhs = 1 exactly" : "lhs/rhs = " + r.lhs_div_rhs.to_string());
    c.passed = r.holds;
    out.push_back(std::move(c));
  }
}

inline std::vector<Check> identity_checks(const Settings& s, const std::string& id, long max_n) {
  std::vector<Check> rows;
  append_identity_checks(rows, s, id, max_n);
  return rows;
}

inline Check lemma_row(const LemmaReport& r, const std::string& id, const char* tolerance, precision_t bits) {
  std::string params;
  for (const auto& [k, v] : r.parameters) params += (params.empty() ? "" : ", ") + k + "=" + v;
  return make_check(id, r.target, r.computed.value, BigReal::from_string(tolerance, bits),
                    params + "; extrapolation error estimate " + r.computed.error_estimate.to_string(3));
}

inline std::vector<Check> lemma_checks(const Settings& s, const std::string& id) {
  const precision_t b = s.bits;
  if (id == "lemma1") {
    std::vector<Check> rows;
    for (long N = 1; N <= 4; ++N) {
      for (const char* d : {"-1/2", "0", "3/2"}) {
        mpq_class dq(d);
        dq.canonicalize();
        rows.push_back(lemma_row(lemma1_limit(N, dq, default_lemma1_config(), b),
                                 "lemma1[N=" + std::to_string(N) + ",d=" + d + "]", "1e-6", b));
      }
    }
    return rows;
  }
  if (id == "lemma3") return {lemma_row(lemma3_limit(default_lemma34_config(), b), id, "1e-10", b)};
  if (id == "lemma4") return {lemma_row(lemma4_limit(default_lemma34_config(), b), id, "1e-10", b)};
  if (id == "tail_product_half") return {lemma_row(tail_product_half_limit(default_sublimit_config(), b), id, "1e-8", b)};
  if (id == "sublimit_n2") return {lemma_row(sublimit_n2_limit(default_sublimit_config(), b), id, "1e-6", b)};
  if (id == "sublimit_n1") return {lemma_row(sublimit_n1_limit(default_sublimit_config(), b), id, "1e-6", b)};
  if (id == "sublimit_combined") {
    return {lemma_row(sublimit_combined_limit(default_sublimit_config(), b), id, "1e-5", b)};
  }
  throw UsageError("unknown lemma id: " + id);
}

// ---------------------------------------------------------------------------

struct ConvergenceRow {
  BigReal parameter;
  BigReal value;
  BigReal error_estimate;
};

// Extrapolated value after each additional sample: row j uses samples 0..j
// at depth min(j, depth). `parameter` is the sample's natural parameter
// (N or x, the reciprocal of the Richardson step).
inline std::vector<ConvergenceRow> convergence_rows(const Settings& s, const std::string& id) {
  std::vector<Sample> samples;
  int depth = 0;
  LeadingPower power{1, 1};
  bool exponentiate = false;
  auto config_for = [](int d) {
    ExtrapolationConfig c = ExtrapolationConfig::with_depth(d);
    c.samples = d + 2;
    return c;
  };
  if (id == "glaisher_A" || id == "bendersky_B") {
    const bool is_A = id == "glaisher_A";
    depth = is_A ? s.glaisher_depth : s.bendersky_depth;
    power = is_A ? LeadingPower{2, 1} : LeadingPower{1, 1};
    ExtrapolationConfig c = config_for(depth);
    c.leading_power = power;
    samples = hyperfactorial_samples(is_A ? 1 : 2, c, s.hyper_n0, s.bits);
    exponentiate = true;
  } else if (id == "lemma3" || id == "lemma4") {
    depth = default_lemma34_config().depth;
    samples = id == "lemma3" ? lemma3_samples(config_for(depth), s.bits) : lemma4_samples(config_for(depth), s.bits);
  } else if (id == "tail_product_half") {
    depth = default_sublimit_config().depth;
    samples = tail_product_half_samples(config_for(depth), s.bits);
  } else if (id == "sublimit_n2" || id == "sublimit_n1") {
    depth = default_sublimit_config().depth;
    samples = id == "sublimit_n2" ? sublimit_n2_samples(config_for(depth), s.bits)
                                  : sublimit_n1_samples(config_for(depth), s.bits);
  } else {
    throw UsageError("unknown convergence id: " + id);
  }

  std::vector<ConvergenceRow> rows;
  for (std::size_t j = 1; j < samples.size(); ++j) {
    const int d = std::min<int>(static_cast<int>(j), depth);
    std::vector<Sample> prefix(samples.begin(), samples.begin() + static_cast<long>(j) + 1);
    auto est = richardson_extrapolate(prefix, ExtrapolationConfig{d, 2, power, static_cast<int>(j) + 1});
    BigReal value = est.value, err = est.error_estimate;
    if (exponentiate) {
      value = exp(est.value);
      err = value * est.error_estimate;
    }
    rows.push_back({(1 / samples[j].parameter).rounded(s.bits), value.rounded(s.bits), err.rounded(s.bits)});
  }
  return rows;
}

inline void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows, precision_t bits) {
  const int digits = decimal_digits(bits) - 2;
  out << "parameter,value,error_estimate\n";
  for (const auto& r : rows) {
    out << r.parameter.to_fixed(0) << ',' << r.value.to_string(digits) << ',' << r.error_estimate.to_string(6)
        << '\n';
  }
}

// ---------------------------------------------------------------------------

// Acceptance-scale ranges for the identity checks in verify-all.
inline const std::vector<std::pair<std::string, long>>& verify_all_identity_ranges() {
  static const std::vector<std::pair<std::string, long>> ranges = {
      {"prop32_partial", 40}, {"prop33_inner", 40},     {"prop33_hyper", 40}, {"prop34_double", 30},
      {"prop34_middle", 100}, {"prop34_rightmost", 30}, {"prop34_first", 20}};
  return ranges;
}

// Everything, in dependency order: constants, series against closed forms,
// recursions, exact identities, lemmas, and the theorem last.
inline std::vector<Check> verify_all_checks(const Settings& s, const std::function<void(const Check&)>& progress) {
  std::vector<Check> all;
  auto add = [&](std::vector<Check> rows) {
    for (auto& c : rows) {
      if (progress) progress(c);
      all.push_back(std::move(c));
    }
  };
  add(constant_checks(s, "A", 20));
  add(constant_checks(s, "B", 20));
  for (int M = 0; M <= 3; ++M) {
    for (long index : {2L, 4L, 6L}) add(e_limit_checks(s, M, index));
  }
  for (long sh = 4; sh <= 10; ++sh) add(e_limit_checks(s, 0, 2 * sh));
  for (const char* alpha : {"1", "0.1", "0.01"}) add(recursion_checks(s, BigReal::from_string(alpha, s.bits), 1000));
  add(closed_form_recursion_checks(s));
  for (const auto& [id, n] : verify_all_identity_ranges()) add(identity_checks(s, id, n));
  for (const auto& id : lemma_ids()) add(lemma_checks(s, id));
  add(theorem_checks(s, 12));
  return all;
}

}  // namespace hyperlim::cli
