#include "commands.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>

namespace {

using namespace hyperlim;
using namespace hyperlim::cli;

enum ExitCode { kAllPassed = 0, kCheckFailed = 1, kUsage = 2, kResource = 3 };

void print_row(const Check& c) {
  std::cout << (c.passed ? "PASS " : "FAIL ") << std::left << std::setw(34) << c.id << " digits=" << std::setw(3)
            << c.matched_digits << " computed=" << c.computed.substr(0, 40) << '\n';
}

bool write_report(const VerificationReport& r, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << path << '\n';
    return false;
  }
  out << to_json(r).dump(2) << '\n';
  return static_cast<bool>(out);
}

void print_list() {
  for (const auto& e : registry()) {
    std::cout << e.id << "\n  command:   " << e.command << "\n  operation: " << e.operation
              << "\n  statement: " << e.statement << '\n';
  }
}

precision_t env_precision() {
  const char* text = std::getenv("HYPERLIM_PRECISION_BITS");
  if (!text || !*text) return kDefaultPrecisionBits;
  char* end = nullptr;
  long v = std::strtol(text, &end, 10);
  if (*end != '\0' || v < static_cast<long>(kMinPrecisionBits)) {
    throw UsageError(std::string("HYPERLIM_PRECISION_BITS must be an integer >= 64, got ") + text);
  }
  return static_cast<precision_t>(v);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyperlim: verification of hyperfactorial limits and the zeta(3) = 4 pi^2 ln B identity"};
  app.require_subcommand(0, 1);
  app.set_config("--config", "", "key=value file with defaults for the global options");

  Settings s;
  long bits = 0;
  std::string out_path;
  bool list = false;
  app.add_flag("--list", list, "List registry ids with their operation and statement");
  app.add_option("--precision-bits,--precision_bits", bits, "Working precision in bits (default 256)")
      ->check(CLI::Range(64L, 1L << 20));
  app.add_option("--hyper-n0,--hyper_n0", s.hyper_n0, "First N in the hyperfactorial schedule")
      ->check(CLI::Range(2L, 1L << 20));
  app.add_option("--glaisher-depth,--glaisher_depth", s.glaisher_depth, "Extrapolation depth for A")
      ->check(CLI::Range(1, 14));
  app.add_option("--bendersky-depth,--bendersky_depth", s.bendersky_depth, "Extrapolation depth for B")
      ->check(CLI::Range(1, 14));
  app.add_option("--theorem-depth,--theorem_depth", s.theorem_depth, "Starting depth for verify-theorem")
      ->check(CLI::Range(1, 14));
  app.add_option("--e-limit-depth,--e_limit_depth", s.e_limit_depth, "Extrapolation depth in alpha")
      ->check(CLI::Range(1, 12));
  app.add_option("--max-raise,--max_raise", s.max_raise, "Automatic precision raises allowed")
      ->check(CLI::Range(0, 8));

  int digits = 0;
  auto* theorem = app.add_subcommand("verify-theorem", "Check zeta(3) = 4 pi^2 ln B to 10^-D");
  theorem->add_option("--digits", digits, "D in 6..30")->required();
  theorem->add_option("--out", out_path, "Write the JSON report here");

  std::string constant_name;
  auto* constant = app.add_subcommand("constant", "Extrapolate A or B from its defining limit");
  constant->add_option("name", constant_name, "A or B")->required();
  constant->add_option("--digits", digits, "D in 6..30")->required();
  constant->add_option("--out", out_path, "Write the JSON report here");

  int M = 0;
  long index = 0;
  auto* elimit = app.add_subcommand("e-limit", "Series e_{M,INDEX} against its closed form");
  elimit->add_option("M", M, "0..3")->required();
  elimit->add_option("INDEX", index, "even, >= 2")->required();
  elimit->add_option("--out", out_path, "Write the JSON report here");

  std::string alpha_text;
  long n_max = 0;
  auto* recursion = app.add_subcommand("check-recursion", "Termwise recursion residuals for M = 1..3, s = 0..5");
  recursion->add_option("--alpha", alpha_text, "alpha > 0")->required();
  recursion->add_option("--n-max", n_max, "last summation index")->required();
  recursion->add_option("--out", out_path, "Write the JSON report here");

  std::string id;
  auto* identity = app.add_subcommand("check-identity", "Exact finite-N identity for N = min..max-n");
  identity->add_option("ID", id, "identity id (see --list)")->required();
  identity->add_option("--max-n", n_max, "largest N")->required();
  identity->add_option("--out", out_path, "Write the JSON report here");

  auto* lemma = app.add_subcommand("lemma", "Extrapolated limit of a lemma or proof-internal sublimit");
  lemma->add_option("ID", id, "lemma id (see --list)")->required();
  lemma->add_option("--out", out_path, "Write the JSON report here");

  auto* convergence = app.add_subcommand("convergence", "Write the extrapolation history as CSV");
  convergence->add_option("ID", id, "glaisher_A, bendersky_B, lemma3, lemma4, tail_product_half, sublimit_n2, sublimit_n1")
      ->required();
  convergence->add_option("--out", out_path, "CSV path")->required();

  auto* all = app.add_subcommand("verify-all", "Run every check in dependency order");
  all->add_option("--out", out_path, "Write the JSON report here");

  VerificationReport report;
  try {
    app.parse(argc, argv);
    s.bits = bits > 0 ? static_cast<precision_t>(bits) : env_precision();
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kAllPassed : kUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  if (list) {
    print_list();
    if (app.get_subcommands().empty()) return kAllPassed;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return kUsage;
  }

  report.timestamp = report_timestamp(s.timestamp);
  report.precision_bits = static_cast<long>(s.bits);
  auto add = [&](std::vector<Check> rows) {
    for (auto& c : rows) {
      print_row(c);
      report.checks.push_back(std::move(c));
    }
  };

  int rc = kAllPassed;
  try {
    if (*theorem) {
      add(theorem_checks(s, digits));
    } else if (*constant) {
      add(constant_checks(s, constant_name, digits));
    } else if (*elimit) {
      add(e_limit_checks(s, M, index));
    } else if (*recursion) {
      BigReal alpha(s.bits);
      try {
        alpha = BigReal::from_string(alpha_text, s.bits);
      } catch (const std::invalid_argument&) {
        throw UsageError("--alpha is not a decimal number: " + alpha_text);
      }
      add(recursion_checks(s, alpha, n_max));
    } else if (*identity) {
      std::vector<Check> rows;
      try {
        append_identity_checks(rows, s, id, n_max);
      } catch (const ResourceLimitError&) {
        add(std::move(rows));
        throw;
      }
      add(std::move(rows));
    } else if (*lemma) {
      add(lemma_checks(s, id));
    } else if (*convergence) {
      auto rows = convergence_rows(s, id);
      std::ofstream out(out_path, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot write " << out_path << '\n';
        return kUsage;
      }
      write_convergence_csv(out, rows, s.bits);
      std::cout << "wrote " << rows.size() << " rows to " << out_path << '\n';
      return kAllPassed;
    } else if (*all) {
      verify_all_checks(s, [&](const Check& c) {
        print_row(c);
        report.checks.push_back(c);
      });
    }
    rc = report.all_passed() ? kAllPassed : kCheckFailed;
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    Check c;
    c.id = "resource_limit";
    c.notes = e.what();
    report.checks.push_back(std::move(c));
    rc = kResource;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  const auto passed = std::count_if(report.checks.begin(), report.checks.end(), [](const Check& c) { return c.passed; });
  std::cout << passed << "/" << report.checks.size() << " checks passed\n";
  if (!out_path.empty() && !write_report(report, out_path) && rc == kAllPassed) rc = kCheckFailed;
  return rc;
}
