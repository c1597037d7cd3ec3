#pragma once

// Command-line driver: poly, verify, sequence and triples subcommands.
// Exit status: 0 success, 1 verification failure, 2 usage error.

#include <algorithm>
#include <charconv>
#include <iostream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "qanalog/identities.hpp"
#include "qanalog/render.hpp"

namespace qanalog::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

/// Above this bound the lattice-point oracle dominates run time.
inline constexpr u64 kLargeRangeWarning = 10'000'000;

struct Range {
  u64 lo;
  u64 hi;
};

inline u64 parse_positive(std::string_view text, std::string_view what) {
  u64 value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw UsageError(std::string(what) + ": not a nonnegative integer: '" + std::string(text) + "'");
  }
  if (value == 0) throw UsageError(std::string(what) + " must be at least 1");
  return value;
}

/// "LO..HI" or a single "N".
inline Range parse_range(std::string_view text) {
  const auto sep = text.find("..");
  if (sep == std::string_view::npos) {
    const u64 n = parse_positive(text, "range");
    return {n, n};
  }
  const Range r{parse_positive(text.substr(0, sep), "range start"), parse_positive(text.substr(sep + 2), "range end")};
  if (r.lo > r.hi) throw UsageError("empty range " + std::string(text));
  return r;
}

/// Comma-separated check names; "all" selects every check.
inline std::vector<Check> parse_checks(std::string_view text) {
  std::vector<Check> out;
  while (true) {
    const auto comma = text.find(',');
    const std::string_view name = text.substr(0, comma);
    if (name == "all") {
      out.insert(out.end(), kAllChecks.begin(), kAllChecks.end());
    } else if (const auto c = parse_check(name)) {
      out.push_back(*c);
    } else {
      std::string valid;
      for (const Check c : kAllChecks) valid += std::string(valid.empty() ? "" : ", ") + std::string(to_string(c));
      throw UsageError("unknown check '" + std::string(name) + "' (valid: " + valid + ", all)");
    }
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

inline void warn_if_large(std::ostream& err, u64 hi) {
  if (hi > kLargeRangeWarning) {
    err << "warning: range end " << hi << " exceeds " << kLargeRangeWarning
        << "; the brute-force lattice count will dominate run time\n";
  }
}

/// Runs the CLI on `args` (program name excluded).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Construct the q-analogue polynomials C_n(q), Gamma_n(q) and verify their divisor identities",
               "qanalog"};
  app.require_subcommand(1);

  std::string format_name = "human";
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format_name, "Output format: human, csv, jsonlines, bfile")->capture_default_str();
  };

  auto* poly = app.add_subcommand("poly", "Print C_n(q) or Gamma_n(q)");
  std::string n_text;
  std::string kind_name = "Gamma";
  poly->add_option("n", n_text, "Center n >= 1 (degree 2n)")->required();
  poly->add_option("--kind", kind_name, "C or Gamma")->capture_default_str();
  add_format(poly);

  auto* verify = app.add_subcommand("verify", "Verify the coefficient identities over a range of n");
  std::string range_text;
  std::string checks_text = "all";
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  verify->add_option("--range", range_text, "LO..HI")->required();
  verify->add_option("--checks", checks_text, "Comma-separated checks, or all")->capture_default_str();
  verify->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
  add_format(verify);

  auto* sequence = app.add_subcommand("sequence", "Emit a per-n statistic: r2, d14, d34, possum, negsum, nonneg");
  std::string stat_name;
  sequence->add_option("stat", stat_name, "Statistic name")->required();
  sequence->add_option("--range", range_text, "LO..HI")->required();
  add_format(sequence);

  auto* triples = app.add_subcommand("triples", "List primitive Pythagorean triples with z <= Z");
  std::string z_text;
  triples->add_option("z_limit", z_text, "Largest hypotenuse")->required();
  add_format(triples);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    const Format format = parse_format(format_name);
    if (poly->parsed()) {
      const u64 n = parse_positive(n_text, "n");
      PolyKind kind;
      if (kind_name == "C") {
        kind = PolyKind::C;
      } else if (kind_name == "Gamma") {
        kind = PolyKind::Gamma;
      } else {
        throw UsageError("unknown kind '" + kind_name + "' (valid: C, Gamma)");
      }
      require_table_format(format, "poly");
      warn_if_large(err, n);
      write_poly(out, build(kind, n), format);
      return kExitSuccess;
    }
    if (verify->parsed()) {
      const Range range = parse_range(range_text);
      const std::vector<Check> checks = parse_checks(checks_text);
      if (jobs == 0) throw UsageError("--jobs must be at least 1");
      require_table_format(format, "verify");
      warn_if_large(err, range.hi);
      const RangeResult result = verify_range(range.lo, range.hi, checks, jobs);
      write_verification(out, err, result, format);
      return result.summary.all_passed() ? kExitSuccess : kExitVerificationFailed;
    }
    if (sequence->parsed()) {
      const Stat stat = parse_stat(stat_name);
      const Range range = parse_range(range_text);
      warn_if_large(err, range.hi);
      write_sequence(out, stat, range.lo, range.hi, format);
      return kExitSuccess;
    }
    if (triples->parsed()) {
      const u64 z_limit = parse_positive(z_text, "z_limit");
      require_table_format(format, "triples");
      write_triples(out, generate_primitive_triples(z_limit), format);
      return kExitSuccess;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace qanalog::cli
