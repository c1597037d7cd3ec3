#pragma once

// Emitters for polynomials, verification reports, scalar sequences and
// triple listings in the human, CSV, JSON-lines and b-file formats.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qanalog/identities.hpp"
#include "qanalog/ntheory.hpp"
#include "qanalog/qpoly.hpp"

namespace qanalog::cli {

enum class Format { human, csv, jsonlines, bfile };

/// Bad flags, ranges or names; maps to exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kJsonSchemaVersion = 1;

constexpr std::string_view to_string(Format f) {
  switch (f) {
    case Format::human: return "human";
    case Format::csv: return "csv";
    case Format::jsonlines: return "jsonlines";
    case Format::bfile: return "bfile";
  }
  return "?";
}

inline Format parse_format(std::string_view name) {
  for (const Format f : {Format::human, Format::csv, Format::jsonlines, Format::bfile}) {
    if (to_string(f) == name) return f;
  }
  throw UsageError("unknown format '" + std::string(name) + "' (valid: human, csv, jsonlines, bfile)");
}

inline void require_table_format(Format f, std::string_view command) {
  if (f == Format::bfile) {
    throw UsageError(std::string(command) + ": bfile output applies only to scalar sequences");
  }
}

/// Descending powers with explicit signs, e.g. "q^2 - 2q + 1".
inline std::string render_human(const CenteredPolynomial& p) {
  const std::vector<DenseTerm> terms = p.expanded();
  std::string out;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const int magnitude = it->coefficient < 0 ? -it->coefficient : it->coefficient;
    std::string body;
    if (it->exponent == 0) {
      body = std::to_string(magnitude);
    } else {
      if (magnitude != 1) body = std::to_string(magnitude);
      body += it->exponent == 1 ? "q" : "q^" + std::to_string(it->exponent);
    }
    if (out.empty()) {
      out = (it->coefficient < 0 ? "-" : "") + body;
    } else {
      out += (it->coefficient < 0 ? " - " : " + ") + body;
    }
  }
  return out;
}

inline void write_poly(std::ostream& out, const CenteredPolynomial& p, Format format) {
  require_table_format(format, "poly");
  const std::string kind(to_string(p.kind()));
  switch (format) {
    case Format::human:
      out << render_human(p) << '\n';
      break;
    case Format::csv:
      out << "kind,n,exponent,coefficient\n";
      for (const DenseTerm& t : p.expanded()) {
        out << kind << ',' << p.center() << ',' << t.exponent << ',' << t.coefficient << '\n';
      }
      break;
    case Format::jsonlines:
      for (const DenseTerm& t : p.expanded()) {
        const nlohmann::json record = {{"v", kJsonSchemaVersion},
                                       {"kind", kind},
                                       {"n", p.center()},
                                       {"exponent", t.exponent},
                                       {"offset", static_cast<std::int64_t>(t.exponent) -
                                                      static_cast<std::int64_t>(p.center())},
                                       {"coefficient", t.coefficient}};
        out << record.dump() << '\n';
      }
      break;
    case Format::bfile:
      break;
  }
}

inline nlohmann::json witness_json(const std::optional<TripleWitness>& w) {
  if (!w) return nullptr;
  return {{"x", w->x()}, {"y", w->y()}, {"z", w->z()}, {"k", w->k()}};
}

inline void write_report(std::ostream& out, const VerificationReport& r, Format format) {
  switch (format) {
    case Format::human: {
      out << "n=" << r.n << (r.passed() ? " pass" : " FAIL");
      if (r.nonnegative) {
        out << (*r.nonnegative ? " nonnegative" : " negative-coefficients");
        if (r.witness) {
          out << " witness=(" << r.witness->x() << "," << r.witness->y() << "," << r.witness->z()
              << ") k=" << r.witness->k();
        }
      }
      for (const CheckResult& c : r.checks) {
        if (!c.passed) out << " | " << to_string(c.check) << ": " << c.detail;
      }
      out << '\n';
      break;
    }
    case Format::csv:
      for (const CheckResult& c : r.checks) {
        out << r.n << ',' << to_string(c.check) << ',' << (c.passed ? "pass" : "fail") << ',' << c.detail << '\n';
      }
      break;
    case Format::jsonlines: {
      nlohmann::json checks = nlohmann::json::array();
      for (const CheckResult& c : r.checks) {
        nlohmann::json entry = {{"name", to_string(c.check)}, {"passed", c.passed}};
        if (!c.passed) entry["detail"] = c.detail;
        checks.push_back(std::move(entry));
      }
      nlohmann::json record = {{"v", kJsonSchemaVersion}, {"n", r.n}, {"passed", r.passed()}, {"checks", checks}};
      if (r.nonnegative) {
        record["nonnegative"] = *r.nonnegative;
        record["witness"] = witness_json(r.witness);
      }
      out << record.dump() << '\n';
      break;
    }
    case Format::bfile:
      break;
  }
}

inline void write_summary(std::ostream& out, const RangeSummary& s) {
  out << s.passed << '/' << s.total << " pass\n";
  for (const CheckTally& t : s.per_check) {
    out << to_string(t.check) << ": " << t.passed << " pass, " << t.failed << " fail\n";
  }
}

/// Reports on `out` in ascending n. The summary follows them for human
/// output and goes to `diag` otherwise; counterexamples always go to `diag`.
inline void write_verification(std::ostream& out, std::ostream& diag, const RangeResult& result, Format format) {
  require_table_format(format, "verify");
  if (format == Format::csv) out << "n,check,status,detail\n";
  for (const VerificationReport& r : result.reports) write_report(out, r, format);
  for (const VerificationReport& r : result.reports) {
    for (const CheckResult& c : r.checks) {
      if (!c.passed) diag << "counterexample " << to_string(c.check) << ": " << c.detail << '\n';
    }
  }
  write_summary(format == Format::human ? out : diag, result.summary);
}

enum class Stat { r2, d14, d34, possum, negsum, nonneg };

inline constexpr std::array<Stat, 6> kAllStats = {Stat::r2, Stat::d14, Stat::d34, Stat::possum, Stat::negsum, Stat::nonneg};

constexpr std::string_view to_string(Stat s) {
  switch (s) {
    case Stat::r2: return "r2";
    case Stat::d14: return "d14";
    case Stat::d34: return "d34";
    case Stat::possum: return "possum";
    case Stat::negsum: return "negsum";
    case Stat::nonneg: return "nonneg";
  }
  return "?";
}

inline Stat parse_stat(std::string_view name) {
  for (const Stat s : kAllStats) {
    if (to_string(s) == name) return s;
  }
  throw UsageError("unknown statistic '" + std::string(name) + "' (valid: r2, d14, d34, possum, negsum, nonneg)");
}

inline std::int64_t stat_value(Stat s, u64 n) {
  switch (s) {
    case Stat::r2: return static_cast<std::int64_t>(r2_bruteforce(n));
    case Stat::d14: return static_cast<std::int64_t>(divisor_count_mod(n, 1, 4));
    case Stat::d34: return static_cast<std::int64_t>(divisor_count_mod(n, 3, 4));
    case Stat::possum: return positive_sum(build_Gamma(n));
    case Stat::negsum: return negative_sum(build_Gamma(n));
    case Stat::nonneg: return is_nonnegative(build_Gamma(n)) ? 1 : 0;
  }
  return 0;
}

inline void write_sequence(std::ostream& out, Stat stat, u64 lo, u64 hi, Format format) {
  const std::string name(to_string(stat));
  if (format == Format::csv) out << "n," << name << '\n';
  for (u64 n = lo; n <= hi; ++n) {
    const std::int64_t value = stat_value(stat, n);
    switch (format) {
      case Format::human: out << name << '(' << n << ") = " << value << '\n'; break;
      case Format::csv: out << n << ',' << value << '\n'; break;
      case Format::jsonlines:
        out << nlohmann::json{{"v", kJsonSchemaVersion}, {"stat", name}, {"n", n}, {"value", value}}.dump() << '\n';
        break;
      case Format::bfile: out << n << ' ' << value << '\n'; break;
    }
    if (n == hi) break;  // hi may be the largest u64
  }
}

/// Triples sorted by (z, x).
inline void write_triples(std::ostream& out, std::vector<TripleWitness> triples, Format format) {
  require_table_format(format, "triples");
  std::stable_sort(triples.begin(), triples.end(), [](const TripleWitness& a, const TripleWitness& b) {
    return std::pair(a.z(), a.x()) < std::pair(b.z(), b.x());
  });
  if (format == Format::csv) out << "x,y,z\n";
  for (const TripleWitness& t : triples) {
    switch (format) {
      case Format::human: out << '(' << t.x() << ", " << t.y() << ", " << t.z() << ")\n"; break;
      case Format::csv: out << t.x() << ',' << t.y() << ',' << t.z() << '\n'; break;
      case Format::jsonlines:
        out << nlohmann::json{{"v", kJsonSchemaVersion}, {"x", t.x()}, {"y", t.y()}, {"z", t.z()}}.dump() << '\n';
        break;
      case Format::bfile: break;
    }
  }
}

}  // namespace qanalog::cli
