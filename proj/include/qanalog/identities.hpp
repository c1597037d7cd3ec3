#pragma once

// Executable checks of the coefficient identities of Gamma_n(q) and a
// parallel, order-preserving range driver.

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "qanalog/ntheory.hpp"
#include "qanalog/qpoly.hpp"

namespace qanalog {

enum class Check { lemma1, lemma2, prop1_pos, prop1_neg, qanalogue, theorem1, structural };

inline constexpr std::array<Check, 7> kAllChecks = {Check::lemma1,    Check::lemma2,   Check::prop1_pos,
                                                    Check::prop1_neg, Check::qanalogue, Check::theorem1,
                                                    Check::structural};

constexpr std::string_view to_string(Check c) {
  switch (c) {
    case Check::lemma1: return "lemma1";
    case Check::lemma2: return "lemma2";
    case Check::prop1_pos: return "prop1_pos";
    case Check::prop1_neg: return "prop1_neg";
    case Check::qanalogue: return "qanalogue";
    case Check::theorem1: return "theorem1";
    case Check::structural: return "structural";
  }
  return "?";
}

inline std::optional<Check> parse_check(std::string_view name) {
  for (const Check c : kAllChecks) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

struct CheckResult {
  Check check;
  bool passed;
  std::string detail;  // empty on pass

  static CheckResult pass(Check c) { return {c, true, {}}; }
  static CheckResult fail(Check c, std::string detail) { return {c, false, std::move(detail)}; }
};

/// "n=<n> i=<i> expected=<e> got=<g>", with "-" for an absent offset and
/// optional trailing key=value context.
template <typename E, typename G>
std::string counterexample(u64 n, std::optional<u64> i, const E& expected, const G& got,
                           std::string_view extra = {}) {
  std::ostringstream os;
  os << std::boolalpha << "n=" << n << " i=";
  if (i) {
    os << *i;
  } else {
    os << '-';
  }
  os << " expected=" << expected << " got=" << got;
  if (!extra.empty()) os << ' ' << extra;
  return os.str();
}

/// gamma_{n,i} = gamma^+ - gamma^- with gamma^+ gamma^- = 0 for every i in
/// 0..n, comparing the divisor counts against the closed-form coefficient.
inline CheckResult check_lemma1(u64 n) {
  const auto ks = divisors(factorize_double(n));
  for (u64 i = 0; i <= n; ++i) {
    const SignedCoefficientPair pair = gamma_signed(n, i, ks);
    const int expected = gamma_coefficient(n, i);
    if (pair.plus * pair.minus != 0 || pair.value() != expected) {
      return CheckResult::fail(Check::lemma1,
                               counterexample(n, i, expected, pair.value(),
                                              "plus=" + std::to_string(pair.plus) +
                                                  " minus=" + std::to_string(pair.minus)));
    }
  }
  return CheckResult::pass(Check::lemma1);
}

/// Both sides of the divisor/offset equivalence for one divisor k of 2n of
/// parity opposite to 2n/k and one lambda in {-1, 1}.
struct Lemma2Instance {
  u64 k;
  int lambda;
  u64 u;
  bool offset_exists;          // some i in 0..n solves k(k + 2i + lambda (-1)^{n+k+i}) = 2n
  std::optional<u64> offset;   // smallest such i
  bool residue_matches;        // u = lambda (mod 4)
};

/// Evaluates the equivalence at (n, k, lambda). The offset side tests the two
/// candidates i = (2n/k - k -+ lambda)/2, one per parity of n + k + i.
inline Lemma2Instance lemma2_instance(u64 n, u64 k, int lambda) {
  const u64 two_n = 2 * n;
  if (k == 0 || two_n % k != 0) throw std::domain_error("lemma2_instance: k must divide 2n");
  const u64 cofactor = two_n / k;
  if (k % 2 == cofactor % 2) throw std::domain_error("lemma2_instance: k and 2n/k must differ in parity");
  if (lambda != 1 && lambda != -1) throw std::domain_error("lemma2_instance: lambda must be +-1");

  Lemma2Instance out{k, lambda, k % 2 == 1 ? k : cofactor, false, std::nullopt, false};
  out.residue_matches = out.u % 4 == (lambda == 1 ? 1u : 3u);

  // 2i + lambda (-1)^{n+k+i} = 2n/k - k, an odd number.
  const std::int64_t gap = static_cast<std::int64_t>(cofactor) - static_cast<std::int64_t>(k);
  for (const std::int64_t twice_i : {gap - lambda, gap + lambda}) {
    if (twice_i < 0) continue;
    const u64 i = static_cast<u64>(twice_i) / 2;
    if (i > n) continue;
    const std::int64_t e = lambda * detail::sign_of_power(n + k + i);
    const std::int64_t bracket = static_cast<std::int64_t>(k + 2 * i) + e;
    if (bracket > 0 && static_cast<u128>(k) * static_cast<u64>(bracket) == two_n) {
      if (!out.offset || i < *out.offset) out.offset = i;
      out.offset_exists = true;
    }
  }
  return out;
}

/// Checks the equivalence over every divisor k of 2n with k and 2n/k of
/// opposite parity and k < 2n/k, the smaller of the pair {u, 2n/u}.
/// For the larger member the offset side only holds when |u - 2n/u| = 1.
inline CheckResult check_lemma2(u64 n) {
  const u64 two_n = 2 * n;
  for (const u64 k : divisors(factorize_double(n))) {
    const u64 cofactor = two_n / k;
    if (k >= cofactor) break;
    if (k % 2 == cofactor % 2) continue;
    for (const int lambda : {-1, 1}) {
      const Lemma2Instance inst = lemma2_instance(n, k, lambda);
      if (inst.offset_exists != inst.residue_matches) {
        return CheckResult::fail(Check::lemma2,
                                 counterexample(n, inst.offset, inst.residue_matches, inst.offset_exists,
                                                "k=" + std::to_string(k) + " lambda=" + std::to_string(lambda) +
                                                    " u=" + std::to_string(inst.u)));
      }
    }
  }
  return CheckResult::pass(Check::lemma2);
}

/// Positive and negative coefficient mass of Gamma_n against 4 d_{1,4}(n)
/// and -4 d_{3,4}(n).
inline std::array<CheckResult, 2> check_prop1(u64 n, const CenteredPolynomial& gamma) {
  const auto pos_expected = static_cast<std::int64_t>(4 * divisor_count_mod(n, 1, 4));
  const auto neg_expected = -static_cast<std::int64_t>(4 * divisor_count_mod(n, 3, 4));
  const std::int64_t pos = positive_sum(gamma);
  const std::int64_t neg = negative_sum(gamma);
  return {pos == pos_expected ? CheckResult::pass(Check::prop1_pos)
                              : CheckResult::fail(Check::prop1_pos, counterexample(n, {}, pos_expected, pos)),
          neg == neg_expected ? CheckResult::pass(Check::prop1_neg)
                              : CheckResult::fail(Check::prop1_neg, counterexample(n, {}, neg_expected, neg))};
}

inline std::array<CheckResult, 2> check_prop1(u64 n) { return check_prop1(n, build_Gamma(n)); }

/// Gamma_n(1) equals the lattice count r_2(n).
inline CheckResult check_qanalogue(u64 n, const CenteredPolynomial& gamma) {
  const BigInt value = evaluate(gamma, 1);
  const u64 expected = r2_bruteforce(n);
  if (value == expected) return CheckResult::pass(Check::qanalogue);
  return CheckResult::fail(Check::qanalogue, counterexample(n, {}, expected, value));
}

inline CheckResult check_qanalogue(u64 n) { return check_qanalogue(n, build_Gamma(n)); }

struct Theorem1Outcome {
  CheckResult result;
  bool nonnegative;
  std::optional<TripleWitness> witness;
};

/// Nonnegativity of Gamma_n, existence of a hypotenuse witness n = 2^k z and
/// d_{3,4}(n) = 0 must agree.
inline Theorem1Outcome check_theorem1(u64 n, const CenteredPolynomial& gamma) {
  const bool nonnegative = is_nonnegative(gamma);
  std::optional<TripleWitness> witness = hypotenuse_witness(n);
  const bool no_3mod4_divisor = divisor_count_mod(n, 3, 4) == 0;
  const bool witness_ok = !witness || witness->n() == n;
  if (nonnegative == witness.has_value() && nonnegative == no_3mod4_divisor && witness_ok) {
    return {CheckResult::pass(Check::theorem1), nonnegative, std::move(witness)};
  }
  std::string got = std::string("witness:") + (witness ? "yes" : "no") +
                    ",d34_zero:" + (no_3mod4_divisor ? "yes" : "no");
  return {CheckResult::fail(Check::theorem1,
                            counterexample(n, {}, std::string("nonnegative:") + (nonnegative ? "yes" : "no"), got)),
          nonnegative, std::move(witness)};
}

inline Theorem1Outcome check_theorem1(u64 n) { return check_theorem1(n, build_Gamma(n)); }

/// Sparse construction of C_n against the dense formula at every offset,
/// palindromy, degree 2n and C_n(1) = 0. Coefficient ranges are enforced
/// when the polynomials are built.
inline CheckResult check_structural(u64 n) {
  const CenteredPolynomial c = build_C(n);
  const CenteredPolynomial gamma = build_Gamma(n);
  if (c.degree() != 2 * n || gamma.degree() != 2 * n) {
    return CheckResult::fail(Check::structural, counterexample(n, {}, 2 * n, c.degree(), "what=degree"));
  }
  for (u64 i = 0; i <= n; ++i) {
    const auto offset = static_cast<std::int64_t>(i);
    const int dense = c_coefficient(n, i);
    if (c.coefficient(offset) != dense) {
      return CheckResult::fail(Check::structural, counterexample(n, i, dense, c.coefficient(offset), "what=sparse_vs_dense"));
    }
    if (c.coefficient(-offset) != c.coefficient(offset)) {
      return CheckResult::fail(Check::structural,
                               counterexample(n, i, c.coefficient(offset), c.coefficient(-offset), "what=palindromy"));
    }
    if (gamma.coefficient(offset) != gamma_coefficient(n, i)) {
      return CheckResult::fail(Check::structural, counterexample(n, i, gamma_coefficient(n, i), gamma.coefficient(offset),
                                                                 "what=gamma_sign"));
    }
  }
  const BigInt at_one = evaluate(c, 1);
  if (at_one != 0) return CheckResult::fail(Check::structural, counterexample(n, {}, 0, at_one, "what=C_at_1"));
  return CheckResult::pass(Check::structural);
}

struct VerificationReport {
  u64 n = 0;
  std::vector<CheckResult> checks;
  std::optional<bool> nonnegative;          // set when theorem1 ran
  std::optional<TripleWitness> witness;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  }
};

/// Runs the selected checks, in canonical order, for one n.
inline VerificationReport verify_one(u64 n, const std::vector<Check>& selected) {
  if (n == 0) throw std::domain_error("verify: n must be positive");
  VerificationReport report;
  report.n = n;
  auto wants = [&](Check c) { return std::find(selected.begin(), selected.end(), c) != selected.end(); };
  std::optional<CenteredPolynomial> gamma;
  auto get_gamma = [&]() -> const CenteredPolynomial& {
    if (!gamma) gamma = build_Gamma(n);
    return *gamma;
  };
  for (const Check c : kAllChecks) {
    if (!wants(c)) continue;
    switch (c) {
      case Check::lemma1: report.checks.push_back(check_lemma1(n)); break;
      case Check::lemma2: report.checks.push_back(check_lemma2(n)); break;
      case Check::prop1_pos: report.checks.push_back(check_prop1(n, get_gamma())[0]); break;
      case Check::prop1_neg: report.checks.push_back(check_prop1(n, get_gamma())[1]); break;
      case Check::qanalogue: report.checks.push_back(check_qanalogue(n, get_gamma())); break;
      case Check::theorem1: {
        Theorem1Outcome outcome = check_theorem1(n, get_gamma());
        report.checks.push_back(std::move(outcome.result));
        report.nonnegative = outcome.nonnegative;
        report.witness = std::move(outcome.witness);
        break;
      }
      case Check::structural: report.checks.push_back(check_structural(n)); break;
    }
  }
  return report;
}

struct CheckTally {
  Check check;
  u64 passed = 0;
  u64 failed = 0;
};

struct RangeSummary {
  u64 total = 0;
  u64 passed = 0;               // values of n with every selected check passing
  std::vector<CheckTally> per_check;

  bool all_passed() const { return passed == total; }
};

struct RangeResult {
  std::vector<VerificationReport> reports;  // ascending n
  RangeSummary summary;
};

/// Canonical ordering of a check selection with duplicates removed.
inline std::vector<Check> normalize_checks(const std::vector<Check>& checks) {
  std::vector<Check> out;
  for (const Check c : kAllChecks) {
    if (std::find(checks.begin(), checks.end(), c) != checks.end()) out.push_back(c);
  }
  return out;
}

/// Runs the selected checks for every n in [lo, hi] on `parallelism` worker
/// threads. Reports come back in ascending n for any thread count.
inline RangeResult verify_range(u64 lo, u64 hi, const std::vector<Check>& checks, unsigned parallelism = 1) {
  if (lo == 0 || lo > hi) throw std::invalid_argument("verify_range: need 1 <= lo <= hi");
  const std::vector<Check> selected = normalize_checks(checks);
  if (selected.empty()) throw std::invalid_argument("verify_range: empty check set");
  if (parallelism == 0) throw std::invalid_argument("verify_range: parallelism must be positive");

  const u64 count = hi - lo + 1;
  RangeResult result;
  result.reports.resize(count);

  std::atomic<u64> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    try {
      for (u64 idx = next.fetch_add(1); idx < count; idx = next.fetch_add(1)) {
        result.reports[idx] = verify_one(lo + idx, selected);
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      next.store(count);
    }
  };
  {
    const auto workers = static_cast<unsigned>(std::min<u64>(parallelism, count));
    std::vector<std::jthread> pool;
    pool.reserve(workers > 0 ? workers - 1 : 0);
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
  }
  if (error) std::rethrow_exception(error);

  RangeSummary& summary = result.summary;
  summary.total = count;
  for (const Check c : selected) summary.per_check.push_back({c});
  for (const VerificationReport& r : result.reports) {
    if (r.passed()) ++summary.passed;
    for (std::size_t j = 0; j < r.checks.size(); ++j) {
      (r.checks[j].passed ? summary.per_check[j].passed : summary.per_check[j].failed) += 1;
    }
  }
  return result;
}

}  // namespace qanalog
