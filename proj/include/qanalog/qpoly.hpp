#pragma once

// C_n(q) and Gamma_n(q) = C_n(-q) as sparse palindromic polynomials of degree
// 2n, stored by offset i from the center exponent n.

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qanalog/ntheory.hpp"

namespace qanalog {

using BigInt = boost::multiprecision::cpp_int;

enum class PolyKind { C, Gamma };

constexpr std::string_view to_string(PolyKind kind) { return kind == PolyKind::C ? "C" : "Gamma"; }

/// Coefficient at offset i, standing for c * (q^{n+i} + q^{n-i}) when i > 0
/// and c * q^n when i = 0.
struct Term {
  u64 offset;
  int coefficient;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Term at a dense exponent 0..2n.
struct DenseTerm {
  u64 exponent;
  int coefficient;

  friend bool operator==(const DenseTerm&, const DenseTerm&) = default;
};

/// Factorization of 2n computed from that of n, so 2n may exceed the
/// factorize() range.
inline Factorization factorize_double(u64 n) {
  const Factorization f = factorize(n);
  std::vector<PrimePower> factors = f.factors();
  if (!factors.empty() && factors.front().prime == 2) {
    ++factors.front().exponent;
  } else {
    factors.insert(factors.begin(), PrimePower{2, 1});
  }
  if (n > (~u64{0}) / 2) throw std::domain_error("2n overflows");
  return Factorization(2 * n, std::move(factors));
}

class CenteredPolynomial {
 public:
  /// Validates the terms against the structural invariants. Throws
  /// std::logic_error when they fail.
  static CenteredPolynomial from_terms(PolyKind kind, u64 n, std::vector<Term> terms) {
    if (n == 0) throw std::domain_error("centered polynomial needs n >= 1");
    CenteredPolynomial p(kind, n, std::move(terms));
    p.validate(factorize_double(n).divisor_count());
    return p;
  }

  PolyKind kind() const { return kind_; }
  u64 center() const { return n_; }
  u64 degree() const { return 2 * n_; }

  /// Nonzero terms with offsets 0..n, ascending.
  std::span<const Term> terms() const { return terms_; }

  /// Coefficient at any signed offset; zero outside [-n, n].
  int coefficient(std::int64_t offset) const {
    const u64 magnitude = offset < 0 ? static_cast<u64>(-(offset + 1)) + 1 : static_cast<u64>(offset);
    auto it = std::lower_bound(terms_.begin(), terms_.end(), magnitude,
                               [](const Term& t, u64 value) { return t.offset < value; });
    return (it != terms_.end() && it->offset == magnitude) ? it->coefficient : 0;
  }

  int coefficient_at_exponent(u64 exponent) const {
    if (exponent > degree()) return 0;
    return coefficient(static_cast<std::int64_t>(exponent) - static_cast<std::int64_t>(n_));
  }

  /// Nonzero terms expanded over exponents 0..2n, ascending.
  std::vector<DenseTerm> expanded() const {
    std::vector<DenseTerm> out;
    out.reserve(2 * terms_.size());
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      out.push_back({n_ - it->offset, it->coefficient});
    }
    for (const Term& t : terms_) {
      if (t.offset != 0) out.push_back({n_ + t.offset, t.coefficient});
    }
    return out;
  }

  friend bool operator==(const CenteredPolynomial&, const CenteredPolynomial&) = default;

 private:
  CenteredPolynomial(PolyKind kind, u64 n, std::vector<Term> terms)
      : kind_(kind), n_(n), terms_(std::move(terms)) {}

  void validate(u64 divisor_count_2n) const {
    auto fail = [&](const std::string& what) {
      throw std::logic_error(std::string(to_string(kind_)) + "_" + std::to_string(n_) + ": " + what);
    };
    u64 previous = 0;
    u64 positive_offsets = 0;
    for (std::size_t idx = 0; idx < terms_.size(); ++idx) {
      const Term& t = terms_[idx];
      if (idx != 0 && t.offset <= previous) fail("offsets not strictly increasing");
      if (t.offset > n_) fail("offset beyond degree");
      if (t.offset == 0) {
        if (t.coefficient != 2 && t.coefficient != -2) fail("center coefficient outside {-2, 2}");
      } else {
        if (t.coefficient != 1 && t.coefficient != -1) fail("off-center coefficient outside {-1, 1}");
        ++positive_offsets;
      }
      previous = t.offset;
    }
    if (terms_.empty() || terms_.back().offset != n_ || terms_.back().coefficient != 1) {
      fail("leading coefficient of q^{2n} is not 1");
    }
    if (positive_offsets > divisor_count_2n) fail("more nonzero offsets than divisors of 2n");
  }

  PolyKind kind_;
  u64 n_;
  std::vector<Term> terms_;
};

namespace detail {

inline void check_offset(u64 n, u64 i) {
  if (n == 0) throw std::domain_error("coefficient: n must be positive");
  if (i > n) throw std::domain_error("coefficient: offset " + std::to_string(i) + " exceeds n = " + std::to_string(n));
}

/// Positive integer root k of k^2 + b k - 2n = 0, if any.
inline std::optional<u64> positive_root(u64 n, u64 b) {
  const u128 disc = u128{b} * b + 8 * u128{n};
  const auto r = exact_sqrt(disc);
  if (!r || *r <= b || (*r - b) % 2 != 0) return std::nullopt;
  return static_cast<u64>((*r - b) / 2);
}

constexpr int sign_of_power(u64 e) { return e % 2 == 0 ? 1 : -1; }

}  // namespace detail

/// c_{n,i} from the closed-form case formulas.
inline int c_coefficient(u64 n, u64 i) {
  detail::check_offset(n, i);
  if (i == 0) {
    // n = k(k+1)/2
    const auto k = detail::positive_root(n, 1);
    return k ? 2 * detail::sign_of_power(*k) : 0;
  }
  if (const auto k = detail::positive_root(n, 2 * i + 1)) return detail::sign_of_power(*k);
  if (const auto k = detail::positive_root(n, 2 * i - 1)) return detail::sign_of_power(*k - 1);
  return 0;
}

/// gamma_{n,i} = (-1)^{n+i} c_{n,i}.
inline int gamma_coefficient(u64 n, u64 i) {
  return detail::sign_of_power(n + i) * c_coefficient(n, i);
}

struct SignedCoefficientPair {
  u64 plus;
  u64 minus;

  std::int64_t value() const { return static_cast<std::int64_t>(plus) - static_cast<std::int64_t>(minus); }
  bool well_formed() const { return plus * minus == 0 && plus <= 2 && minus <= 2; }

  friend bool operator==(const SignedCoefficientPair&, const SignedCoefficientPair&) = default;
};

/// (gamma^+_{n,i}, gamma^-_{n,i}) counted over the given divisors of 2n.
inline SignedCoefficientPair gamma_signed(u64 n, u64 i, std::span<const u64> divisors_of_2n) {
  detail::check_offset(n, i);
  const u128 target = 2 * u128{n};
  SignedCoefficientPair out{0, 0};
  for (const u64 k : divisors_of_2n) {
    const int e = detail::sign_of_power(n + k + i);
    const u128 base = u128{k} + 2 * u128{i};
    if (u128{k} * (base + e) == target) ++out.plus;
    if (u128{k} * (base - e) == target) ++out.minus;
  }
  return out;
}

inline SignedCoefficientPair gamma_signed(u64 n, u64 i) {
  detail::check_offset(n, i);
  const auto ks = divisors(factorize_double(n));
  return gamma_signed(n, i, ks);
}

/// Builds C_n from the divisors k of 2n: each solution of
/// n = k(k + 2i + s)/2, s = +-1, contributes (-1)^k (s = +1) or
/// (-1)^{k-1} (s = -1) at offset i.
inline CenteredPolynomial build_C(u64 n) {
  if (n == 0) throw std::domain_error("build_C: n must be positive");
  const Factorization f2 = factorize_double(n);
  const u64 two_n = f2.value();
  std::vector<Term> contributions;
  for (const u64 k : divisors(f2)) {
    const u64 cofactor = two_n / k;
    for (const int s : {1, -1}) {
      // i = (2n/k - k - s) / 2
      const std::int64_t low = static_cast<std::int64_t>(k) + s;
      if (low < 0 || cofactor < static_cast<u64>(low)) continue;
      const u64 twice_i = cofactor - static_cast<u64>(low);
      if (twice_i % 2 != 0) continue;
      const int sign = s == 1 ? detail::sign_of_power(k) : detail::sign_of_power(k - 1);
      contributions.push_back({twice_i / 2, sign});
    }
  }
  std::sort(contributions.begin(), contributions.end(),
            [](const Term& a, const Term& b) { return a.offset < b.offset; });
  std::vector<Term> terms;
  for (const Term& c : contributions) {
    if (!terms.empty() && terms.back().offset == c.offset) {
      terms.back().coefficient += c.coefficient;
    } else {
      terms.push_back(c);
    }
  }
  std::erase_if(terms, [](const Term& t) { return t.coefficient == 0; });
  return CenteredPolynomial::from_terms(PolyKind::C, n, std::move(terms));
}

/// Gamma_n(q) = C_n(-q): the coefficient at offset i picks up (-1)^{n+i}.
inline CenteredPolynomial build_Gamma(u64 n) {
  const CenteredPolynomial c = build_C(n);
  std::vector<Term> terms(c.terms().begin(), c.terms().end());
  for (Term& t : terms) t.coefficient *= detail::sign_of_power(n + t.offset);
  return CenteredPolynomial::from_terms(PolyKind::Gamma, n, std::move(terms));
}

inline CenteredPolynomial build(PolyKind kind, u64 n) { return kind == PolyKind::C ? build_C(n) : build_Gamma(n); }

/// Exact value at q by summing coefficient * q^exponent over every term.
inline BigInt evaluate_general(const CenteredPolynomial& p, std::int64_t q) {
  BigInt total = 0;
  const BigInt base = q;
  for (const DenseTerm& t : p.expanded()) {
    total += t.coefficient * boost::multiprecision::pow(base, static_cast<unsigned>(t.exponent));
  }
  return total;
}

/// Exact value at q. q = 1 and q = -1 reduce to signed coefficient sums.
inline BigInt evaluate(const CenteredPolynomial& p, std::int64_t q) {
  if (q == 1 || q == -1) {
    std::int64_t total = 0;
    for (const Term& t : p.terms()) {
      const int sign = q == 1 ? 1 : detail::sign_of_power(p.center() + t.offset);
      total += (t.offset == 0 ? 1 : 2) * sign * t.coefficient;
    }
    return total;
  }
  return evaluate_general(p, q);
}

/// Sum of the positive coefficients over all 2n + 1 exponents.
inline std::int64_t positive_sum(const CenteredPolynomial& p) {
  std::int64_t total = 0;
  for (const Term& t : p.terms()) {
    if (t.coefficient > 0) total += (t.offset == 0 ? 1 : 2) * t.coefficient;
  }
  return total;
}

inline std::int64_t negative_sum(const CenteredPolynomial& p) {
  std::int64_t total = 0;
  for (const Term& t : p.terms()) {
    if (t.coefficient < 0) total += (t.offset == 0 ? 1 : 2) * t.coefficient;
  }
  return total;
}

inline bool is_nonnegative(const CenteredPolynomial& p) {
  return std::none_of(p.terms().begin(), p.terms().end(), [](const Term& t) { return t.coefficient < 0; });
}

}  // namespace qanalog
