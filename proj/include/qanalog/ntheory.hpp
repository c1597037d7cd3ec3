#pragma once

// Integer arithmetic substrate: factorization, divisors, divisor counts by
// residue class, lattice-point counting and primitive Pythagorean triples.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qanalog {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Largest argument accepted by factorize().
inline constexpr u64 kMaxFactorizable = u64{1} << 62;

/// floor(sqrt(n)), exact for every 64-bit value.
constexpr u64 isqrt(u64 n) {
  if (n < 2) return n;
  // Newton iteration from an overestimate; monotonically decreasing.
  u64 x = u64{1} << ((64 - std::countl_zero(n) + 1) / 2);
  while (true) {
    const u64 y = (x + n / x) / 2;
    if (y >= x) return x;
    x = y;
  }
}

/// floor(sqrt(n)) for 128-bit arguments below 2^126.
constexpr u128 isqrt128(u128 n) {
  if (n < 2) return n;
  int bits = 0;
  for (u128 t = n; t != 0; t >>= 1) ++bits;
  u128 x = u128{1} << ((bits + 1) / 2);
  while (true) {
    const u128 y = (x + n / x) / 2;
    if (y >= x) return x;
    x = y;
  }
}

/// Returns the exact square root if n is a perfect square.
constexpr std::optional<u128> exact_sqrt(u128 n) {
  const u128 r = (n >> 64) == 0 ? u128{isqrt(static_cast<u64>(n))} : isqrt128(n);
  if (r * r == n) return r;
  return std::nullopt;
}

constexpr int two_adic_valuation(u64 n) { return n == 0 ? 0 : std::countr_zero(n); }

struct PrimePower {
  u64 prime;
  unsigned exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization of a positive integer, primes strictly increasing.
class Factorization {
 public:
  Factorization(u64 n, std::vector<PrimePower> factors) : n_(n), factors_(std::move(factors)) {
    if (n_ == 0) throw std::domain_error("factorization of zero");
    u128 product = 1;
    u64 previous = 1;
    for (const auto& [p, e] : factors_) {
      if (p <= previous || e == 0) throw std::invalid_argument("malformed factorization");
      for (unsigned j = 0; j < e; ++j) {
        product *= p;
        if (product > n_) throw std::invalid_argument("factorization product exceeds n");
      }
      previous = p;
    }
    if (product != n_) throw std::invalid_argument("factorization product differs from n");
  }

  u64 value() const { return n_; }
  const std::vector<PrimePower>& factors() const { return factors_; }
  bool is_unit() const { return factors_.empty(); }

  /// Number of divisors, the product of (exponent + 1).
  u64 divisor_count() const {
    u64 count = 1;
    for (const auto& f : factors_) count *= f.exponent + 1;
    return count;
  }

  friend bool operator==(const Factorization&, const Factorization&) = default;

 private:
  u64 n_;
  std::vector<PrimePower> factors_;
};

/// Trial division up to sqrt(n) with a mod-6 wheel. Valid for 1 <= n <= 2^62.
inline Factorization factorize(u64 n) {
  if (n == 0) throw std::domain_error("factorize: n must be positive");
  if (n > kMaxFactorizable) throw std::domain_error("factorize: n exceeds 2^62");
  std::vector<PrimePower> out;
  u64 m = n;
  auto strip = [&](u64 p) {
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e != 0) out.push_back({p, e});
  };
  strip(2);
  strip(3);
  for (u64 p = 5; p <= m / p; p += 6) {
    strip(p);
    strip(p + 2);
  }
  if (m > 1) out.push_back({m, 1});
  return Factorization(n, std::move(out));
}

/// Divisors of the factored value, ascending.
inline std::vector<u64> divisors(const Factorization& f) {
  std::vector<u64> out{1};
  out.reserve(f.divisor_count());
  for (const auto& [p, e] : f.factors()) {
    const std::size_t base = out.size();
    u64 power = 1;
    for (unsigned j = 0; j < e; ++j) {
      power *= p;
      for (std::size_t idx = 0; idx < base; ++idx) out.push_back(out[idx] * power);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<u64> divisors(u64 n) { return divisors(factorize(n)); }

/// d_{a,m}(n): number of divisors d of n with d = a (mod m).
inline u64 divisor_count_mod(u64 n, u64 a, u64 m) {
  if (n == 0 || m == 0 || a >= m) throw std::domain_error("divisor_count_mod: need n >= 1, 0 <= a < m");
  u64 count = 0;
  for (u64 d = 1; d <= n / d; ++d) {
    if (n % d != 0) continue;
    const u64 e = n / d;
    if (d % m == a) ++count;
    if (e != d && e % m == a) ++count;
  }
  return count;
}

/// Number of (x, y) in Z^2 with x^2 + y^2 = n, by direct lattice enumeration.
inline u64 r2_bruteforce(u64 n) {
  u64 count = 0;
  const u64 root = isqrt(n);
  for (u64 x = 0; x <= root; ++x) {
    const u64 rest = n - x * x;
    const u64 y = isqrt(rest);
    if (y * y != rest) continue;
    // sign choices for nonzero coordinates
    count += (x == 0 ? 1 : 2) * (y == 0 ? 1 : 2);
  }
  return count;
}

inline bool has_no_prime_factor_3_mod4(u64 n) {
  const Factorization f = factorize(n);
  for (const auto& [p, e] : f.factors()) {
    if (p % 4 == 3) return false;
  }
  return true;
}

constexpr bool is_primitive_triple(u64 x, u64 y, u64 z) {
  if (u128{x} * x + u128{y} * y != u128{z} * z) return false;
  return std::gcd(std::gcd(x, y), z) == 1;
}

/// A primitive Pythagorean triple (x, y, z) with the exponent k of the
/// witnessed value n = 2^k * z. Validated on construction.
class TripleWitness {
 public:
  TripleWitness(u64 x, u64 y, u64 z, unsigned k = 0) : x_(x), y_(y), z_(z), k_(k) {
    if (!is_primitive_triple(x, y, z)) {
      throw std::invalid_argument("not a primitive Pythagorean triple: (" + std::to_string(x) + "," +
                                  std::to_string(y) + "," + std::to_string(z) + ")");
    }
    if (k >= 64 || (k != 0 && (z >> (64 - k)) != 0)) throw std::invalid_argument("2^k * z overflows");
  }

  u64 x() const { return x_; }
  u64 y() const { return y_; }
  u64 z() const { return z_; }
  unsigned k() const { return k_; }
  u64 n() const { return z_ << k_; }

  friend bool operator==(const TripleWitness&, const TripleWitness&) = default;

 private:
  u64 x_, y_, z_;
  unsigned k_;
};

/// Euclid search for a nondegenerate primitive triple with hypotenuse z:
/// z = m^2 + t^2 with m > t >= 1 coprime and of opposite parity.
inline std::optional<TripleWitness> euclid_triple_with_hypotenuse(u64 z, unsigned k = 0) {
  if (z % 2 == 0) return std::nullopt;
  for (u64 t = 1; 2 * u128{t} * t < z; ++t) {
    const u64 rest = z - t * t;
    const u64 m = isqrt(rest);
    if (m * m != rest || m <= t) continue;
    if ((m + t) % 2 == 0 || std::gcd(m, t) != 1) continue;
    return TripleWitness(m * m - t * t, 2 * m * t, z, k);
  }
  return std::nullopt;
}

/// Writes n = 2^k z and returns a primitive triple with hypotenuse z when one
/// exists. The odd part 1 is witnessed by the degenerate triple (1, 0, 1).
inline std::optional<TripleWitness> hypotenuse_witness(u64 n) {
  if (n == 0) throw std::domain_error("hypotenuse_witness: n must be positive");
  const int k = two_adic_valuation(n);
  const u64 z = n >> k;
  if (z == 1) return TripleWitness(1, 0, 1, static_cast<unsigned>(k));
  return euclid_triple_with_hypotenuse(z, static_cast<unsigned>(k));
}

/// All primitive triples with z <= z_limit: (1,0,1), (0,1,1), then the Euclid
/// triples (x odd, y even) ordered by (z, x).
inline std::vector<TripleWitness> generate_primitive_triples(u64 z_limit) {
  if (z_limit == 0) throw std::domain_error("generate_primitive_triples: z_limit must be positive");
  std::vector<TripleWitness> euclid;
  for (u64 m = 2; u128{m} * m + 1 <= z_limit; ++m) {
    for (u64 t = (m % 2 == 0) ? 1 : 2; t < m; t += 2) {
      const u128 z = u128{m} * m + u128{t} * t;
      if (z > z_limit) break;
      if (std::gcd(m, t) != 1) continue;
      euclid.emplace_back(m * m - t * t, 2 * m * t, static_cast<u64>(z));
    }
  }
  std::sort(euclid.begin(), euclid.end(), [](const TripleWitness& a, const TripleWitness& b) {
    return std::pair(a.z(), a.x()) < std::pair(b.z(), b.x());
  });
  std::vector<TripleWitness> out{TripleWitness(1, 0, 1), TripleWitness(0, 1, 1)};
  out.insert(out.end(), euclid.begin(), euclid.end());
  return out;
}

}  // namespace qanalog
