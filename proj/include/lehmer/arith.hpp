#pragma once

// Exact 64-bit integer arithmetic: primality, factorization, multiplicative
// functions, modular inverses and primitive roots.
//
// All values are unsigned 64-bit; modular products go through 128-bit
// intermediates. The supported modulus range is [1, 2^63).

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include <boost/rational.hpp>

namespace lehmer {

using u64 = std::uint64_t;
using Rational = boost::rational<std::int64_t>;

inline constexpr u64 kMaxSupported = (u64{1} << 63) - 1;

/// Default cap on p for O(p) tables (inverse and discrete-log tables).
inline constexpr u64 kDefaultTableCap = 100'000'000;

/// A table or enumeration would exceed a configured size cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PrimePower {
  u64 prime = 0;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// n together with its prime factorization, primes strictly increasing.
struct Factorization {
  u64 n = 1;
  std::vector<PrimePower> factors;

  std::size_t omega() const { return factors.size(); }
  std::vector<u64> primes() const;
  u64 radical() const;
  bool has_prime(u64 q) const;
};

struct MultiplicativeStats {
  u64 phi = 1;
  int mu = 1;
  unsigned omega = 0;
  u64 W = 1;         // 2^omega, the number of square-free divisors
  Rational theta{1};  // phi / n
};

u64 mul_mod(u64 a, u64 b, u64 m);
u64 pow_mod(u64 base, u64 exp, u64 m);
u64 gcd(u64 a, u64 b);

/// Deterministic for every 64-bit input (Miller-Rabin, 7-base set).
bool is_prime(u64 n);

/// Complete factorization. factorize(1) has an empty factor list.
Factorization factorize(u64 n);

MultiplicativeStats multiplicative_stats(const Factorization& f);

/// Rebuilds n from its factor list and checks the Factorization invariants.
bool is_valid_factorization(const Factorization& f);

/// Inverse of a modulo p in [1, p-1]. Throws std::invalid_argument when
/// p divides a.
u64 mod_inverse(u64 a, u64 p);

/// inv[a] = a^{-1} mod p for a in [1, p-1]; inv[0] is unused and set to 0.
/// Linear-time recurrence. Throws ResourceError when p > cap.
std::vector<std::uint32_t> build_inverse_table(u64 p, u64 cap = kDefaultTableCap);

bool is_primitive_root(u64 a, u64 p, const Factorization& fact_p_minus_1);
u64 smallest_primitive_root(u64 p, const Factorization& fact_p_minus_1);
u64 smallest_primitive_root(u64 p);

/// Working state for per-prime computations. Immutable once built; copies
/// share the (optional) inverse table.
class PrimeContext {
 public:
  enum class Inverses { kNone, kTable };

  explicit PrimeContext(u64 p, Inverses inverses = Inverses::kNone,
                        u64 table_cap = kDefaultTableCap);
  PrimeContext(u64 p, Factorization fact_p_minus_1,
               Inverses inverses = Inverses::kNone,
               u64 table_cap = kDefaultTableCap);

  u64 p() const { return p_; }
  const Factorization& fact_p_minus_1() const { return fact_; }
  u64 g() const { return g_; }

  bool has_inverse_table() const { return static_cast<bool>(inverses_); }
  std::span<const std::uint32_t> inverse_table() const;

  /// Table lookup when available, extended Euclid otherwise.
  u64 inverse(u64 a) const;

  /// Copy of this context with the inverse table populated.
  PrimeContext with_inverse_table(u64 table_cap = kDefaultTableCap) const;

 private:
  u64 p_;
  Factorization fact_;
  u64 g_;
  std::shared_ptr<const std::vector<std::uint32_t>> inverses_;
};

/// True iff a^((p-1)/l) != 1 (mod p) for every prime l dividing e.
/// Throws std::invalid_argument unless e is even and divides p-1.
bool is_e_free(u64 a, u64 e, const PrimeContext& ctx);

/// Primes l of p-1 that divide e, after validating that e is an even
/// divisor of p-1.
std::vector<u64> e_free_primes(u64 e, const PrimeContext& ctx);

}  // namespace lehmer
