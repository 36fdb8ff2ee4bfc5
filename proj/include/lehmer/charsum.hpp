#pragma once

// Additive and multiplicative character sums modulo a prime: Kloosterman
// sums, sums twisted by one or two multiplicative characters, and the
// alternating additive sum behind the tangent bound.
//
// These are verification instruments for small primes. Characters are
// evaluated through a discrete-log table: chi_t(g^k) = exp(2 pi i t k/(p-1)),
// with the exponent reduced exactly before the trigonometric call.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "lehmer/arith.hpp"

namespace lehmer {

inline constexpr u64 kDefaultDlogCap = 1'000'000;
inline constexpr u64 kDefaultCharsumCap = 10'000;

using Complex = std::complex<double>;

struct MultiplicativeCharacter {
  u64 p = 0;
  u64 order = 1;  // (p-1) / gcd(index, p-1)
  u64 index = 0;  // t in [0, p-2]
  u64 g = 0;

  bool is_principal() const { return index == 0; }
};

/// table[a] = k with g^k = a (mod p), for a in [1, p-1]; table[0] unused.
std::vector<std::uint32_t> discrete_log_table(const PrimeContext& ctx,
                                              u64 cap = kDefaultDlogCap);

/// The phi(d) characters of exact order d. Throws unless d divides p-1.
std::vector<MultiplicativeCharacter> enumerate_characters(const PrimeContext& ctx, u64 d);

/// All p-1 characters modulo p, ordered by index.
std::vector<MultiplicativeCharacter> all_characters(const PrimeContext& ctx);

/// Per-prime tables for repeated character-sum evaluation.
class CharacterSums {
 public:
  explicit CharacterSums(const PrimeContext& ctx, u64 cap = kDefaultCharsumCap);

  const PrimeContext& context() const { return ctx_; }
  u64 p() const { return ctx_.p(); }
  std::span<const std::uint32_t> dlog() const { return dlog_; }

  /// chi(a), with chi(0) = 0 for every character including the principal one.
  Complex character(const MultiplicativeCharacter& chi, u64 a) const;

  /// exp(2 pi i x / p) for x reduced mod p.
  Complex psi(u64 x) const { return additive_[x % ctx_.p()]; }

  /// exp(2 pi i m / (p-1)) for m reduced mod p-1.
  Complex unit(u64 m) const { return multiplicative_[m % (ctx_.p() - 1)]; }

  u64 inverse(u64 a) const { return inverses_[a]; }

  /// sum over a of psi(j a + k inverse(a)); real up to rounding.
  double kloosterman(u64 j, u64 k) const;

  Complex twisted(const MultiplicativeCharacter& chi, u64 j, u64 k) const;

  /// sum over a of chi1(a) chi2(1 - a) psi(j a + k inverse(a)); the a = 1
  /// term vanishes since chi2(0) = 0.
  Complex double_twisted(const MultiplicativeCharacter& chi1,
                         const MultiplicativeCharacter& chi2, u64 j, u64 k) const;

 private:
  void check_jk(u64 j, u64 k) const;
  void check_character(const MultiplicativeCharacter& chi) const;

  PrimeContext ctx_;
  std::vector<std::uint32_t> dlog_;
  std::vector<std::uint32_t> inverses_;
  std::vector<Complex> additive_;
  std::vector<Complex> multiplicative_;
};

double kloosterman_sum(const PrimeContext& ctx, u64 j, u64 k);
Complex twisted_sum(const PrimeContext& ctx, const MultiplicativeCharacter& chi, u64 j, u64 k);
Complex double_twisted_sum(const PrimeContext& ctx, const MultiplicativeCharacter& chi1,
                           const MultiplicativeCharacter& chi2, u64 j, u64 k);

/// sum_{r=1}^{p-1} (-1)^r psi(-j r), evaluated term by term.
Complex alternating_additive_sum(u64 p, u64 j);

}  // namespace lehmer
