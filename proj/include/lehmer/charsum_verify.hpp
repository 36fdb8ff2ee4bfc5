#pragma once

// Exhaustive bound checks over all small primes for the character-sum
// families. Sums over every multiplicative character at once are batched
// through an FFT over the discrete-log coordinate.

#include <string>
#include <vector>

#include "lehmer/charsum.hpp"

namespace lehmer {

/// Absolute slack allowed on |sum| against c * sqrt(p).
inline constexpr double kCharsumBoundTolerance = 1e-6;

struct FamilyResult {
  std::string family;
  u64 p_max = 0;
  u64 primes = 0;
  u64 sums_checked = 0;
  u64 violations = 0;
  double bound_factor = 0.0;  // c in |sum| <= c sqrt(p); 0 for identities
  double max_ratio = 0.0;     // max |sum| / sqrt(p)
  u64 worst_p = 0;
  double max_abs_error = 0.0;  // identity families only

  bool ok() const { return violations == 0; }
};

/// out[t] = twisted sum for the character of index t, all t in [0, p-2].
std::vector<Complex> twisted_sums_all_characters(const CharacterSums& sums, u64 j, u64 k);

/// out[t] = double-twisted sum for chi1 of index t and the given chi2.
std::vector<Complex> double_twisted_sums_all_chi1(const CharacterSums& sums,
                                                  const MultiplicativeCharacter& chi2,
                                                  u64 j, u64 k);

/// |K(j, k; p)| <= 2 sqrt(p) for every odd prime p <= p_max and all j, k.
FamilyResult verify_kloosterman(u64 p_max, unsigned jobs = 1);

/// Single character twist, bound 2 sqrt(p), every character.
FamilyResult verify_twisted(u64 p_max, unsigned jobs = 1);

/// Two-character twist, bound 3 sqrt(p), every character pair.
FamilyResult verify_double_twisted(u64 p_max, unsigned jobs = 1);

/// |alternating_additive_sum(p, j)| = |tan(pi j / p)| within tolerance.
FamilyResult verify_tangent_identity(u64 p_max, double tolerance = 1e-8);

/// Sum of a non-principal character over [1, p-1] vanishes.
FamilyResult verify_orthogonality(u64 p_max, double tolerance = 1e-9);

}  // namespace lehmer
