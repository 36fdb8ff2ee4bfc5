#pragma once

// Exact counts of Lehmer numbers, e-free Lehmer numbers, Lehmer primitive
// roots (LPRs) and Golomb-Lehmer pairs modulo an odd prime, by direct O(p)
// enumeration.
//
// a in [1, p-1] is a Lehmer number when a + inverse(a) is odd. An LPR is a
// Lehmer number that is also a primitive root.

#include <cstdint>
#include <optional>
#include <vector>

#include "lehmer/arith.hpp"

namespace lehmer {

struct LehmerCounts {
  u64 p = 0;
  u64 M = 0;             // Lehmer numbers
  u64 N = 0;             // Lehmer primitive roots
  std::int64_t E = 0;    // sum of (-1)^(a + inverse(a)) over a in [1, p-1]
  std::optional<u64> first_lpr;
};

bool is_lehmer(u64 a, const PrimeContext& ctx);

/// M, E, N and the first LPR in two linear passes. Builds an inverse table
/// when ctx has none (subject to table_cap).
LehmerCounts count_lehmer(const PrimeContext& ctx, u64 table_cap = kDefaultTableCap);

/// N(e): Lehmer numbers that are also e-free. N(p-1) is the LPR count.
u64 count_lehmer_efree(const PrimeContext& ctx, u64 e, u64 table_cap = kDefaultTableCap);

/// Smallest a in [2, p-1] that is both a primitive root and a Lehmer number,
/// scanning primitive roots in increasing order.
std::optional<u64> find_first_lpr(const PrimeContext& ctx);

/// Membership bitmap of LPRs, indexed by a in [0, p-1].
std::vector<bool> lpr_bitmap(const PrimeContext& ctx, u64 table_cap = kDefaultTableCap);

/// G_p: number of a in [2, p-1] with a and p + 1 - a both LPRs. Ordered
/// pairs; the diagonal a = (p + 1) / 2 counts once.
u64 count_golomb_lehmer_pairs(const PrimeContext& ctx, u64 table_cap = kDefaultTableCap);

}  // namespace lehmer
