#pragma once

// Prime enumeration: a plain sieve for small limits and a segmented sieve of
// Eratosthenes for ranges.

#include <cstdint>
#include <vector>

#include "lehmer/arith.hpp"

namespace lehmer {

inline constexpr u64 kDefaultSegmentSize = u64{1} << 20;

/// All primes <= limit.
std::vector<u64> primes_up_to(u64 limit);

/// Iterates primes in [lo, hi] one segment at a time. Each segment covers
/// segment_size consecutive integers; segment boundaries depend only on lo
/// and segment_size.
class SegmentedSieve {
 public:
  SegmentedSieve(u64 lo, u64 hi, u64 segment_size = kDefaultSegmentSize);

  /// Fills out with the primes of the next segment. Returns false once the
  /// range is exhausted. segment_lo/segment_hi receive the covered interval.
  bool next(std::vector<u64>& out, u64& segment_lo, u64& segment_hi);

  /// Skips ahead so that the next segment starts at start (>= lo).
  void seek(u64 start);

  u64 cursor() const { return cursor_; }
  bool done() const { return cursor_ > hi_ || exhausted_; }

 private:
  u64 lo_;
  u64 hi_;
  u64 segment_size_;
  u64 cursor_;
  bool exhausted_ = false;
  std::vector<u64> base_primes_;
  std::vector<std::uint8_t> composite_;
};

/// Primes in [lo, hi] in increasing order.
std::vector<u64> primes_in_range(u64 lo, u64 hi);

/// Number of primes <= n.
u64 prime_count(u64 n);

}  // namespace lehmer
